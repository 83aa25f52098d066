#!/usr/bin/env python3
"""Regenerate every shipped artifact derived from code.

Writes the bundled model file, the fixture dataset, and the golden
regression reports.  All outputs are deterministic; reviewers diff the
result against the committed files.
"""
from __future__ import annotations

import io
from pathlib import Path

from afcm.cad import all_case_configs, builtin_cad_model, case_config, fixture_csv
from afcm.evaluation import compare_cases, evaluate_case, load_dataset, report_json
from afcm.model import dumps_model

REPO = Path(__file__).resolve().parents[1]


def main() -> None:
    model = builtin_cad_model()

    model_path = REPO / "models" / "cad.model"
    model_path.parent.mkdir(exist_ok=True)
    model_path.write_text(dumps_model(model), encoding="utf-8")
    print(f"wrote {model_path}")

    csv_text = fixture_csv()
    data_path = REPO / "data" / "fixture.csv"
    data_path.parent.mkdir(exist_ok=True)
    data_path.write_text(csv_text, encoding="utf-8")
    print(f"wrote {data_path}")

    goldens = REPO / "tests" / "goldens"
    goldens.mkdir(exist_ok=True)
    dataset = load_dataset(io.StringIO(csv_text), model)

    case1 = evaluate_case(case_config("Case1"), dataset, model)
    (goldens / "case1_fixture_report.json").write_text(report_json(case1.to_dict()), encoding="utf-8")
    print("wrote tests/goldens/case1_fixture_report.json")

    table = compare_cases(all_case_configs(), dataset, model)
    (goldens / "comparison_fixture.json").write_text(report_json(table.to_dict()), encoding="utf-8")
    (goldens / "comparison_fixture.txt").write_text(table.render_text(), encoding="utf-8")
    print("wrote tests/goldens/comparison_fixture.{json,txt}")


if __name__ == "__main__":
    main()
