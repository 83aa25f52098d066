"""Dataset ingestion, confusion-matrix metrics, and batch case evaluation.

Diseased is the positive class throughout.  Ratios with a zero denominator
are reported as an explicit undefined marker (None in structured output,
"undefined" in text) rather than NaN.  Report percentages round to two
decimals; full precision stays internal.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DatasetError
from .fuzzy import encode_value
from .inference import CaseConfig, classify, prepare_case, run
from .model import FcmModel

LABELS = ("Healthy", "Diseased")


@dataclass(frozen=True)
class Dataset:
    """Ordered raw records plus binary labels; row numbers are 1-based data rows."""

    records: tuple[dict[str, str], ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.records)


def load_dataset(source: str | Path | io.TextIOBase, model: FcmModel) -> Dataset:
    """Read and validate a CSV of raw records against the model's schema.

    The header must name every input concept id plus ``label``; every value
    must be in its attribute's domain.  Errors carry the offending data row
    number.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
        stream: Iterable[str] = io.StringIO(text)
    else:
        stream = source

    tables = model.encoding_tables()
    expected = set(tables) | {"label"}
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise DatasetError("no records (empty file)")
    got = set(reader.fieldnames)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        parts = []
        if missing:
            parts.append(f"missing columns {missing}")
        if extra:
            parts.append(f"unexpected columns {extra}")
        raise DatasetError("bad header: " + ", ".join(parts))

    records: list[dict[str, str]] = []
    labels: list[str] = []
    for row_no, row in enumerate(reader, start=1):
        label = row.pop("label", None)
        if label is None or label == "":
            raise DatasetError("missing label", row=row_no)
        if label not in LABELS:
            raise DatasetError(f"label must be one of {LABELS}, got {label!r}", row=row_no)
        for attr, value in row.items():
            if value is None:
                raise DatasetError(f"missing value for {attr}", row=row_no)
            try:
                encode_value(attr, value, tables[attr])
            except Exception as exc:
                raise DatasetError(f"{attr}: {exc}", row=row_no) from exc
        records.append(dict(row))
        labels.append(label)

    if not records:
        raise DatasetError("no records")
    return Dataset(records=tuple(records), labels=tuple(labels))


# ---------------------------------------------------------------------------
# Metrics


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(predictions: Sequence[str], truths: Sequence[str], positive: str = "Diseased") -> ConfusionMatrix:
    """Counts by (prediction, truth) with the given positive class."""
    if len(predictions) != len(truths):
        raise ValueError(f"length mismatch: {len(predictions)} predictions vs {len(truths)} truths")
    tp = fp = fn = tn = 0
    for pred, truth in zip(predictions, truths):
        if pred == positive:
            if truth == positive:
                tp += 1
            else:
                fp += 1
        else:
            if truth == positive:
                fn += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


@dataclass(frozen=True)
class MetricsReport:
    """Accuracy and the four rate metrics; None marks a 0/0 ratio."""

    accuracy: float | None
    sensitivity: float | None
    specificity: float | None
    ppv: float | None
    npv: float | None
    counts: ConfusionMatrix


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    return MetricsReport(
        accuracy=_ratio(cm.tp + cm.tn, cm.total),
        sensitivity=_ratio(cm.tp, cm.tp + cm.fn),
        specificity=_ratio(cm.tn, cm.tn + cm.fp),
        ppv=_ratio(cm.tp, cm.tp + cm.fp),
        npv=_ratio(cm.tn, cm.tn + cm.fn),
        counts=cm,
    )


def _pct(value: float | None) -> str:
    return "undefined" if value is None else f"{100.0 * value:.2f}%"


# ---------------------------------------------------------------------------
# Batch evaluation


@dataclass(frozen=True)
class RecordDecision:
    row: int
    predicted: str
    score: float
    converged: bool
    iterations: int


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    metrics: MetricsReport
    decisions: tuple[RecordDecision, ...]
    nonconverged: int

    def to_dict(self) -> dict:
        cm = self.metrics.counts
        return {
            "case": self.case_id,
            "counts": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn, "total": cm.total},
            "metrics": {
                "accuracy": _pct(self.metrics.accuracy),
                "sensitivity": _pct(self.metrics.sensitivity),
                "specificity": _pct(self.metrics.specificity),
                "ppv": _pct(self.metrics.ppv),
                "npv": _pct(self.metrics.npv),
            },
            "nonconverged": self.nonconverged,
            "decisions": [
                {
                    "row": d.row,
                    "predicted": d.predicted,
                    "score": round(d.score, 6),
                    "converged": d.converged,
                    "iterations": d.iterations,
                }
                for d in self.decisions
            ],
        }


def evaluate_case(cfg: CaseConfig, dataset: Dataset, model: FcmModel) -> CaseReport:
    """Run and classify every record under one case; deterministic output."""
    plan = prepare_case(model, cfg)
    decisions: list[RecordDecision] = []
    predictions: list[str] = []
    nonconverged = 0
    for row_no, record in enumerate(dataset.records, start=1):
        try:
            rr = run(model, record, cfg, plan=plan, keep_trajectory=False)
        except Exception as exc:
            raise DatasetError(str(exc), row=row_no) from exc
        decision = classify(rr, cfg)
        if not rr.converged:
            nonconverged += 1
        predictions.append(decision.class_)
        decisions.append(
            RecordDecision(
                row=row_no,
                predicted=decision.class_,
                score=decision.score,
                converged=rr.converged,
                iterations=rr.iterations,
            )
        )
    cm = confusion(predictions, dataset.labels)
    return CaseReport(case_id=cfg.id, metrics=metrics(cm), decisions=tuple(decisions), nonconverged=nonconverged)


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[CaseReport, ...]

    def to_dict(self) -> dict:
        return {
            "cases": [
                {
                    "case": r.case_id,
                    "accuracy": _pct(r.metrics.accuracy),
                    "sensitivity": _pct(r.metrics.sensitivity),
                    "specificity": _pct(r.metrics.specificity),
                    "nonconverged": r.nonconverged,
                }
                for r in self.rows
            ]
        }

    def render_text(self) -> str:
        header = f"{'Case':<8}{'Accuracy':>12}{'Sensitivity':>14}{'Specificity':>14}"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                f"{r.case_id:<8}{_pct(r.metrics.accuracy):>12}{_pct(r.metrics.sensitivity):>14}"
                f"{_pct(r.metrics.specificity):>14}"
            )
        return "\n".join(lines) + "\n"


def compare_cases(cfgs: Sequence[CaseConfig], dataset: Dataset, model: FcmModel) -> ComparisonTable:
    if not cfgs:
        raise ValueError("no cases given")
    return ComparisonTable(rows=tuple(evaluate_case(cfg, dataset, model) for cfg in cfgs))


def report_json(payload: dict) -> str:
    """Canonical JSON for reports and golden files."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_case_report(report: CaseReport) -> str:
    m = report.metrics
    cm = m.counts
    lines = [
        f"Case:        {report.case_id}",
        f"Records:     {cm.total}",
        f"Confusion:   tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}",
        f"Accuracy:    {_pct(m.accuracy)}",
        f"Sensitivity: {_pct(m.sensitivity)}",
        f"Specificity: {_pct(m.specificity)}",
        f"PPV:         {_pct(m.ppv)}",
        f"NPV:         {_pct(m.npv)}",
        f"Nonconverged runs: {report.nonconverged}",
    ]
    return "\n".join(lines) + "\n"
