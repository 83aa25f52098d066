"""Command-line interface: validate, infer, evaluate, compare, serve.

The CLI is a thin client over the same entry points the HTTP service
uses, so a command-line inference and an API inference of the same record
produce the same decision.  Exit status 2 marks validation problems
(unknown attributes, bad values, bad files); the offending name is always
in the message.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import cad
from .errors import AfcmError
from .evaluation import compare_cases, evaluate_case, load_dataset, render_case_report, report_json
from .model import FcmModel, load_model, validate_model
from .service import InferenceRequest, Overrides, build_app, perform_inference


def _load(model_path: str | None) -> FcmModel:
    if model_path is None:
        return cad.builtin_cad_model()
    return load_model(model_path)


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
@click.option(
    "--model",
    "model_path",
    envvar="AFCM_MODEL",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Model file to load (defaults to the bundled CAD model; env AFCM_MODEL).",
)
@click.pass_context
def main(ctx: click.Context, model_path: str | None) -> None:
    """Fuzzy-cognitive-map decision engine."""
    ctx.obj = model_path


@main.command()
@click.pass_obj
def validate(model_path: str | None) -> None:
    """Check the model file against every invariant and print the report."""
    try:
        model = _load(model_path)
    except AfcmError as exc:
        _fail(str(exc))
        return
    report = validate_model(model)
    click.echo(report.render())
    if not report.ok:
        sys.exit(2)


def _parse_sets(sets: tuple[str, ...]) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in sets:
        if "=" not in item:
            _fail(f"--set expects ATTRIBUTE=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@main.command()
@click.option("--case", "case_id", default="Case9", show_default=True, help="Case configuration to run.")
@click.option("--input", "input_file", type=click.Path(exists=True, dir_okay=False), help="JSON file of attribute values.")
@click.option("--set", "sets", multiple=True, metavar="ATTR=VALUE", help="Set one attribute (repeatable).")
@click.option("--trajectory", is_flag=True, help="Append the per-iteration concept table.")
@click.option("--json", "as_json", is_flag=True, help="Emit the full response as JSON.")
@click.option("--top", default=8, show_default=True, help="Contributions to print.")
@click.option("--threshold", type=float, default=None, help="Override the decision threshold.")
@click.option("--epsilon", type=float, default=None, help="Override the convergence tolerance.")
@click.option("--max-iterations", type=int, default=None, help="Override the iteration cap.")
@click.pass_obj
def infer(model_path, case_id, input_file, sets, trajectory, as_json, top, threshold, epsilon, max_iterations):
    """Classify one record and explain the decision."""
    attributes: dict[str, str] = {}
    if input_file:
        try:
            attributes.update(json.loads(Path(input_file).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as exc:
            _fail(f"cannot read {input_file}: {exc}")
    attributes.update(_parse_sets(sets))
    if not attributes:
        _fail("no input: pass --input FILE or --set ATTR=VALUE")

    overrides = None
    if threshold is not None or epsilon is not None or max_iterations is not None:
        overrides = Overrides(threshold=threshold, epsilon=epsilon, max_iterations=max_iterations)

    try:
        model = _load(model_path)
        cad.case_config(case_id)
    except (AfcmError, KeyError) as exc:
        _fail(str(exc))
        return
    request = InferenceRequest(
        attributes=attributes, case_id=case_id, overrides=overrides, include_trajectory=trajectory
    )
    try:
        response = perform_inference(model, request)
    except AfcmError as exc:
        _fail(str(exc))
        return

    if as_json:
        click.echo(response.model_dump_json(by_alias=True, indent=2))
        return

    d = response.decision
    click.echo(f"Decision:  {d.klass}")
    click.echo(f"Score:     {d.score:.4f}")
    click.echo(f"Label:     {d.label}")
    state = "yes" if response.converged else "no"
    click.echo(f"Converged: {state} ({response.iterations} iterations)")
    if response.fired_rules:
        click.echo("Fired rules:")
        for rule in response.fired_rules:
            click.echo(f"  {rule.rule_id}: {rule.description}")
    else:
        click.echo("Fired rules: none")
    click.echo("Top contributions:")
    for entry in response.contributions[:top]:
        click.echo(f"  {entry.source:<5} {entry.contribution:+.4f}  {entry.label}")
    if response.trajectory:
        click.echo("Trajectory:")
        ids = list(response.trajectory[0].values)
        click.echo("  k    " + "  ".join(f"{cid:>7}" for cid in ids))
        for point in response.trajectory:
            row = "  ".join(f"{point.values[cid]:7.4f}" for cid in ids)
            click.echo(f"  {point.k:<4} {row}")


def _resolve_cases(cases: str | None):
    if not cases:
        return cad.all_case_configs()
    out = []
    for cid in cases.split(","):
        cid = cid.strip()
        try:
            out.append(cad.case_config(cid))
        except KeyError as exc:
            _fail(str(exc))
    return tuple(out)


@main.command()
@click.option("--data", "data_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Dataset CSV.")
@click.option("--cases", default=None, help="Comma-separated case ids (default: all ten).")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table", show_default=True)
@click.pass_obj
def evaluate(model_path, data_file, cases, fmt):
    """Evaluate cases against a labelled dataset, with full per-case metrics."""
    try:
        model = _load(model_path)
        dataset = load_dataset(data_file, model)
        reports = [evaluate_case(cfg, dataset, model) for cfg in _resolve_cases(cases)]
    except AfcmError as exc:
        _fail(str(exc))
        return
    if fmt == "json":
        click.echo(report_json({"reports": [r.to_dict() for r in reports]}), nl=False)
    else:
        for report in reports:
            click.echo(render_case_report(report))


@main.command()
@click.option("--data", "data_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Dataset CSV.")
@click.option("--cases", default=None, help="Comma-separated case ids (default: all ten).")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table", show_default=True)
@click.pass_obj
def compare(model_path, data_file, cases, fmt):
    """Accuracy/sensitivity/specificity side by side across cases."""
    try:
        model = _load(model_path)
        dataset = load_dataset(data_file, model)
        table = compare_cases(_resolve_cases(cases), dataset, model)
    except AfcmError as exc:
        _fail(str(exc))
        return
    if fmt == "json":
        click.echo(report_json(table.to_dict()), nl=False)
    else:
        click.echo(table.render_text(), nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None, help="Directory of built UI assets.")
@click.pass_obj
def serve(model_path, host, port, ui_dir):
    """Start the HTTP service (loads the model once at startup)."""
    import uvicorn

    try:
        model = _load(model_path)
    except AfcmError as exc:
        _fail(str(exc))
        return
    app = build_app(model, ui_dir=Path(ui_dir) if ui_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
