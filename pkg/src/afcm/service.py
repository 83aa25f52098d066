"""HTTP API over a loaded model: inference, what-if batches, introspection.

One immutable (model, per-case plans) snapshot is built at startup and
shared across requests; request handling never mutates it, so handlers are
freely concurrent and stateless.  The CLI drives the same
``perform_inference`` entry point, which keeps command-line and HTTP
decisions identical by construction.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Mapping

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from . import cad
from .errors import AfcmError
from .fuzzy import label_output
from .inference import CaseConfig, CasePlan, classify, contributions, prepare_case, run
from .matrices import weight_of
from .model import FcmModel, validate_model

DEFAULT_CASE = "Case9"


# ---------------------------------------------------------------------------
# Wire schemas


class Overrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    threshold: float | None = Field(default=None, ge=0.0, le=1.0)
    epsilon: float | None = Field(default=None, gt=0.0)
    max_iterations: int | None = Field(default=None, ge=1)


class InferenceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    attributes: dict[str, str]
    case_id: str = DEFAULT_CASE
    overrides: Overrides | None = None
    include_trajectory: bool = False


class WhatIfRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    attributes: dict[str, str]
    case_id: str = DEFAULT_CASE
    overrides: Overrides | None = None
    deltas: list[dict[str, str]]


class DecisionOut(BaseModel):
    klass: str = Field(serialization_alias="class")
    score: float
    label: str
    raw_outputs: dict[str, float]


class FiredRuleOut(BaseModel):
    rule_id: str
    description: str
    edges_scaled: list[str]
    edges_removed: list[str]
    concepts_deactivated: list[str]


class ContributionOut(BaseModel):
    source: str
    label: str
    kind: str
    weight: float
    value: float
    contribution: float


class TrajectoryPoint(BaseModel):
    k: int
    values: dict[str, float]


class InferenceResponse(BaseModel):
    decision: DecisionOut
    fired_rules: list[FiredRuleOut]
    contributions: list[ContributionOut]
    iterations: int
    converged: bool
    case_id: str
    trajectory: list[TrajectoryPoint] | None = None


class WhatIfItem(BaseModel):
    delta: dict[str, str]
    response: InferenceResponse | None = None
    error: str | None = None


class WhatIfResponse(BaseModel):
    base: InferenceResponse
    results: list[WhatIfItem]


# ---------------------------------------------------------------------------
# Shared inference logic


def _with_overrides(cfg: CaseConfig, overrides: Overrides | None) -> CaseConfig:
    if overrides is None:
        return cfg
    updates = {}
    if overrides.threshold is not None:
        updates["threshold"] = overrides.threshold
    if overrides.epsilon is not None:
        updates["epsilon"] = overrides.epsilon
    if overrides.max_iterations is not None:
        updates["max_iterations"] = overrides.max_iterations
    return cfg.model_copy(update=updates) if updates else cfg


def perform_inference(
    model: FcmModel,
    request: InferenceRequest,
    *,
    plans: Mapping[str, CasePlan] | None = None,
) -> InferenceResponse:
    """Run one record through a case and shape the full response payload."""
    cfg = _with_overrides(cad.case_config(request.case_id), request.overrides)
    # overrides never change the case structure, so the prepared plan still fits
    plan = plans.get(request.case_id) if plans is not None else None
    rr = run(model, request.attributes, cfg, plan=plan)
    decision = classify(rr, cfg)

    labels = {c.id: c.label for c in model.concepts}
    report = contributions(rr)
    decision_output = rr.outputs[0] if cfg.output_mode == "single" else "out_diseased"
    contribs = sorted(report.entries[decision_output], key=lambda e: abs(e.contribution), reverse=True)

    fired = [
        FiredRuleOut(
            rule_id=f.rule_id,
            description=f.description,
            edges_scaled=[f"{s}->{t}" for a in f.actions if a.kind == "scale_edges" for s, t in a.edges],
            edges_removed=[f"{s}->{t}" for a in f.actions if a.kind == "remove_edges" for s, t in a.edges],
            concepts_deactivated=[c for a in f.actions if a.kind == "deactivate" for c in a.concepts],
        )
        for f in rr.fired_rules.fired
    ]

    trajectory = None
    if request.include_trajectory:
        ids = rr.inputs + rr.states + rr.outputs
        trajectory = [
            TrajectoryPoint(k=cv.k, values={cid: round(float(v), 6) for cid, v in zip(ids, cv.all_values())})
            for cv in rr.trajectory
        ]

    return InferenceResponse(
        decision=DecisionOut(
            klass=decision.class_,
            score=decision.score,
            label=label_output(decision.score, model.labels),
            raw_outputs=decision.raw_outputs,
        ),
        fired_rules=fired,
        contributions=[
            ContributionOut(
                source=e.source,
                label=labels.get(e.source, e.source),
                kind=e.source_kind,
                weight=e.weight,
                value=e.value,
                contribution=e.contribution,
            )
            for e in contribs
        ],
        iterations=rr.iterations,
        converged=rr.converged,
        case_id=cfg.id,
        trajectory=trajectory,
    )


# ---------------------------------------------------------------------------
# App assembly


def default_ui_dir() -> Path | None:
    env = os.environ.get("AFCM_UI_DIR")
    if env:
        return Path(env)
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def build_app(model: FcmModel | None = None, ui_dir: Path | None = None) -> FastAPI:
    """Assemble the service around one immutable model snapshot."""
    if model is None:
        model = cad.builtin_cad_model()
    plans = {cfg.id: prepare_case(model, cfg) for cfg in cad.all_case_configs()}

    app = FastAPI(title="afcm decision service", version="1.0.0")

    @app.exception_handler(RequestValidationError)
    async def _invalid_request(_req: Request, exc: RequestValidationError):
        details = [
            {"field": ".".join(str(p) for p in err.get("loc", ())), "message": err.get("msg", "invalid")}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": details})

    @app.exception_handler(AfcmError)
    async def _domain_error(_req: Request, exc: AfcmError):
        field = getattr(exc, "attribute", "")
        return JSONResponse(status_code=400, content={"detail": [{"field": field, "message": str(exc)}]})

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "model": model.meta.name, "version": model.meta.version}

    # sync handlers: starlette runs them on its threadpool, so the CPU-bound
    # simulations do not stall the event loop
    @app.post("/api/infer", response_model=InferenceResponse, response_model_by_alias=True)
    def infer(request: InferenceRequest):
        _require_known_case(request.case_id)
        return perform_inference(model, request, plans=plans)

    @app.post("/api/whatif", response_model=WhatIfResponse, response_model_by_alias=True)
    def whatif(request: WhatIfRequest):
        _require_known_case(request.case_id)
        base_request = InferenceRequest(
            attributes=request.attributes, case_id=request.case_id, overrides=request.overrides
        )
        base = perform_inference(model, base_request, plans=plans)
        results: list[WhatIfItem] = []
        for delta in request.deltas:
            merged = dict(request.attributes)
            merged.update(delta)
            try:
                response = perform_inference(
                    model,
                    InferenceRequest(attributes=merged, case_id=request.case_id, overrides=request.overrides),
                    plans=plans,
                )
                results.append(WhatIfItem(delta=delta, response=response))
            except AfcmError as exc:
                results.append(WhatIfItem(delta=delta, error=str(exc)))
        return WhatIfResponse(base=base, results=results)

    @app.get("/api/model")
    async def model_description():
        report = validate_model(model)
        return {
            "meta": model.meta.model_dump(mode="json"),
            "valid": report.ok,
            "concepts": [
                {
                    "id": c.id,
                    "label": c.label,
                    "kind": c.kind,
                    "group": c.group,
                    "values": list(c.value_domain) if c.value_domain else None,
                    "encodings": c.value_domain,
                }
                for c in model.concepts
            ],
            "edges": [
                {
                    "source": e.source,
                    "target": e.target,
                    "weight": weight_of(e, model),
                    "gate": e.gate,
                    "provenance": e.provenance,
                }
                for e in model.edges
            ],
            "rules": [
                {"id": r.id, "description": r.description}
                for r in model.rules
            ],
            "labels": [{"upto": b.upto, "label": b.label} for b in model.labels.bands],
            "scale": model.scale,
        }

    @app.get("/api/cases")
    async def cases():
        return {
            "cases": [
                {
                    "id": cfg.id,
                    "engine": cfg.engine,
                    "rules_enabled": cfg.rules_enabled,
                    "states": list(cfg.states),
                    "activation": {
                        "kind": cfg.activation.kind,
                        "params": cfg.activation.params.model_dump() if cfg.activation.params else None,
                        "range": cfg.activation.range,
                    },
                    "output_mode": cfg.output_mode,
                    "threshold": cfg.threshold,
                    "epsilon": cfg.epsilon,
                    "max_iterations": cfg.max_iterations,
                }
                for cfg in cad.all_case_configs()
            ]
        }

    def _require_known_case(case_id: str) -> None:
        try:
            cad.case_config(case_id)
        except KeyError as exc:
            raise HTTPException(status_code=400, detail=[{"field": "case_id", "message": str(exc)}]) from exc

    assets = ui_dir if ui_dir is not None else default_ui_dir()
    if assets is not None and assets.is_dir():
        app.mount("/", StaticFiles(directory=assets, html=True), name="ui")
    else:

        @app.get("/")
        async def index():
            return {
                "service": "afcm decision service",
                "ui": "not built (see frontend/README.md)",
                "endpoints": ["/api/infer", "/api/whatif", "/api/model", "/api/cases", "/healthz"],
            }

    return app
