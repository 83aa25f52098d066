"""Model representation: concepts, typed edges, linguistic weights.

A model document is a JSON-compatible tree with top-level keys
``concepts``, ``edges``, ``scale``, ``rules``, ``meta`` plus the fuzzy I/O
tables ``encodings`` and ``labels`` (see docs/model_file.md).  Loading is
strict: malformed documents are rejected, never repaired, and semantic
invariants are checked by :func:`validate_model`, which reports every
violation instead of throwing on the first.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .errors import ModelParseError, ModelValidationError
from .fuzzy import DEFAULT_LABEL_SCALE, LabelBand, OutputLabelScale
from .rules import Rule
from .weights import (
    DEFAULT_SCALE,
    MAGNITUDES,
    LinguisticWeight,
    Weight,
    format_weight,
    parse_weight,
)

ConceptKind = Literal["input", "state", "output"]
Gate = Literal["always", "positive-source-only", "negative-source-only"]

# Edge kinds an FCM of this family admits; outputs are sinks.
LEGAL_EDGE_KINDS: frozenset[tuple[str, str]] = frozenset(
    [("input", "input"), ("input", "state"), ("state", "state"), ("input", "output"), ("state", "output")]
)


class ConceptSpec(BaseModel):
    """One node: exogenous input, intermediate state, or decision output."""

    model_config = ConfigDict(frozen=True)

    id: str
    label: str = ""
    kind: ConceptKind
    value_domain: dict[str, float] | None = None
    group: str | None = None
    active: bool = True


class Edge(BaseModel):
    """Weighted causal arc; gates restrict state->output routing by sign."""

    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    weight: Weight
    gate: Gate = "always"
    provenance: str | None = None

    @field_validator("weight", mode="before")
    @classmethod
    def _parse(cls, raw) -> Weight:
        return parse_weight(raw)


class ModelMeta(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = ""
    version: str = ""
    notes: tuple[str, ...] = ()


class FcmModel(BaseModel):
    """Concepts, edges, weight scale, rules and fuzzy I/O tables of one map."""

    model_config = ConfigDict(frozen=True)

    concepts: tuple[ConceptSpec, ...]
    edges: tuple[Edge, ...]
    scale: dict[str, float] = DEFAULT_SCALE.copy()
    rules: tuple[Rule, ...] = ()
    labels: OutputLabelScale = DEFAULT_LABEL_SCALE
    meta: ModelMeta = ModelMeta()

    def concept(self, concept_id: str) -> ConceptSpec:
        for c in self.concepts:
            if c.id == concept_id:
                return c
        raise KeyError(concept_id)

    def by_kind(self, kind: ConceptKind) -> tuple[ConceptSpec, ...]:
        return tuple(c for c in self.concepts if c.kind == kind)

    @property
    def inputs(self) -> tuple[ConceptSpec, ...]:
        return self.by_kind("input")

    @property
    def states(self) -> tuple[ConceptSpec, ...]:
        return self.by_kind("state")

    @property
    def outputs(self) -> tuple[ConceptSpec, ...]:
        return self.by_kind("output")

    def encoding_tables(self) -> dict[str, dict[str, float]]:
        return {c.id: dict(c.value_domain) for c in self.inputs if c.value_domain is not None}


# ---------------------------------------------------------------------------
# Validation


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str
    message: str
    subject: str = ""


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def render(self) -> str:
        if self.ok:
            return "model is valid"
        return "\n".join(f"[{v.code}] {v.message}" for v in self.violations)


def validate_model(model: FcmModel) -> ValidationReport:
    """Check every model invariant; returns all violations, throws never."""
    out: list[Violation] = []

    def bad(code: str, message: str, subject: str = "") -> None:
        out.append(Violation(code=code, message=message, subject=subject))

    if not model.concepts:
        bad("no-concepts", "no concepts declared")

    ids: dict[str, ConceptSpec] = {}
    for c in model.concepts:
        if c.id in ids:
            bad("duplicate-id", f"concept id {c.id!r} declared twice", c.id)
        ids[c.id] = c

    # Weight scale: the five terms, positive, monotone, within the unit band.
    if set(model.scale) != set(MAGNITUDES):
        bad("bad-scale", f"scale must map exactly the terms {MAGNITUDES}")
    else:
        values = [model.scale[m] for m in MAGNITUDES]
        if any(not 0.0 < v <= 1.0 for v in values):
            bad("bad-scale", "scale values must lie in (0, 1]")
        if any(b <= a for a, b in zip(values, values[1:])):
            bad("bad-scale", "scale must be strictly increasing VW < W < M < S < VS")

    for c in model.concepts:
        if c.kind == "input":
            if not c.value_domain:
                bad("missing-encoding", f"input concept {c.id!r} has no value domain", c.id)
            else:
                crisp = list(c.value_domain.values())
                if any(not 0.0 <= v <= 1.0 for v in crisp):
                    bad("bad-encoding", f"concept {c.id!r} has crisp encodings outside [0, 1]", c.id)
                if any(b <= a for a, b in zip(crisp, crisp[1:])):
                    bad("bad-encoding", f"concept {c.id!r} encodings must increase with severity", c.id)
        elif c.value_domain is not None:
            bad("unexpected-encoding", f"{c.kind} concept {c.id!r} must not carry a value domain", c.id)
        if c.group is not None:
            if c.kind != "input":
                bad("bad-group", f"{c.kind} concept {c.id!r} cannot belong to a state group", c.id)
            elif c.group not in ids or ids[c.group].kind != "state":
                bad("bad-group", f"concept {c.id!r} names unknown state group {c.group!r}", c.id)

    seen_pairs: set[tuple[str, str]] = set()
    for e in model.edges:
        missing = [cid for cid in (e.source, e.target) if cid not in ids]
        for cid in missing:
            bad("unknown-endpoint", f"edge {e.source}->{e.target} references unknown concept {cid!r}", cid)
        if missing:
            continue
        if e.source == e.target:
            bad("self-edge", f"self-edge on {e.source!r} (diagonal must stay zero)", e.source)
        kind_pair = (ids[e.source].kind, ids[e.target].kind)
        if kind_pair not in LEGAL_EDGE_KINDS:
            bad(
                "illegal-edge-kind",
                f"edge {e.source}->{e.target} is {kind_pair[0]}->{kind_pair[1]}, which is not allowed",
                e.source,
            )
        if e.gate != "always" and kind_pair != ("state", "output"):
            bad("illegal-gate", f"gate {e.gate!r} only allowed on state->output edges ({e.source}->{e.target})")
        if (e.source, e.target) in seen_pairs:
            bad("duplicate-edge", f"duplicate edge {e.source}->{e.target}", e.source)
        seen_pairs.add((e.source, e.target))
        if not isinstance(e.weight, LinguisticWeight) and not -1.0 <= e.weight <= 1.0:
            bad("bad-weight", f"edge {e.source}->{e.target} weight {e.weight} outside [-1, 1]")

    input_ids = {c.id for c in model.concepts if c.kind == "input"}
    for rule in model.rules:
        for pred in rule.condition:
            attrs = pred.attributes if hasattr(pred, "attributes") else (pred.attribute,)
            for attr in attrs:
                if attr not in input_ids:
                    bad(
                        "rule-unknown-attribute",
                        f"rule {rule.id!r} condition references unknown attribute {attr!r}",
                        rule.id,
                    )

    return ValidationReport(violations=tuple(out))


# ---------------------------------------------------------------------------
# Document parsing and serialization

_TOP_KEYS = {"concepts", "edges", "scale", "rules", "meta", "encodings", "labels"}


def model_from_dict(doc: dict) -> FcmModel:
    """Build and validate a model from a parsed document tree."""
    if not isinstance(doc, dict):
        raise ModelParseError("model document must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ModelParseError(f"unknown top-level keys: {sorted(unknown)}")
    for key in ("concepts", "edges"):
        if key not in doc:
            raise ModelParseError(f"missing top-level key {key!r}")

    encodings = doc.get("encodings", {})
    if not isinstance(encodings, dict):
        raise ModelParseError("'encodings' must map attribute ids to value tables")

    try:
        concepts = []
        for raw in doc["concepts"]:
            data = dict(raw)
            if data.get("id") in encodings:
                data["value_domain"] = encodings[data["id"]]
            concepts.append(ConceptSpec(**data))
        labels = doc.get("labels")
        label_scale = (
            OutputLabelScale(bands=tuple(LabelBand(**band) for band in labels))
            if labels is not None
            else DEFAULT_LABEL_SCALE
        )
        model = FcmModel(
            concepts=tuple(concepts),
            edges=tuple(Edge(**e) for e in doc["edges"]),
            scale=dict(doc.get("scale", DEFAULT_SCALE)),
            rules=tuple(Rule(**r) for r in doc.get("rules", ())),
            labels=label_scale,
            meta=ModelMeta(**doc.get("meta", {})),
        )
    except (ValidationError, TypeError, ValueError) as exc:
        raise ModelParseError(f"malformed model document: {exc}") from exc

    report = validate_model(model)
    if not report.ok:
        raise ModelValidationError(report)
    return model


def loads_model(text: str) -> FcmModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"not valid JSON: {exc}") from exc
    return model_from_dict(doc)


def load_model(path: str | Path) -> FcmModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))


def serialize_model(model: FcmModel) -> dict:
    """Document tree for a model; inverse of :func:`model_from_dict`."""
    concepts = []
    encodings: dict[str, dict[str, float]] = {}
    for c in model.concepts:
        entry: dict = {"id": c.id, "label": c.label, "kind": c.kind}
        if c.group is not None:
            entry["group"] = c.group
        if not c.active:
            entry["active"] = False
        concepts.append(entry)
        if c.value_domain is not None:
            encodings[c.id] = dict(c.value_domain)

    edges = []
    for e in model.edges:
        entry = {"source": e.source, "target": e.target, "weight": format_weight(e.weight)}
        if e.gate != "always":
            entry["gate"] = e.gate
        if e.provenance is not None:
            entry["provenance"] = e.provenance
        edges.append(entry)

    return {
        "meta": model.meta.model_dump(mode="json"),
        "scale": dict(model.scale),
        "concepts": concepts,
        "encodings": encodings,
        "edges": edges,
        "labels": [band.model_dump(mode="json") for band in model.labels.bands],
        "rules": [r.model_dump(mode="json", exclude_none=True) for r in model.rules],
    }


def dumps_model(model: FcmModel) -> str:
    return json.dumps(serialize_model(model), indent=2, ensure_ascii=False) + "\n"


def save_model(model: FcmModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")
