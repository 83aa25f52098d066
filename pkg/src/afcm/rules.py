"""Rule engine: condition evaluation and one-shot model rewriting.

Rules run once, before iteration begins.  Conditions are conjunctions of
predicates over the raw (pristine) patient record — a rule never sees the
mutations made by an earlier rule.  Actions rewrite the model: scale edge
weights, remove edges, or deactivate concepts.  Application order is the
authored order, both across rules and across a rule's actions; pure scale
actions commute, deactivations are order-sensitive by design.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Annotated, Literal, Mapping, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import UnknownAttributeError
from .weights import clamp_weight, resolve_weight

if TYPE_CHECKING:  # pragma: no cover
    from .model import FcmModel


# ---------------------------------------------------------------------------
# Conditions


class EqualsPredicate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["equals"] = "equals"
    attribute: str
    value: str


class InPredicate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["in"] = "in"
    attribute: str
    values: tuple[str, ...]


class CountAtLeastPredicate(BaseModel):
    """At least ``n`` of ``attributes`` match ``values`` (or miss them if negated)."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["count_at_least"] = "count_at_least"
    n: int = Field(ge=1)
    attributes: tuple[str, ...]
    values: tuple[str, ...]
    negate: bool = False


Predicate = Annotated[
    Union[EqualsPredicate, InPredicate, CountAtLeastPredicate],
    Field(discriminator="kind"),
]


def _value(record: Mapping[str, str], attribute: str) -> str:
    if attribute not in record:
        raise UnknownAttributeError(attribute)
    return record[attribute]


def _holds(predicate, record: Mapping[str, str]) -> bool:
    if isinstance(predicate, EqualsPredicate):
        return _value(record, predicate.attribute) == predicate.value
    if isinstance(predicate, InPredicate):
        return _value(record, predicate.attribute) in predicate.values
    matches = 0
    for attr in predicate.attributes:
        hit = _value(record, attr) in predicate.values
        if hit != predicate.negate:
            matches += 1
    return matches >= predicate.n


# ---------------------------------------------------------------------------
# Actions


class EdgeSelector(BaseModel):
    """Picks edges by source id, target id, and/or the source's state group.

    An empty resolution is legal and acts as a no-op.
    """

    model_config = ConfigDict(frozen=True)

    sources: tuple[str, ...] | None = None
    targets: tuple[str, ...] | None = None
    group: str | None = None

    def matches(self, edge, groups: Mapping[str, str | None]) -> bool:
        if self.sources is not None and edge.source not in self.sources:
            return False
        if self.targets is not None and edge.target not in self.targets:
            return False
        if self.group is not None and groups.get(edge.source) != self.group:
            return False
        return True


class ScaleEdgesAction(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["scale_edges"] = "scale_edges"
    factor: float = Field(gt=0)
    selector: EdgeSelector


class ScaleEdgesWhereAction(BaseModel):
    """Scale outgoing edges of each source whose record value is in ``value_in``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["scale_edges_where"] = "scale_edges_where"
    factor: float = Field(gt=0)
    sources: tuple[str, ...]
    value_in: tuple[str, ...]


class RemoveEdgesAction(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["remove_edges"] = "remove_edges"
    selector: EdgeSelector


class DeactivateConceptsAction(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["deactivate"] = "deactivate"
    concepts: tuple[str, ...]


Action = Annotated[
    Union[ScaleEdgesAction, ScaleEdgesWhereAction, RemoveEdgesAction, DeactivateConceptsAction],
    Field(discriminator="kind"),
]


class Rule(BaseModel):
    """A conjunctive condition plus an ordered list of model rewrites."""

    model_config = ConfigDict(frozen=True)

    id: str
    description: str = ""
    condition: tuple[Predicate, ...]
    actions: tuple[Action, ...]

    @field_validator("actions")
    @classmethod
    def _at_least_one(cls, actions):
        if not actions:
            raise ValueError("a rule needs at least one action")
        return actions


def evaluate_condition(rule: Rule, record: Mapping[str, str]) -> bool:
    """Pure conjunction check against the raw record; no side effects."""
    return all(_holds(p, record) for p in rule.condition)


# ---------------------------------------------------------------------------
# Application log


class AppliedAction(BaseModel):
    """Exact mutation performed: enough to replay without the rule."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["scale_edges", "remove_edges", "deactivate"]
    factor: float | None = None
    edges: tuple[tuple[str, str], ...] = ()
    concepts: tuple[str, ...] = ()


class FiredRule(BaseModel):
    model_config = ConfigDict(frozen=True)

    rule_id: str
    description: str = ""
    actions: tuple[AppliedAction, ...]


class FiredRuleLog(BaseModel):
    model_config = ConfigDict(frozen=True)

    fired: tuple[FiredRule, ...] = ()

    @property
    def rule_ids(self) -> tuple[str, ...]:
        return tuple(f.rule_id for f in self.fired)


# ---------------------------------------------------------------------------
# Application


def _scale_edges(model: "FcmModel", pairs: set[tuple[str, str]], factor: float) -> "FcmModel":
    new_edges = []
    for edge in model.edges:
        if (edge.source, edge.target) in pairs:
            value = clamp_weight(resolve_weight(edge.weight, model.scale) * factor)
            edge = edge.model_copy(update={"weight": value})
        new_edges.append(edge)
    return model.model_copy(update={"edges": tuple(new_edges)})


def _remove_edges(model: "FcmModel", pairs: set[tuple[str, str]]) -> "FcmModel":
    kept = tuple(e for e in model.edges if (e.source, e.target) not in pairs)
    return model.model_copy(update={"edges": kept})


def _deactivate(model: "FcmModel", concepts: set[str]) -> "FcmModel":
    new_concepts = tuple(
        c.model_copy(update={"active": False}) if c.id in concepts else c for c in model.concepts
    )
    kept = tuple(e for e in model.edges if e.source not in concepts and e.target not in concepts)
    return model.model_copy(update={"concepts": new_concepts, "edges": kept})


def _apply_action(model: "FcmModel", action, record: Mapping[str, str]):
    groups = {c.id: c.group for c in model.concepts}
    if isinstance(action, ScaleEdgesAction):
        pairs = {(e.source, e.target) for e in model.edges if action.selector.matches(e, groups)}
        applied = AppliedAction(kind="scale_edges", factor=action.factor, edges=tuple(sorted(pairs)))
        return _scale_edges(model, pairs, action.factor), applied
    if isinstance(action, ScaleEdgesWhereAction):
        live = {s for s in action.sources if record.get(s) in action.value_in}
        pairs = {(e.source, e.target) for e in model.edges if e.source in live}
        applied = AppliedAction(kind="scale_edges", factor=action.factor, edges=tuple(sorted(pairs)))
        return _scale_edges(model, pairs, action.factor), applied
    if isinstance(action, RemoveEdgesAction):
        pairs = {(e.source, e.target) for e in model.edges if action.selector.matches(e, groups)}
        applied = AppliedAction(kind="remove_edges", edges=tuple(sorted(pairs)))
        return _remove_edges(model, pairs), applied
    if isinstance(action, DeactivateConceptsAction):
        present = {c.id for c in model.concepts if c.id in set(action.concepts) and c.active}
        removed = tuple(
            sorted((e.source, e.target) for e in model.edges if e.source in present or e.target in present)
        )
        applied = AppliedAction(kind="deactivate", concepts=tuple(sorted(present)), edges=removed)
        return _deactivate(model, present), applied
    raise TypeError(f"unknown action {action!r}")


def apply_rules(rules, model: "FcmModel", record: Mapping[str, str]):
    """Evaluate every rule against the pristine record and apply the firing ones.

    Returns a rewritten copy of the model plus the log of performed
    mutations; the input model is never touched.  A rule fires when its
    condition holds; an action whose selector resolves to nothing is a
    recorded no-op.
    """
    fired = [rule for rule in rules if evaluate_condition(rule, record)]
    work = model
    entries = []
    for rule in fired:
        applied_actions = []
        for action in rule.actions:
            work, applied = _apply_action(work, action, record)
            applied_actions.append(applied)
        entries.append(
            FiredRule(rule_id=rule.id, description=rule.description, actions=tuple(applied_actions))
        )
    return work, FiredRuleLog(fired=tuple(entries))


def replay_log(log: FiredRuleLog, model: "FcmModel") -> "FcmModel":
    """Re-run the exact mutations of a log against a model (no conditions)."""
    work = model
    for fired in log.fired:
        for action in fired.actions:
            if action.kind == "scale_edges":
                work = _scale_edges(work, set(action.edges), action.factor)
            elif action.kind == "remove_edges":
                work = _remove_edges(work, set(action.edges))
            else:
                work = _deactivate(work, set(action.concepts))
    return work
