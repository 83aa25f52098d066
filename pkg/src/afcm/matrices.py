"""Numeric weight matrices partitioned by concept role, plus case rewiring.

The stepper consumes matrices named by role — input->input (ii),
input->state (is_), state->state (ss), input->output (io), state->output
(so) — never by the single-letter names of control notation, which are
inconsistent across sources.  Gated state->output edges are kept as three
blocks: the ungated signed weights plus the magnitude blocks that fire
only on positive or only on negative source values.

Case rewiring lives here too: restricting a model to a subset of its
state concepts (inputs feeding a dropped state connect directly to the
outputs, reusing their input->state weight) and expanding a single-output
model into the two-class form (sign-routed direct edges, gated state
edges).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .model import ConceptSpec, Edge, FcmModel
from .weights import LinguisticWeight, resolve_weight

HEALTHY_OUTPUT = "out_healthy"
DISEASED_OUTPUT = "out_diseased"


@dataclass(frozen=True)
class WeightMatrices:
    """Role-partitioned numeric weights; arrays are indexed [source, target]."""

    inputs: tuple[str, ...]
    states: tuple[str, ...]
    outputs: tuple[str, ...]
    ii: np.ndarray
    is_: np.ndarray
    ss: np.ndarray
    io: np.ndarray
    so: np.ndarray        # ungated state->output weights, signed
    so_pos: np.ndarray    # |w| of positive-source-only edges
    so_neg: np.ndarray    # |w| of negative-source-only edges
    denom_inputs: np.ndarray
    denom_states: np.ndarray
    denom_outputs: np.ndarray

    @property
    def incoming_abs_sum(self) -> dict[str, float]:
        """Per concept, the sum of |weight| over all incoming edges."""
        out: dict[str, float] = {}
        for ids, denoms in (
            (self.inputs, self.denom_inputs),
            (self.states, self.denom_states),
            (self.outputs, self.denom_outputs),
        ):
            for cid, d in zip(ids, denoms):
                out[cid] = float(d)
        return out


def defuzzify_weights(model: FcmModel) -> WeightMatrices:
    """Resolve linguistic weights to numbers and partition them by role."""
    inputs = tuple(c.id for c in model.inputs)
    states = tuple(c.id for c in model.states)
    outputs = tuple(c.id for c in model.outputs)
    iu = {cid: i for i, cid in enumerate(inputs)}
    ix = {cid: i for i, cid in enumerate(states)}
    iy = {cid: i for i, cid in enumerate(outputs)}
    kind = {c.id: c.kind for c in model.concepts}

    ii = np.zeros((len(inputs), len(inputs)))
    is_ = np.zeros((len(inputs), len(states)))
    ss = np.zeros((len(states), len(states)))
    io = np.zeros((len(inputs), len(outputs)))
    so = np.zeros((len(states), len(outputs)))
    so_pos = np.zeros((len(states), len(outputs)))
    so_neg = np.zeros((len(states), len(outputs)))

    for e in model.edges:
        w = resolve_weight(e.weight, model.scale)
        pair = (kind[e.source], kind[e.target])
        if pair == ("input", "input"):
            ii[iu[e.source], iu[e.target]] = w
        elif pair == ("input", "state"):
            is_[iu[e.source], ix[e.target]] = w
        elif pair == ("state", "state"):
            ss[ix[e.source], ix[e.target]] = w
        elif pair == ("input", "output"):
            io[iu[e.source], iy[e.target]] = w
        elif pair == ("state", "output"):
            if e.gate == "positive-source-only":
                so_pos[ix[e.source], iy[e.target]] = abs(w)
            elif e.gate == "negative-source-only":
                so_neg[ix[e.source], iy[e.target]] = abs(w)
            else:
                so[ix[e.source], iy[e.target]] = w
        else:  # pragma: no cover - validation rejects these
            raise DimensionMismatchError(f"illegal edge kind {pair}")

    denom_inputs = np.abs(ii).sum(axis=0)
    denom_states = np.abs(is_).sum(axis=0) + np.abs(ss).sum(axis=0)
    denom_outputs = np.abs(io).sum(axis=0) + np.abs(so).sum(axis=0) + so_pos.sum(axis=0) + so_neg.sum(axis=0)

    return WeightMatrices(
        inputs=inputs,
        states=states,
        outputs=outputs,
        ii=ii,
        is_=is_,
        ss=ss,
        io=io,
        so=so,
        so_pos=so_pos,
        so_neg=so_neg,
        denom_inputs=denom_inputs,
        denom_states=denom_states,
        denom_outputs=denom_outputs,
    )


def flat_matrix(model: FcmModel) -> tuple[tuple[str, ...], np.ndarray]:
    """One unpartitioned matrix over every concept, for the classic stepper."""
    ids = tuple(c.id for c in model.concepts)
    index = {cid: i for i, cid in enumerate(ids)}
    w = np.zeros((len(ids), len(ids)))
    for e in model.edges:
        w[index[e.source], index[e.target]] = resolve_weight(e.weight, model.scale)
    return ids, w


# ---------------------------------------------------------------------------
# Case rewiring


def restrict_states(model: FcmModel, keep: tuple[str, ...]) -> FcmModel:
    """Keep only the given state concepts; rewire the rest's members directly.

    An input that fed a dropped state connects to every output with its
    input->state weight (sign-routed later if the model is expanded to two
    outputs).  Edges touching dropped states disappear.
    """
    state_ids = {c.id for c in model.states}
    unknown = set(keep) - state_ids
    if unknown:
        raise KeyError(f"unknown state concepts: {sorted(unknown)}")
    dropped = state_ids - set(keep)
    if not dropped:
        return model

    output_ids = [c.id for c in model.outputs]
    # members of a dropped state feed the outputs directly in this view,
    # so they no longer belong to that state's group
    concepts = tuple(
        c.model_copy(update={"group": None}) if c.group in dropped else c
        for c in model.concepts
        if c.id not in dropped
    )

    edges: list[Edge] = []
    for e in model.edges:
        if e.source in dropped:
            continue
        if e.target in dropped:
            # Bypass the dropped state: the member feeds the outputs directly.
            for out_id in output_ids:
                edges.append(
                    Edge(source=e.source, target=out_id, weight=e.weight, provenance="derived-state-bypass")
                )
            continue
        edges.append(e)
    return model.model_copy(update={"concepts": concepts, "edges": tuple(edges)})


def expand_two_outputs(model: FcmModel) -> FcmModel:
    """Turn a single-output model into the two-class form.

    Direct input->output edges route by sign: positive evidence feeds the
    diseased output, negative evidence feeds the healthy output with |w|.
    Each state->output edge becomes a gated pair: the positive-source gate
    on the diseased side, the negative-source gate on the healthy side.
    """
    outputs = model.outputs
    if len(outputs) != 1:
        raise DimensionMismatchError(f"two-class expansion needs a single output, found {len(outputs)}")
    old_out = outputs[0].id

    healthy = ConceptSpec(id=HEALTHY_OUTPUT, label="healthy class score", kind="output")
    diseased = ConceptSpec(id=DISEASED_OUTPUT, label="diseased class score", kind="output")
    concepts = tuple(c for c in model.concepts if c.id != old_out) + (healthy, diseased)

    kind = {c.id: c.kind for c in model.concepts}
    edges: list[Edge] = []
    for e in model.edges:
        if e.target != old_out:
            edges.append(e)
            continue
        if kind[e.source] == "state":
            mag = abs(resolve_weight(e.weight, model.scale))
            edges.append(Edge(source=e.source, target=DISEASED_OUTPUT, weight=mag,
                              gate="positive-source-only", provenance=e.provenance))
            edges.append(Edge(source=e.source, target=HEALTHY_OUTPUT, weight=mag,
                              gate="negative-source-only", provenance=e.provenance))
        else:
            w = resolve_weight(e.weight, model.scale)
            target = DISEASED_OUTPUT if w >= 0 else HEALTHY_OUTPUT
            edges.append(Edge(source=e.source, target=target, weight=abs(w), provenance=e.provenance))
    return model.model_copy(update={"concepts": concepts, "edges": tuple(edges)})


def case_model(model: FcmModel, states: tuple[str, ...], two_outputs: bool) -> FcmModel:
    """The model as a given experiment setup sees it."""
    restricted = restrict_states(model, states)
    return expand_two_outputs(restricted) if two_outputs else restricted


def weight_of(edge: Edge, model: FcmModel) -> float:
    """Numeric weight of an edge under its model's scale."""
    if isinstance(edge.weight, LinguisticWeight):
        return resolve_weight(edge.weight, model.scale)
    return float(edge.weight)
