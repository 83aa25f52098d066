"""Iterative dynamics: classic squashed-sum updates and state-space updates.

The state-space stepper computes, per iteration, the raw variations

    du = u @ ii        (input->input)
    dx = u @ is + x @ ss
    dy = u @ io + gated state->output terms

and moves every concept by its variation normalized by the total absolute
incoming weight, then squashes with the configured activation:

    v[k+1] = act(v[k] + delta / sum_j |w_ji|)

A concept with no incoming weight keeps its value exactly (no activation
is applied to it), so exogenous concepts are genuine fixed points.  The
classic stepper instead applies act(v + sum w·v) to every concept each
step, with no normalization and no skipping.

Gate semantics on state->output edges: a positive-source-only edge
contributes |w|·x only while x > 0; a negative-source-only edge
contributes |w|·|x| only while x < 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .activation import ActivationSpec, softmax
from .errors import DimensionMismatchError
from .fuzzy import encode_record
from .matrices import DISEASED_OUTPUT, HEALTHY_OUTPUT, WeightMatrices, case_model, defuzzify_weights, flat_matrix
from .model import FcmModel
from .rules import FiredRuleLog, apply_rules

Engine = Literal["classic", "afcm"]
OutputMode = Literal["single", "two_class_softmax"]
InputDynamics = Literal["one_shot", "per_step"]


class CaseConfig(BaseModel):
    """One experiment setup: engine, state subset, activation, output mode."""

    model_config = ConfigDict(frozen=True)

    id: str
    engine: Engine
    rules_enabled: bool = False
    states: tuple[str, ...] = ()
    activation: ActivationSpec
    output_mode: OutputMode = "single"
    threshold: float = 0.5
    epsilon: float = 1e-4
    max_iterations: int = Field(default=100, ge=1)
    # Input->input edges act once on the initial vector by default; the
    # per-step mode re-applies them every iteration instead.
    input_dynamics: InputDynamics = "one_shot"

    @model_validator(mode="after")
    def _check(self) -> "CaseConfig":
        if self.engine == "classic" and self.states:
            raise ValueError("the classic engine runs without state concepts")
        return self


@dataclass(frozen=True)
class ConceptVector:
    """Concept values at one iteration, partitioned input/state/output."""

    k: int
    u: np.ndarray
    x: np.ndarray
    y: np.ndarray
    active_u: np.ndarray
    active_x: np.ndarray
    active_y: np.ndarray

    def all_values(self) -> np.ndarray:
        return np.concatenate([self.u, self.x, self.y])


@dataclass(frozen=True)
class UpdateDelta:
    """Raw variations of one step, before normalization and activation."""

    du: np.ndarray
    dx: np.ndarray
    dy: np.ndarray


@dataclass(frozen=True)
class RunRecord:
    """Full trace of one simulation to convergence (or the iteration cap)."""

    case_id: str
    inputs: tuple[str, ...]
    states: tuple[str, ...]
    outputs: tuple[str, ...]
    trajectory: tuple[ConceptVector, ...]
    converged: bool
    iterations: int
    fired_rules: FiredRuleLog
    matrices: WeightMatrices

    @property
    def final(self) -> ConceptVector:
        return self.trajectory[-1]


@dataclass(frozen=True)
class Decision:
    class_: Literal["Healthy", "Diseased"]
    score: float
    raw_outputs: dict[str, float]


@dataclass(frozen=True)
class ContributionEntry:
    source: str
    source_kind: Literal["input", "state"]
    weight: float
    value: float
    contribution: float


@dataclass(frozen=True)
class ContributionReport:
    """Signed per-source shares of each output's final pre-activation update."""

    entries: dict[str, tuple[ContributionEntry, ...]]
    totals: dict[str, float]


@dataclass(frozen=True)
class CasePlan:
    """Record-independent preparation of a case: rewired model and matrices."""

    cfg: CaseConfig
    model: FcmModel
    matrices: WeightMatrices | None = None
    flat_ids: tuple[str, ...] | None = None
    flat_w: np.ndarray | None = None
    plain: WeightMatrices | None = field(default=None)  # pre-rules matrices for rules-enabled plans


# ---------------------------------------------------------------------------
# Steppers


def compute_deltas(u: np.ndarray, x: np.ndarray, w: WeightMatrices) -> UpdateDelta:
    """Raw variations caused by the current input and state values."""
    if u.shape != (len(w.inputs),) or x.shape != (len(w.states),):
        raise DimensionMismatchError(
            f"vector shapes {u.shape}/{x.shape} do not match layout "
            f"({len(w.inputs)} inputs, {len(w.states)} states)"
        )
    du = u @ w.ii
    dx = u @ w.is_ + x @ w.ss
    dy = u @ w.io + x @ w.so + np.maximum(x, 0.0) @ w.so_pos + np.maximum(-x, 0.0) @ w.so_neg
    return UpdateDelta(du=du, dx=dx, dy=dy)


def _normalized_move(values: np.ndarray, delta: np.ndarray, denom: np.ndarray, act: ActivationSpec) -> np.ndarray:
    """act(v + delta/denom) where incoming weight exists; v untouched elsewhere."""
    step = np.divide(delta, denom, out=np.zeros_like(delta), where=denom > 0)
    moved = np.asarray(act.apply(values + step), dtype=float)
    return np.where(denom > 0, moved, values)


def afcm_step(
    cv: ConceptVector,
    w: WeightMatrices,
    act: ActivationSpec,
    update_inputs: bool = True,
) -> tuple[ConceptVector, UpdateDelta]:
    """One state-space iteration; returns the next vector and its raw deltas."""
    delta = compute_deltas(cv.u, cv.x, w)
    new_u = _normalized_move(cv.u, delta.du, w.denom_inputs, act) if update_inputs else cv.u
    new_x = _normalized_move(cv.x, delta.dx, w.denom_states, act)
    new_y = _normalized_move(cv.y, delta.dy, w.denom_outputs, act)
    nxt = ConceptVector(
        k=cv.k + 1,
        u=np.where(cv.active_u, new_u, 0.0),
        x=np.where(cv.active_x, new_x, 0.0),
        y=np.where(cv.active_y, new_y, 0.0),
        active_u=cv.active_u,
        active_x=cv.active_x,
        active_y=cv.active_y,
    )
    return nxt, delta


def classic_step(v: np.ndarray, w_flat: np.ndarray, act: ActivationSpec) -> np.ndarray:
    """Standard update v[k+1] = act(v[k] + sum_j w_ji v_j[k]) over all concepts."""
    if v.shape[0] != w_flat.shape[0]:
        raise DimensionMismatchError(f"vector of {v.shape[0]} concepts against {w_flat.shape[0]}x{w_flat.shape[1]} matrix")
    return np.asarray(act.apply(v + v @ w_flat), dtype=float)


# ---------------------------------------------------------------------------
# Simulation


def prepare_case(model: FcmModel, cfg: CaseConfig) -> CasePlan:
    """Rewire the model for a case and prebuild matrices where possible."""
    view = case_model(model, cfg.states, two_outputs=cfg.output_mode == "two_class_softmax")
    if cfg.engine == "classic":
        if cfg.rules_enabled:
            return CasePlan(cfg=cfg, model=view)
        ids, w = flat_matrix(view)
        return CasePlan(cfg=cfg, model=view, flat_ids=ids, flat_w=w, matrices=defuzzify_weights(view))
    if cfg.rules_enabled:
        return CasePlan(cfg=cfg, model=view, plain=defuzzify_weights(view))
    return CasePlan(cfg=cfg, model=view, matrices=defuzzify_weights(view))


def one_shot_input_adjustment(u: np.ndarray, w: WeightMatrices, act: ActivationSpec) -> np.ndarray:
    """Fold input->input influence into the initial input vector once."""
    if not w.ii.any():
        return u
    du = u @ w.ii
    return _normalized_move(u, du, w.denom_inputs, act)


def run(
    model: FcmModel,
    inputs: Mapping[str, str],
    cfg: CaseConfig,
    *,
    plan: CasePlan | None = None,
    keep_trajectory: bool = True,
) -> RunRecord:
    """Simulate one record under a case setup until stable.

    The record is encoded, rules rewrite the case view when enabled, and
    the configured stepper iterates until the largest per-concept change
    drops below ``cfg.epsilon`` or ``cfg.max_iterations`` is reached.
    Non-convergence is recorded, not raised.  Identical arguments produce
    identical trajectories.
    """
    if plan is None:
        plan = prepare_case(model, cfg)
    elif (plan.cfg.engine, plan.cfg.states, plan.cfg.output_mode, plan.cfg.rules_enabled) != (
        cfg.engine,
        cfg.states,
        cfg.output_mode,
        cfg.rules_enabled,
    ):
        raise DimensionMismatchError(f"plan prepared for {plan.cfg.id!r} does not fit case {cfg.id!r}")
    view = plan.model
    crisp = encode_record(inputs, view.encoding_tables())

    if cfg.rules_enabled:
        work, log = apply_rules(view.rules, view, inputs)
        matrices = defuzzify_weights(work)
    else:
        work, log = view, FiredRuleLog()
        matrices = plan.matrices if plan.matrices is not None else defuzzify_weights(view)

    active = {c.id: c.active for c in work.concepts}
    act = cfg.activation

    u0 = np.array([crisp[cid] if active[cid] else 0.0 for cid in matrices.inputs])
    active_u = np.array([active[cid] for cid in matrices.inputs], dtype=bool)
    active_x = np.array([active[cid] for cid in matrices.states], dtype=bool)
    active_y = np.array([active[cid] for cid in matrices.outputs], dtype=bool)

    if cfg.engine == "classic":
        return _run_classic(plan, work, matrices, u0, active, log, keep_trajectory)

    if cfg.input_dynamics == "one_shot":
        u0 = np.where(active_u, one_shot_input_adjustment(u0, matrices, act), 0.0)

    cv = ConceptVector(
        k=0,
        u=u0,
        x=np.zeros(len(matrices.states)),
        y=np.zeros(len(matrices.outputs)),
        active_u=active_u,
        active_x=active_x,
        active_y=active_y,
    )
    trajectory = [cv]
    converged = False
    update_inputs = cfg.input_dynamics == "per_step"
    for _ in range(cfg.max_iterations):
        nxt, _delta = afcm_step(cv, matrices, act, update_inputs=update_inputs)
        change = float(np.max(np.abs(nxt.all_values() - cv.all_values())))
        if keep_trajectory or len(trajectory) == 1:
            trajectory.append(nxt)
        else:
            trajectory[-1] = nxt  # compressed mode keeps k=0 and the latest iterate
        cv = nxt
        if change < cfg.epsilon:
            converged = True
            break

    return RunRecord(
        case_id=cfg.id,
        inputs=matrices.inputs,
        states=matrices.states,
        outputs=matrices.outputs,
        trajectory=tuple(trajectory),
        converged=converged,
        iterations=cv.k,
        fired_rules=log,
        matrices=matrices,
    )


def _run_classic(plan, work, matrices, u0, active, log, keep_trajectory=True) -> RunRecord:
    cfg = plan.cfg
    if plan.flat_w is not None and not cfg.rules_enabled:
        ids, w_flat = plan.flat_ids, plan.flat_w
    else:
        ids, w_flat = flat_matrix(work)
    n_inputs = len(matrices.inputs)
    n_outputs = len(matrices.outputs)
    active_mask = np.array([active[cid] for cid in ids], dtype=bool)
    v = np.concatenate([u0, np.zeros(len(ids) - n_inputs)])

    def as_cv(k: int, vec: np.ndarray) -> ConceptVector:
        return ConceptVector(
            k=k,
            u=vec[:n_inputs],
            x=vec[n_inputs : len(ids) - n_outputs],
            y=vec[len(ids) - n_outputs :],
            active_u=active_mask[:n_inputs],
            active_x=active_mask[n_inputs : len(ids) - n_outputs],
            active_y=active_mask[len(ids) - n_outputs :],
        )

    trajectory = [as_cv(0, v)]
    converged = False
    k = 0
    for k in range(1, cfg.max_iterations + 1):
        nxt = np.where(active_mask, classic_step(v, w_flat, cfg.activation), 0.0)
        change = float(np.max(np.abs(nxt - v)))
        if keep_trajectory or len(trajectory) == 1:
            trajectory.append(as_cv(k, nxt))
        else:
            trajectory[-1] = as_cv(k, nxt)
        v = nxt
        if change < cfg.epsilon:
            converged = True
            break

    return RunRecord(
        case_id=cfg.id,
        inputs=matrices.inputs,
        states=matrices.states,
        outputs=matrices.outputs,
        trajectory=tuple(trajectory),
        converged=converged,
        iterations=k,
        fired_rules=log,
        matrices=matrices,
    )


# ---------------------------------------------------------------------------
# Decision layer


def classify(rr: RunRecord, cfg: CaseConfig) -> Decision:
    """Turn the final output values into a class and a probability score.

    Single output: the final value is normalized over the activation range
    and compared against the threshold (ties classify as Diseased — the
    sensitivity-first convention of a screening tool).  Two outputs: a
    softmax over (healthy, diseased) scores, argmax wins, ties go to
    Diseased.
    """
    y = rr.final.y
    raw = {cid: float(val) for cid, val in zip(rr.outputs, y)}
    if cfg.output_mode == "single":
        if len(rr.outputs) != 1:
            raise DimensionMismatchError(f"single-output decision over {len(rr.outputs)} outputs")
        rng = cfg.activation.range
        if rng is None:
            raise DimensionMismatchError("single-output classification needs a bounded activation")
        lo, hi = rng
        score = (float(y[0]) - lo) / (hi - lo)
        return Decision(class_="Diseased" if score >= cfg.threshold else "Healthy", score=score, raw_outputs=raw)

    if set(rr.outputs) != {HEALTHY_OUTPUT, DISEASED_OUTPUT}:
        raise DimensionMismatchError(f"two-class decision needs outputs {HEALTHY_OUTPUT}/{DISEASED_OUTPUT}, found {rr.outputs}")
    idx = {cid: i for i, cid in enumerate(rr.outputs)}
    probs = softmax(np.array([y[idx[HEALTHY_OUTPUT]], y[idx[DISEASED_OUTPUT]]]))
    score = float(probs[1])
    return Decision(class_="Diseased" if score >= probs[0] else "Healthy", score=score, raw_outputs=raw)


def contributions(rr: RunRecord, w: WeightMatrices | None = None) -> ContributionReport:
    """Per-source signed share of each output's final pre-activation update.

    Each direct contributor's share is its edge weight times its final
    value (gated for sign-routed edges), normalized by the output's total
    absolute incoming weight; the shares sum to the output's final raw
    update, which is what the decision rested on.
    """
    w = w if w is not None else rr.matrices
    final = rr.final
    entries: dict[str, tuple[ContributionEntry, ...]] = {}
    totals: dict[str, float] = {}
    for t, out_id in enumerate(w.outputs):
        denom = float(w.denom_outputs[t])
        rows: list[ContributionEntry] = []
        if denom > 0:
            for s, src in enumerate(w.inputs):
                weight = float(w.io[s, t])
                if weight != 0.0:
                    value = float(final.u[s])
                    rows.append(ContributionEntry(src, "input", weight, value, weight * value / denom))
            for s, src in enumerate(w.states):
                value = float(final.x[s])
                weight = float(w.so[s, t])
                if weight != 0.0:
                    rows.append(ContributionEntry(src, "state", weight, value, weight * value / denom))
                gate_pos = float(w.so_pos[s, t])
                if gate_pos != 0.0:
                    rows.append(ContributionEntry(src, "state", gate_pos, value, gate_pos * max(value, 0.0) / denom))
                gate_neg = float(w.so_neg[s, t])
                if gate_neg != 0.0:
                    rows.append(ContributionEntry(src, "state", gate_neg, value, gate_neg * max(-value, 0.0) / denom))
        entries[out_id] = tuple(rows)
        totals[out_id] = float(sum(r.contribution for r in rows))
    return ContributionReport(entries=entries, totals=totals)
