"""The bundled coronary-artery-disease model, case setups, and fixture data.

The model ships 31 input concepts (presentation, demographics, history,
diagnostic tests), four state concepts they aggregate into, a single
output, gender-correction edges from the female concept onto the test
concepts, and six preprocessing rules.  Direct input->output weights not
fully specified by the authoring experts are flagged ``provenance:
"default"``; the model file carries the same flags.

The fixture dataset is synthetic: sixty records drawn by a fixed-seed
generator plus labels from a hand-written risk point count that is
independent of the inference engine, so evaluations against it are not
circular.  Regeneration from the same seed is byte-identical.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from .activation import SIGMOID, SIGMOID_N_UNIT, TANH
from .fuzzy import DEFAULT_LABEL_SCALE, evenly_spaced_encoding
from .inference import CaseConfig
from .model import ConceptSpec, Edge, FcmModel, ModelMeta
from .rules import (
    CountAtLeastPredicate,
    DeactivateConceptsAction,
    EdgeSelector,
    EqualsPredicate,
    InPredicate,
    RemoveEdgesAction,
    Rule,
    ScaleEdgesAction,
    ScaleEdgesWhereAction,
)

YES_NO = ("no", "yes")

# id, label, domain values (ordered by severity), state group (None = direct)
_INPUTS: tuple[tuple[str, str, tuple[str, ...], str | None], ...] = (
    ("A1", "typical angina pectoris", YES_NO, None),
    ("A2", "atypical angina pectoris", YES_NO, None),
    ("A3", "atypical thoracic pain", YES_NO, None),
    ("A4", "dyspnea on exertion", YES_NO, None),
    ("A5", "asymptomatic", YES_NO, None),
    ("A6", "gender - male", YES_NO, "A34"),
    ("A7", "gender - female", YES_NO, "A34"),
    ("A8", "age <40", YES_NO, "A34"),
    ("A9", "age [40-50]", YES_NO, "A34"),
    ("A10", "age [50-60]", YES_NO, "A34"),
    ("A11", "age >60", YES_NO, "A34"),
    ("A12", "known CAD", YES_NO, "A32"),
    ("A13", "previous stroke", YES_NO, "A32"),
    ("A14", "peripheral arterial disease", YES_NO, "A33"),
    ("A15", "smoking", ("no", "occasionally", "yes"), "A32"),
    ("A16", "arterial hypertension", YES_NO, "A32"),
    ("A17", "dyslipidemia", YES_NO, "A32"),
    ("A18", "obesity", ("no", "relatively", "yes"), "A32"),
    ("A19", "family history", YES_NO, "A32"),
    ("A20", "diabetes", YES_NO, "A33"),
    ("A21", "chronic kidney failure", YES_NO, "A33"),
    ("A22", "electrocardiogram normal", YES_NO, "A35"),
    ("A23", "electrocardiogram abnormal", YES_NO, "A35"),
    ("A24", "echocardiogram normal - doubtful", YES_NO, "A35"),
    ("A25", "echocardiogram abnormal", ("no", "little", "abnormal", "definitely abnormal"), "A35"),
    ("A26", "treadmill exercise test normal", YES_NO, "A35"),
    ("A27", "treadmill exercise test abnormal", ("no", "abnormal", "definitely abnormal"), "A35"),
    ("A28", "dynamic echocardiogram normal", YES_NO, "A35"),
    ("A29", "dynamic echocardiogram abnormal", ("no", "doubtful", "abnormal", "definitely abnormal"), "A35"),
    ("A30", "scintigraphy normal - doubtful", YES_NO, "A35"),
    (
        "A31",
        "scintigraphy abnormal",
        ("no", "little abnormal", "medium abnormal", "abnormal", "definitely abnormal"),
        "A35",
    ),
)

_STATES: tuple[tuple[str, str], ...] = (
    ("A32", "predisposing factors"),
    ("A33", "recurrent diseases"),
    ("A34", "demographic characteristics"),
    ("A35", "diagnostic tests"),
)

OUTPUT_ID = "Out"

# input -> state weights, one row per state
_STATE_WEIGHTS: dict[str, tuple[tuple[str, str], ...]] = {
    "A32": (("A12", "M"), ("A13", "M"), ("A15", "W"), ("A16", "M"), ("A17", "VW"), ("A18", "W"), ("A19", "VW")),
    "A33": (("A14", "M"), ("A20", "M"), ("A21", "W")),
    "A34": (("A6", "M"), ("A7", "-S"), ("A8", "-VS"), ("A9", "-W"), ("A10", "W"), ("A11", "S")),
    "A35": (
        ("A22", "-M"),
        ("A23", "M"),
        ("A24", "-W"),
        ("A25", "M"),
        ("A26", "-S"),
        ("A27", "W"),
        ("A28", "-W"),
        ("A29", "M"),
        ("A30", "-VS"),
        ("A31", "S"),
    ),
}

# gender-correction row: effect of the female concept on each test concept
_FEMALE_TEST_WEIGHTS: tuple[tuple[str, str], ...] = (
    ("A22", "W"),
    ("A23", "-W"),
    ("A24", "VW"),
    ("A25", "-VW"),
    ("A26", "W"),
    ("A27", "-W"),
    ("A28", "W"),
    ("A29", "-W"),
    ("A30", "W"),
    ("A31", "-W"),
)

# direct symptom -> output weights; A5 completes the partially specified block
_DIRECT_WEIGHTS: tuple[tuple[str, str, str | None], ...] = (
    ("A1", "VS", None),
    ("A2", "M", None),
    ("A3", "W", None),
    ("A4", "W", None),
    ("A5", "-S", "default"),
)

_STATE_OUTPUT_WEIGHTS: tuple[tuple[str, str], ...] = (("A32", "S"), ("A33", "VS"), ("A34", "S"), ("A35", "VS"))

ABNORMAL_SCINTI = ("little abnormal", "medium abnormal", "abnormal", "definitely abnormal")
NORMAL_TESTS = ("A22", "A24", "A26", "A28", "A30")
OTHER_ABNORMAL_TESTS = ("A23", "A25", "A27", "A29")


def _rules() -> tuple[Rule, ...]:
    return (
        Rule(
            id="R1",
            description="definitely abnormal scintigraphy carries extra evidence",
            condition=(EqualsPredicate(attribute="A31", value="definitely abnormal"),),
            actions=(ScaleEdgesAction(factor=1.5, selector=EdgeSelector(sources=("A31",))),),
        ),
        Rule(
            id="R2",
            description="agreeing normal ECG and normal scintigraphy reinforce each other",
            condition=(
                EqualsPredicate(attribute="A22", value="yes"),
                EqualsPredicate(attribute="A30", value="yes"),
            ),
            actions=(ScaleEdgesAction(factor=1.2, selector=EdgeSelector(sources=("A22", "A30"))),),
        ),
        Rule(
            id="R3",
            description="previous stroke voids the gender discrimination",
            condition=(EqualsPredicate(attribute="A13", value="yes"),),
            actions=(DeactivateConceptsAction(concepts=("A6", "A7")),),
        ),
        Rule(
            id="R4",
            description="known CAD negates the family-history influence",
            condition=(EqualsPredicate(attribute="A12", value="yes"),),
            actions=(RemoveEdgesAction(selector=EdgeSelector(sources=("A19",))),),
        ),
        Rule(
            id="R5",
            description="without diabetes, known CAD or stroke, normal test results weigh more",
            condition=(
                EqualsPredicate(attribute="A20", value="no"),
                EqualsPredicate(attribute="A12", value="no"),
                EqualsPredicate(attribute="A13", value="no"),
                CountAtLeastPredicate(n=1, attributes=NORMAL_TESTS, values=("yes",)),
            ),
            actions=(ScaleEdgesWhereAction(factor=1.2, sources=NORMAL_TESTS, value_in=("yes",)),),
        ),
        Rule(
            id="R6",
            description="asymptomatic despite abnormal scintigraphy plus another abnormal test",
            condition=(
                EqualsPredicate(attribute="A5", value="yes"),
                InPredicate(attribute="A31", values=ABNORMAL_SCINTI),
                CountAtLeastPredicate(n=1, attributes=OTHER_ABNORMAL_TESTS, values=("no",), negate=True),
            ),
            actions=(ScaleEdgesAction(factor=0.75, selector=EdgeSelector(sources=("A5",))),),
        ),
    )


def builtin_cad_model() -> FcmModel:
    """The bundled coronary-artery-disease map: 31 inputs, 4 states, 1 output."""
    concepts = [
        ConceptSpec(id=cid, label=label, kind="input", value_domain=evenly_spaced_encoding(values), group=group)
        for cid, label, values, group in _INPUTS
    ]
    concepts += [ConceptSpec(id=cid, label=label, kind="state") for cid, label in _STATES]
    concepts.append(ConceptSpec(id=OUTPUT_ID, label="disease probability", kind="output"))

    edges: list[Edge] = []
    for state_id, members in _STATE_WEIGHTS.items():
        edges += [Edge(source=src, target=state_id, weight=w) for src, w in members]
    edges += [Edge(source="A7", target=tgt, weight=w) for tgt, w in _FEMALE_TEST_WEIGHTS]
    edges += [Edge(source=src, target=OUTPUT_ID, weight=w, provenance=prov) for src, w, prov in _DIRECT_WEIGHTS]
    edges += [Edge(source=src, target=OUTPUT_ID, weight=w) for src, w in _STATE_OUTPUT_WEIGHTS]

    return FcmModel(
        concepts=tuple(concepts),
        edges=tuple(edges),
        rules=_rules(),
        labels=DEFAULT_LABEL_SCALE,
        meta=ModelMeta(
            name="cad-afcm",
            version="1.0",
            notes=(
                "gender-correction edges attach to A7 (female), not A6",
                "the diagnostic-tests state aggregates exactly A22-A31",
                "direct input->output weights the experts left unspecified carry provenance 'default'",
            ),
        ),
    )


# ---------------------------------------------------------------------------
# Case setups

TWO_STATES = ("A32", "A33")

_CASES: dict[str, CaseConfig] = {
    "Case1": CaseConfig(id="Case1", engine="classic", activation=SIGMOID, output_mode="single"),
    "Case2": CaseConfig(id="Case2", engine="classic", activation=SIGMOID, output_mode="two_class_softmax"),
    "Case3": CaseConfig(id="Case3", engine="afcm", states=TWO_STATES, activation=SIGMOID, output_mode="single"),
    "Case4": CaseConfig(id="Case4", engine="afcm", states=TWO_STATES, activation=SIGMOID_N_UNIT, output_mode="single"),
    "Case5": CaseConfig(
        id="Case5", engine="afcm", states=TWO_STATES, activation=SIGMOID_N_UNIT, output_mode="two_class_softmax"
    ),
    "Case6": CaseConfig(id="Case6", engine="afcm", states=TWO_STATES, activation=TANH, output_mode="single"),
    "Case7": CaseConfig(
        id="Case7", engine="afcm", rules_enabled=True, states=TWO_STATES, activation=SIGMOID_N_UNIT, output_mode="single"
    ),
    "Case8": CaseConfig(
        id="Case8",
        engine="afcm",
        rules_enabled=True,
        states=TWO_STATES,
        activation=SIGMOID_N_UNIT,
        output_mode="two_class_softmax",
    ),
    "Case9": CaseConfig(
        id="Case9",
        engine="afcm",
        rules_enabled=True,
        states=("A32", "A33", "A34"),
        activation=SIGMOID_N_UNIT,
        output_mode="single",
    ),
    "Case10": CaseConfig(
        id="Case10",
        engine="afcm",
        rules_enabled=True,
        states=("A32", "A33", "A34", "A35"),
        activation=SIGMOID_N_UNIT,
        output_mode="single",
    ),
}

CASE_IDS: tuple[str, ...] = tuple(_CASES)


def case_config(case_id: str) -> CaseConfig:
    try:
        return _CASES[case_id]
    except KeyError:
        raise KeyError(f"unknown case {case_id!r}; known cases: {', '.join(CASE_IDS)}") from None


def all_case_configs() -> tuple[CaseConfig, ...]:
    return tuple(_CASES.values())


# ---------------------------------------------------------------------------
# Fixture dataset

FIXTURE_SEED = 31337
FIXTURE_SIZE = 60

_ATTR_IDS = tuple(cid for cid, _, _, _ in _INPUTS)


def _pick(rng: np.random.RandomState, values: tuple[str, ...], probs) -> str:
    return values[int(rng.choice(len(values), p=probs))]


def _bern(rng: np.random.RandomState, p: float) -> str:
    return "yes" if rng.random_sample() < p else "no"


def _generate_record(rng: np.random.RandomState) -> dict[str, str]:
    # Latent severity drives both symptoms and test findings.
    s = rng.random_sample()
    rec: dict[str, str] = {}

    rec["A1"] = _bern(rng, 0.15 + 0.45 * s)
    rec["A2"] = _bern(rng, 0.25)
    rec["A3"] = _bern(rng, 0.20)
    rec["A4"] = _bern(rng, 0.10 + 0.25 * s)
    rec["A5"] = "yes" if all(rec[a] == "no" for a in ("A1", "A2", "A3", "A4")) else "no"

    male = rng.random_sample() < 0.85
    rec["A6"], rec["A7"] = ("yes", "no") if male else ("no", "yes")
    age = _pick(rng, ("A8", "A9", "A10", "A11"), [0.08, 0.17, 0.30, 0.45])
    for a in ("A8", "A9", "A10", "A11"):
        rec[a] = "yes" if a == age else "no"

    rec["A12"] = _bern(rng, 0.15 + 0.25 * s)
    rec["A13"] = _bern(rng, 0.08)
    rec["A14"] = _bern(rng, 0.10)
    rec["A15"] = _pick(rng, ("no", "occasionally", "yes"), [0.50, 0.20, 0.30])
    rec["A16"] = _bern(rng, 0.50)
    rec["A17"] = _bern(rng, 0.50)
    rec["A18"] = _pick(rng, ("no", "relatively", "yes"), [0.50, 0.25, 0.25])
    rec["A19"] = _bern(rng, 0.30)
    rec["A20"] = _bern(rng, 0.25)
    rec["A21"] = _bern(rng, 0.07)

    def test_pair(normal_attr: str, abnormal_attr: str, levels: tuple[str, ...], p_done: float) -> None:
        p_abn = min(0.9, 0.10 + 0.65 * s)
        if rng.random_sample() < p_done:
            if rng.random_sample() < p_abn:
                rec[normal_attr] = "no"
                grades = levels[1:]
                weights = np.array([1.0 + 2.0 * s * i for i in range(len(grades))])
                rec[abnormal_attr] = _pick(rng, grades, weights / weights.sum())
            else:
                rec[normal_attr] = "yes"
                rec[abnormal_attr] = "no"
        else:
            rec[normal_attr] = "no"
            rec[abnormal_attr] = "no"

    test_pair("A22", "A23", ("no", "yes"), 0.95)
    test_pair("A24", "A25", ("no", "little", "abnormal", "definitely abnormal"), 0.85)
    test_pair("A26", "A27", ("no", "abnormal", "definitely abnormal"), 0.70)
    test_pair("A28", "A29", ("no", "doubtful", "abnormal", "definitely abnormal"), 0.60)
    test_pair("A30", "A31", ("no", "little abnormal", "medium abnormal", "abnormal", "definitely abnormal"), 0.95)
    return rec


def fixture_label(rec: dict[str, str]) -> str:
    """Hand-written risk point count; deliberately independent of the engine."""
    pts = 0.0
    pts += {"yes": 2.0}.get(rec["A1"], 0.0)
    pts += {"yes": 1.0}.get(rec["A2"], 0.0)
    pts += {"yes": 1.0}.get(rec["A4"], 0.0)
    pts += {"yes": 0.5}.get(rec["A6"], 0.0)
    pts += {"yes": 1.0}.get(rec["A10"], 0.0)
    pts += {"yes": 1.5}.get(rec["A11"], 0.0)
    pts += {"yes": 2.0}.get(rec["A12"], 0.0)
    pts += {"yes": 1.0}.get(rec["A13"], 0.0)
    pts += {"yes": 1.0}.get(rec["A14"], 0.0)
    pts += {"occasionally": 0.5, "yes": 1.0}.get(rec["A15"], 0.0)
    pts += {"yes": 1.0}.get(rec["A16"], 0.0)
    pts += {"yes": 1.0}.get(rec["A17"], 0.0)
    pts += {"relatively": 0.5, "yes": 1.0}.get(rec["A18"], 0.0)
    pts += {"yes": 1.0}.get(rec["A19"], 0.0)
    pts += {"yes": 2.0}.get(rec["A20"], 0.0)
    pts += {"yes": 1.0}.get(rec["A21"], 0.0)
    pts += {"yes": 2.0}.get(rec["A23"], 0.0)
    pts += {"little": 1.0, "abnormal": 2.0, "definitely abnormal": 3.0}.get(rec["A25"], 0.0)
    pts += {"abnormal": 2.0, "definitely abnormal": 3.0}.get(rec["A27"], 0.0)
    pts += {"doubtful": 1.0, "abnormal": 2.0, "definitely abnormal": 3.0}.get(rec["A29"], 0.0)
    pts += {"little abnormal": 1.0, "medium abnormal": 2.0, "abnormal": 3.0, "definitely abnormal": 4.0}.get(
        rec["A31"], 0.0
    )
    for normal in NORMAL_TESTS:
        if rec[normal] == "yes":
            pts -= 1.0
    return "Diseased" if pts >= 8.0 else "Healthy"


def fixture_records() -> list[tuple[dict[str, str], str]]:
    """The sixty synthetic records plus labels, regenerated deterministically."""
    rng = np.random.RandomState(FIXTURE_SEED)
    out = []
    for _ in range(FIXTURE_SIZE):
        rec = _generate_record(rng)
        out.append((rec, fixture_label(rec)))
    return out


def fixture_csv() -> str:
    """The fixture dataset in its shipped CSV form."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(_ATTR_IDS) + ["label"])
    for rec, label in fixture_records():
        writer.writerow([rec[a] for a in _ATTR_IDS] + [label])
    return buf.getvalue()
