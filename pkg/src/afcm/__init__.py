"""State-space fuzzy cognitive map decision engine.

Library surface: model loading and validation, activation functions, the
classic and state-space steppers, the rule engine, the bundled coronary
artery disease model with its ten case setups, and the evaluation harness.
The HTTP service and CLI wrap these same entry points.
"""

from .activation import SIGMOID, SIGMOID_N_UNIT, TANH, ActivationSpec, SigmoidNParams, sigmoid, sigmoid_n, softmax, tanh_act
from .cad import CASE_IDS, all_case_configs, builtin_cad_model, case_config, fixture_csv, fixture_records
from .errors import (
    AfcmError,
    DatasetError,
    DimensionMismatchError,
    MissingAttributeError,
    ModelParseError,
    ModelValidationError,
    UnknownAttributeError,
    UnknownValueError,
)
from .evaluation import (
    CaseReport,
    ComparisonTable,
    ConfusionMatrix,
    Dataset,
    MetricsReport,
    compare_cases,
    confusion,
    evaluate_case,
    load_dataset,
    metrics,
)
from .fuzzy import OutputLabelScale, encode_record, evenly_spaced_encoding, label_output
from .inference import (
    CaseConfig,
    ConceptVector,
    Decision,
    RunRecord,
    UpdateDelta,
    afcm_step,
    classic_step,
    classify,
    contributions,
    prepare_case,
    run,
)
from .matrices import WeightMatrices, case_model, defuzzify_weights, expand_two_outputs, restrict_states
from .model import (
    ConceptSpec,
    Edge,
    FcmModel,
    ValidationReport,
    dumps_model,
    load_model,
    loads_model,
    model_from_dict,
    save_model,
    serialize_model,
    validate_model,
)
from .rules import FiredRuleLog, Rule, apply_rules, evaluate_condition, replay_log
from .weights import DEFAULT_SCALE, LinguisticWeight, resolve_weight

__version__ = "1.0.0"

__all__ = [
    "ActivationSpec",
    "AfcmError",
    "CASE_IDS",
    "CaseConfig",
    "CaseReport",
    "ComparisonTable",
    "ConceptSpec",
    "ConceptVector",
    "ConfusionMatrix",
    "Dataset",
    "DatasetError",
    "Decision",
    "DimensionMismatchError",
    "Edge",
    "FcmModel",
    "FiredRuleLog",
    "LinguisticWeight",
    "MetricsReport",
    "MissingAttributeError",
    "ModelParseError",
    "ModelValidationError",
    "OutputLabelScale",
    "Rule",
    "RunRecord",
    "SIGMOID",
    "SIGMOID_N_UNIT",
    "SigmoidNParams",
    "TANH",
    "UnknownAttributeError",
    "UnknownValueError",
    "UpdateDelta",
    "ValidationReport",
    "WeightMatrices",
    "afcm_step",
    "all_case_configs",
    "apply_rules",
    "builtin_cad_model",
    "case_config",
    "case_model",
    "classic_step",
    "classify",
    "compare_cases",
    "confusion",
    "contributions",
    "DEFAULT_SCALE",
    "defuzzify_weights",
    "dumps_model",
    "encode_record",
    "evaluate_case",
    "evaluate_condition",
    "evenly_spaced_encoding",
    "expand_two_outputs",
    "fixture_csv",
    "fixture_records",
    "label_output",
    "load_dataset",
    "load_model",
    "loads_model",
    "metrics",
    "model_from_dict",
    "prepare_case",
    "replay_log",
    "resolve_weight",
    "restrict_states",
    "run",
    "save_model",
    "serialize_model",
    "sigmoid",
    "sigmoid_n",
    "softmax",
    "tanh_act",
    "validate_model",
]
