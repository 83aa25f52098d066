import io

import pytest

from afcm import builtin_cad_model, load_dataset
from afcm.cad import fixture_csv


@pytest.fixture(scope="session")
def cad_model():
    return builtin_cad_model()


@pytest.fixture(scope="session")
def benign_record(cad_model):
    """Every attribute at its floor value."""
    return {c.id: "no" for c in cad_model.inputs}


@pytest.fixture(scope="session")
def healthy_record(benign_record):
    """No findings, all performed tests normal."""
    rec = dict(benign_record)
    for attr in ("A22", "A24", "A26", "A28", "A30"):
        rec[attr] = "yes"
    return rec


@pytest.fixture(scope="session")
def sick_record(benign_record):
    """Typical angina, elderly male smoker with strongly abnormal tests."""
    rec = dict(benign_record)
    rec.update(
        {
            "A1": "yes",
            "A6": "yes",
            "A11": "yes",
            "A15": "yes",
            "A16": "yes",
            "A20": "yes",
            "A23": "yes",
            "A29": "abnormal",
            "A31": "definitely abnormal",
        }
    )
    return rec


@pytest.fixture(scope="session")
def fixture_dataset(cad_model):
    return load_dataset(io.StringIO(fixture_csv()), cad_model)
