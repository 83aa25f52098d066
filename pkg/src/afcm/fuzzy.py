"""Crisp encoding of raw attribute values and verbal labelling of scores.

Raw patient attributes arrive as strings ("yes", "occasionally",
"definitely abnormal", ...).  Each input concept declares an ordered
value domain mapping those strings onto [0, 1]; multi-level domains are
evenly spaced by convention.  On the way out, a probability score maps
back to a verbal severity label through an ordered band scale.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from pydantic import BaseModel, ConfigDict, field_validator

from .errors import MissingAttributeError, UnknownAttributeError, UnknownValueError

# Ordered raw-value -> crisp mapping for one attribute.
EncodingTable = dict[str, float]


def evenly_spaced_encoding(values: Sequence[str]) -> EncodingTable:
    """Spread ordered domain values evenly over [0, 1].

    Two levels land on 0 and 1, three on 0/0.5/1, five on quarter steps.
    """
    if len(values) < 2:
        raise ValueError("a value domain needs at least two levels")
    n = len(values) - 1
    return {v: i / n for i, v in enumerate(values)}


def encode_value(attribute: str, value: str, table: Mapping[str, float]) -> float:
    if value not in table:
        raise UnknownValueError(attribute, value)
    return table[value]


def encode_record(
    record: Mapping[str, str],
    tables: Mapping[str, Mapping[str, float]],
) -> dict[str, float]:
    """Encode a raw record into crisp values, one per declared attribute.

    Every declared attribute must be present and every value must be in
    its domain; unknown attribute names are rejected rather than ignored.
    """
    for attr in record:
        if attr not in tables:
            raise UnknownAttributeError(attr)
    crisp: dict[str, float] = {}
    for attr, table in tables.items():
        if attr not in record:
            raise MissingAttributeError(attr)
        crisp[attr] = encode_value(attr, record[attr], table)
    return crisp


class LabelBand(BaseModel):
    """One band of the output label scale: scores up to ``upto`` inclusive."""

    model_config = ConfigDict(frozen=True)

    upto: float
    label: str


class OutputLabelScale(BaseModel):
    """Ordered verbal bands covering [0, 1]; the final bound must be 1."""

    model_config = ConfigDict(frozen=True)

    bands: tuple[LabelBand, ...]

    @field_validator("bands")
    @classmethod
    def _check(cls, bands: tuple[LabelBand, ...]) -> tuple[LabelBand, ...]:
        if not bands:
            raise ValueError("label scale needs at least one band")
        bounds = [b.upto for b in bands]
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ValueError("label bounds must be strictly increasing")
        if bounds[-1] != 1.0:
            raise ValueError("final label bound must be 1.0")
        return bands

    def label_for(self, score: float) -> str:
        """Label of the first band whose upper bound >= score (bounds inclusive)."""
        if not 0.0 <= score <= 1.0:
            raise ValueError(f"score {score} outside [0, 1]")
        for band in self.bands:
            if score <= band.upto:
                return band.label
        return self.bands[-1].label


def label_output(score: float, scale: OutputLabelScale) -> str:
    return scale.label_for(score)


DEFAULT_LABEL_SCALE = OutputLabelScale(
    bands=(
        LabelBand(upto=0.2, label="Normal"),
        LabelBand(upto=0.4, label="Doubtful"),
        LabelBand(upto=0.6, label="Little Abnormal"),
        LabelBand(upto=0.8, label="Abnormal"),
        LabelBand(upto=1.0, label="Definitely Abnormal"),
    )
)
