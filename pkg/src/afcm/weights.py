"""Linguistic edge weights and their numeric resolution.

Experts author edge weights as one of five signed magnitude terms; a
configurable scale turns each term into a number.  Machine transformations
(rule scaling) may leave a plain number on an edge instead, so a weight is
either a linguistic term or a float in [-1, 1].
"""
from __future__ import annotations

import re
from typing import Literal, Mapping, Union

from pydantic import BaseModel, ConfigDict

MAGNITUDES: tuple[str, ...] = ("VW", "W", "M", "S", "VS")

DEFAULT_SCALE: dict[str, float] = {"VW": 0.1, "W": 0.3, "M": 0.5, "S": 0.7, "VS": 0.9}

_WEIGHT_RE = re.compile(r"^([+-]?)(VW|W|M|S|VS)$")


class LinguisticWeight(BaseModel):
    """A signed five-term weight such as "+M" or "-VS"."""

    model_config = ConfigDict(frozen=True)

    magnitude: Literal["VW", "W", "M", "S", "VS"]
    sign: Literal[1, -1] = 1

    def __str__(self) -> str:
        return self.magnitude if self.sign > 0 else f"-{self.magnitude}"


Weight = Union[LinguisticWeight, float]


def parse_weight(raw) -> Weight:
    """Accept "M", "+W", "-VS", a number, or an already-built weight."""
    if isinstance(raw, LinguisticWeight):
        return raw
    if isinstance(raw, bool):
        raise ValueError(f"not a weight: {raw!r}")
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, str):
        m = _WEIGHT_RE.match(raw.strip())
        if m is None:
            raise ValueError(f"unknown weight term {raw!r} (expected one of {MAGNITUDES} with optional sign)")
        sign = -1 if m.group(1) == "-" else 1
        return LinguisticWeight(magnitude=m.group(2), sign=sign)
    raise ValueError(f"not a weight: {raw!r}")


def format_weight(weight: Weight):
    """Inverse of parse_weight: a linguistic string or a plain number."""
    if isinstance(weight, LinguisticWeight):
        return str(weight)
    return weight


def resolve_weight(weight: Weight, scale: Mapping[str, float]) -> float:
    """Numeric value of a weight under the given magnitude scale."""
    if isinstance(weight, LinguisticWeight):
        return weight.sign * scale[weight.magnitude]
    return float(weight)


def clamp_weight(value: float) -> float:
    """Keep scaled weights inside the admissible [-1, 1] band."""
    return max(-1.0, min(1.0, value))
