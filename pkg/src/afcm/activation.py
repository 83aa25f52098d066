"""Normalization and activation functions applied to concept values.

All four activations used across the bundled experiment setups live here:
the classic logistic sigmoid, its generalized form with configurable
asymptotes and slope, the hyperbolic tangent, and the identity (useful for
hand-checkable tests).  A shift-stable softmax performs the two-class
scoring.
"""
from __future__ import annotations

from typing import Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

ArrayLike = Union[float, np.ndarray]


def sigmoid(x: ArrayLike) -> ArrayLike:
    """Logistic function 1 / (1 + e^-x), computed without overflow."""
    arr = np.asarray(x, dtype=float)
    z = np.exp(-np.abs(arr))
    out = np.where(arr >= 0.0, 1.0 / (1.0 + z), z / (1.0 + z))
    return float(out) if arr.ndim == 0 else out


class SigmoidNParams(BaseModel):
    """Parameters of the generalized sigmoid: asymptotes m < M, slope r, center t0."""

    model_config = ConfigDict(frozen=True)

    m: float
    M: float
    r: float = 1.0
    t0: float = 0.0

    @model_validator(mode="after")
    def _check(self) -> "SigmoidNParams":
        if not self.M > self.m:
            raise ValueError("upper asymptote M must exceed lower asymptote m")
        if not self.r > 0:
            raise ValueError("slope r must be positive")
        return self


def sigmoid_n(x: ArrayLike, params: SigmoidNParams) -> ArrayLike:
    """Generalized sigmoid m + (M - m) / (1 + e^(-r (x - t0)))."""
    return params.m + (params.M - params.m) * sigmoid(params.r * (np.asarray(x, dtype=float) - params.t0))


def tanh_act(x: ArrayLike) -> ArrayLike:
    """Hyperbolic tangent activation, range (-1, 1)."""
    out = np.tanh(np.asarray(x, dtype=float))
    return float(out) if out.ndim == 0 else out


def identity(x: ArrayLike) -> ArrayLike:
    arr = np.asarray(x, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


def softmax(scores) -> np.ndarray:
    """Probability vector over scores, computed with max-subtraction for stability.

    Raises ValueError on an empty vector.
    """
    arr = np.asarray(scores, dtype=float)
    if arr.size == 0:
        raise ValueError("softmax of an empty vector")
    shifted = arr - arr.max()
    e = np.exp(shifted)
    return e / e.sum()


ActivationKind = Literal["sigmoid", "sigmoid_n", "tanh", "identity"]


class ActivationSpec(BaseModel):
    """An activation choice plus its output range.

    ``range`` is (0, 1) for sigmoid, (m, M) for the generalized sigmoid,
    (-1, 1) for tanh, and None for identity (unbounded).
    """

    model_config = ConfigDict(frozen=True)

    kind: ActivationKind
    params: SigmoidNParams | None = None

    @model_validator(mode="after")
    def _check(self) -> "ActivationSpec":
        if self.kind == "sigmoid_n" and self.params is None:
            raise ValueError("sigmoid_n requires params")
        if self.kind != "sigmoid_n" and self.params is not None:
            raise ValueError(f"{self.kind} takes no params")
        return self

    @property
    def range(self) -> tuple[float, float] | None:
        if self.kind == "sigmoid":
            return (0.0, 1.0)
        if self.kind == "sigmoid_n":
            assert self.params is not None
            return (self.params.m, self.params.M)
        if self.kind == "tanh":
            return (-1.0, 1.0)
        return None

    def apply(self, x: ArrayLike) -> ArrayLike:
        if self.kind == "sigmoid":
            return sigmoid(x)
        if self.kind == "sigmoid_n":
            assert self.params is not None
            return sigmoid_n(x, self.params)
        if self.kind == "tanh":
            return tanh_act(x)
        return identity(x)


SIGMOID = ActivationSpec(kind="sigmoid")
TANH = ActivationSpec(kind="tanh")
IDENTITY = ActivationSpec(kind="identity")
# Generalized sigmoid with the symmetric unit band used by the bundled models.
SIGMOID_N_UNIT = ActivationSpec(kind="sigmoid_n", params=SigmoidNParams(m=-1.0, M=1.0, r=1.0, t0=0.0))
