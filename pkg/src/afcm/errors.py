"""Exception hierarchy shared across the package."""
from __future__ import annotations


class AfcmError(Exception):
    """Base class for all package errors."""


class ModelParseError(AfcmError):
    """The model document is structurally malformed (bad JSON, bad shape)."""


class ModelValidationError(AfcmError):
    """The model document parsed but violates a model invariant."""

    def __init__(self, report):
        self.report = report
        lines = "; ".join(v.message for v in report.violations)
        super().__init__(f"invalid model: {lines}")


class UnknownAttributeError(AfcmError):
    """A record names an attribute the model does not declare."""

    def __init__(self, attribute: str):
        self.attribute = attribute
        super().__init__(f"unknown attribute {attribute!r}")


class MissingAttributeError(AfcmError):
    """A record omits an attribute the model requires."""

    def __init__(self, attribute: str):
        self.attribute = attribute
        super().__init__(f"missing value for attribute {attribute!r}")


class UnknownValueError(AfcmError):
    """A record carries a value outside the attribute's declared domain."""

    def __init__(self, attribute: str, value: str):
        self.attribute = attribute
        self.value = value
        super().__init__(f"attribute {attribute!r} has no value {value!r} in its domain")


class DimensionMismatchError(AfcmError):
    """Vector or matrix shapes disagree with the model layout."""


class DatasetError(AfcmError):
    """A dataset file cannot be used: bad header, bad row, or empty."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message if row is None else f"row {row}: {message}")
