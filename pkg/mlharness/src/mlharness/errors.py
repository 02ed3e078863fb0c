"""Harness error hierarchy. Everything user-facing derives from HarnessError."""


class HarnessError(Exception):
    """Base class for all harness failures."""


class SchemaError(HarnessError):
    """Input CSV does not match the feature table contract."""


class ConstantLabelsError(HarnessError):
    """Classification needs at least two distinct classes."""


class ClassTooSmallError(HarnessError):
    """Every class needs at least one row per fold."""


class ConstantTargetError(HarnessError):
    """Regression target has zero variance."""


class TooFewRowsError(HarnessError):
    """Not enough rows for the requested evaluation."""
