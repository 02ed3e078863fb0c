"""Exception types shared across the toolkit.

Every error raised by the library derives from ToolError so CLI code can
separate our diagnostics from genuine bugs.
"""

from __future__ import annotations


class ToolError(Exception):
    """Base class for all toolkit errors."""


class ParseError(ToolError):
    """Base class for DIMACS parsing failures."""


class MissingHeaderError(ParseError):
    """No 'p cnf <vars> <clauses>' header before the first clause."""


class HeaderMismatchError(ParseError):
    """Declared clause count differs from the actual one (strict mode)."""


class LiteralOutOfRangeError(ParseError):
    """A literal references a variable index above the header count."""


class ZeroWidthClauseError(ParseError):
    """A clause terminated with no literals."""


class EmptyFormulaError(ToolError):
    """Operation needs at least one variable."""


class EmptyGraphError(ToolError):
    """Operation needs a graph with at least one edge."""


class TooLargeError(ToolError):
    """Exhaustive oracle asked to run above its vertex-count ceiling."""


class SingleVertexError(ToolError):
    """Edge expansion needs at least two vertices."""


class EmptySetError(ToolError):
    """Subset expansion got an empty vertex set."""


class FullSetError(ToolError):
    """Subset expansion got the whole vertex set (no cut exists)."""


class TooFewClausesError(ToolError):
    """Mergeability needs at least two clauses."""


class BadParamsError(ToolError):
    """Generator or construction parameters are out of their valid range."""


class InfeasibleBudgetError(BadParamsError):
    """Bridge clauses alone exceed the requested clause budget."""


class DegreeTooHighError(BadParamsError):
    """Parity encoding refuses vertices of degree above 8."""


class DegenerateFitError(ToolError):
    """A regression fit was requested on fewer than 3 points."""
