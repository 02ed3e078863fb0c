"""CNF formulas: DIMACS parsing, rendering, width reduction, base statistics.

Clauses are tuples of nonzero ints (sign = polarity, magnitude = variable
index, variables numbered 1..num_vars). Duplicate literals inside a clause are
removed at parse time; duplicate clauses and tautological clauses are kept,
the latter flagged by index in Cnf.tautologies.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .errors import (
    EmptyFormulaError,
    HeaderMismatchError,
    LiteralOutOfRangeError,
    MissingHeaderError,
    ParseError,
    ZeroWidthClauseError,
)

Clause = tuple[int, ...]


@dataclass
class Cnf:
    """A CNF formula over variables 1..num_vars.

    origin records provenance: "parsed", "generated", or "constructed".
    """

    num_vars: int
    clauses: list[Clause]
    origin: str = "parsed"
    tautologies: tuple[int, ...] = field(default=())

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def distinct_clause_count(self) -> int:
        """Number of distinct clauses, comparing literal sets."""
        return len({frozenset(c) for c in self.clauses})


@dataclass(frozen=True)
class BaseFeatures:
    num_vars: int
    num_clauses: int  # distinct clause count
    cvr: float
    dv_mean: float
    dv_variance: float


def _normalize_clause(literals: list[int]) -> tuple[Clause, bool]:
    """Drop duplicate literals (keeping first occurrence) and detect tautology."""
    seen: set[int] = set()
    out: list[int] = []
    for lit in literals:
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    tautological = any(-lit in seen for lit in out)
    return tuple(out), tautological


def parse_dimacs(text: str | bytes, strict: bool = False) -> Cnf:
    """Parse a DIMACS CNF document.

    Lines starting with 'c' or '%' are comments. The 'p cnf <nv> <nc>' header
    must precede all clauses. Clauses are zero-terminated and may span lines.

    Lenient mode (default) tolerates a header clause count that disagrees with
    the actual count, a missing terminator on the final clause, and the common
    benchmark trailer (a bare '0' line after all declared clauses). Strict
    mode raises HeaderMismatchError on a count disagreement.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    num_vars = -1
    declared_clauses = -1
    clauses: list[Clause] = []
    tautologies: list[int] = []
    pending: list[int] = []

    def flush() -> None:
        clause, taut = _normalize_clause(pending)
        if taut:
            tautologies.append(len(clauses))
        clauses.append(clause)
        pending.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if num_vars >= 0:
                raise ParseError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MissingHeaderError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise MissingHeaderError(f"line {lineno}: non-numeric header counts")
            if num_vars < 0 or declared_clauses < 0:
                raise MissingHeaderError(f"line {lineno}: negative header counts")
            continue
        if num_vars < 0:
            raise MissingHeaderError(f"line {lineno}: clause data before 'p cnf' header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"line {lineno}: bad token {token!r}")
            if lit == 0:
                if not pending:
                    # Benchmark files often close with a stray '0' trailer once
                    # all declared clauses have been read; accept that in
                    # lenient mode, reject genuine empty clauses everywhere.
                    if not strict and declared_clauses >= 0 and len(clauses) >= declared_clauses:
                        continue
                    raise ZeroWidthClauseError(f"line {lineno}: empty clause")
                flush()
            else:
                if abs(lit) > num_vars:
                    raise LiteralOutOfRangeError(
                        f"line {lineno}: literal {lit} exceeds {num_vars} variables"
                    )
                pending.append(lit)

    if num_vars < 0:
        raise MissingHeaderError("no 'p cnf' header found")
    if pending:
        flush()
    if strict and len(clauses) != declared_clauses:
        raise HeaderMismatchError(
            f"header declares {declared_clauses} clauses, found {len(clauses)}"
        )
    return Cnf(num_vars=num_vars, clauses=clauses, origin="parsed",
               tautologies=tuple(tautologies))


def render_dimacs(cnf: Cnf, comments: tuple[str, ...] = ()) -> str:
    """Serialize to DIMACS text; parse_dimacs(render_dimacs(f)) reproduces f."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {cnf.num_vars} {cnf.num_clauses}")
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def reduce_width(cnf: Cnf, max_width: int) -> Cnf:
    """Split clauses wider than max_width into equisatisfiable chains.

    A clause of width w becomes ceil((w-2)/(max_width-2)) clauses linked by
    fresh auxiliary variables appended after num_vars. Formulas already within
    the bound come back unchanged (same object contents, new Cnf).
    """
    if max_width < 3:
        raise ValueError("max_width must be at least 3")
    out: list[Clause] = []
    taut: list[int] = []
    next_var = cnf.num_vars
    taut_in = set(cnf.tautologies)
    for idx, clause in enumerate(cnf.clauses):
        if len(clause) <= max_width:
            if idx in taut_in:
                taut.append(len(out))
            out.append(clause)
            continue
        lits = list(clause)
        # head takes max_width-1 literals, each middle link consumes
        # max_width-2, the tail takes whatever remains
        next_var += 1
        out.append(tuple(lits[: max_width - 1]) + (next_var,))
        pos = max_width - 1
        while len(lits) - pos > max_width - 1:
            link = next_var
            next_var += 1
            out.append((-link,) + tuple(lits[pos : pos + max_width - 2]) + (next_var,))
            pos += max_width - 2
        out.append((-next_var,) + tuple(lits[pos:]))
    return Cnf(num_vars=next_var, clauses=out, origin=cnf.origin, tautologies=tuple(taut))


def occurrence_counts(cnf: Cnf) -> list[int]:
    """Literal occurrences per variable (index 0 = variable 1), zeros included."""
    counts = [0] * cnf.num_vars
    for clause in cnf.clauses:
        for lit in clause:
            counts[abs(lit) - 1] += 1
    return counts


def base_features(cnf: Cnf) -> BaseFeatures:
    """numVars, distinct numClauses, CVR, and occurrence mean/variance.

    The variance is the population variance (divide by numVars) over all
    variables including ones that never occur.
    """
    if cnf.num_vars == 0:
        raise EmptyFormulaError("formula has no variables")
    counts = occurrence_counts(cnf)
    distinct = cnf.distinct_clause_count()
    return BaseFeatures(
        num_vars=cnf.num_vars,
        num_clauses=distinct,
        cvr=distinct / cnf.num_vars,
        dv_mean=sum(counts) / cnf.num_vars,
        dv_variance=statistics.pvariance(counts),
    )
