"""Clause-pair merge scores.

A pair of clauses is resolvable when exactly one literal pair opposes
(x in one clause, -x in the other). For such pairs the merge count is the
number of shared literals (same sign); two per-pair scores normalize that
count by clause sizes:

    mu1 = shared / (len(c1) + len(c2) - 2)
    mu2 = shared / (|set(c1) | set(c2)| - 2)

Formula-level totals are reported both against the resolvable-pair count
r(F) and against all m*(m-1)/2 clause pairs (raw clause list, duplicates
included). Pairs where a denominator hits zero (two unit clauses on the
same variable) contribute zero and are tallied separately.

Sums use math.fsum over a sorted pair order, so results do not depend on
enumeration order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cnf import Clause, Cnf
from .errors import TooFewClausesError
from .hcs import HcsTree


def resolvable(c1: Clause, c2: Clause) -> bool:
    """True when exactly one literal of c1 appears negated in c2."""
    s2 = set(c2)
    return sum(1 for lit in c1 if -lit in s2) == 1


@dataclass(frozen=True)
class MergeReport:
    num_clauses: int
    resolvable_pairs: int
    merge_literal_total: int
    degenerate_pairs: int
    mu1_norm_r: float
    mu2_norm_r: float
    mu1_norm_all: float
    mu2_norm_all: float


def _candidate_pairs(clauses: list[Clause]) -> list[tuple[int, int]]:
    """Sorted clause-index pairs sharing at least one variable."""
    by_var: dict[int, list[int]] = {}
    for idx, clause in enumerate(clauses):
        for var in {abs(lit) for lit in clause}:
            by_var.setdefault(var, []).append(idx)
    pairs: set[tuple[int, int]] = set()
    for indices in by_var.values():
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                pairs.add((indices[a], indices[b]))
    return sorted(pairs)


def _score_clauses(clauses: list[Clause]) -> MergeReport:
    m = len(clauses)
    if m < 2:
        raise TooFewClausesError("merge scores need at least two clauses")
    sets = [set(c) for c in clauses]
    r = 0
    shared_total = 0
    degenerate = 0
    mu1_terms: list[float] = []
    mu2_terms: list[float] = []
    for i, j in _candidate_pairs(clauses):
        s1, s2 = sets[i], sets[j]
        if sum(1 for lit in clauses[i] if -lit in s2) != 1:
            continue
        r += 1
        shared = len(s1 & s2)
        shared_total += shared
        den1 = len(clauses[i]) + len(clauses[j]) - 2
        den2 = len(s1 | s2) - 2
        if den1 == 0 or den2 == 0:
            degenerate += 1
            continue
        mu1_terms.append(shared / den1)
        mu2_terms.append(shared / den2)
    mu1 = math.fsum(mu1_terms)
    mu2 = math.fsum(mu2_terms)
    all_pairs = m * (m - 1) // 2
    return MergeReport(
        num_clauses=m,
        resolvable_pairs=r,
        merge_literal_total=shared_total,
        degenerate_pairs=degenerate,
        mu1_norm_r=mu1 / r if r else 0.0,
        mu2_norm_r=mu2 / r if r else 0.0,
        mu1_norm_all=mu1 / all_pairs,
        mu2_norm_all=mu2 / all_pairs,
    )


def merge_scores(cnf: Cnf) -> MergeReport:
    return _score_clauses(list(cnf.clauses))


def clause_containment(tree: HcsTree, cnf: Cnf) -> list[list[int]]:
    """Per-node lists of clause indices fully contained in the node.

    A clause sits in every node on the root-to-LCA path of its variables'
    leaves, so each clause is located once and appended along that path
    instead of testing containment node by node.
    """
    leaf_of = tree.leaf_of()
    contained: list[list[int]] = [[] for _ in tree.nodes]
    for idx, clause in enumerate(cnf.clauses):
        holders = {leaf_of[abs(lit) - 1] for lit in clause}
        while len(holders) > 1:
            deepest = max(holders, key=lambda h: tree.nodes[h].depth)
            holders.remove(deepest)
            parent = tree.nodes[deepest].parent
            assert parent is not None
            holders.add(parent)
        node = holders.pop()
        while node is not None:
            contained[node].append(idx)
            node = tree.nodes[node].parent
    return contained


@dataclass(frozen=True)
class LevelMergeability:
    value: float  # mean mu1_norm_all over nodes at the depth
    present: bool
    skipped_nodes: int  # nodes with fewer than two contained clauses


def level_mergeability(cnf: Cnf, tree: HcsTree) -> dict[int, LevelMergeability]:
    """Mean mu1_norm_all per tree depth; nodes without two clauses count 0."""
    contained = clause_containment(tree, cnf)
    clauses = list(cnf.clauses)
    out: dict[int, LevelMergeability] = {}
    for depth in range(1, tree.depth() + 1):
        nodes = tree.nodes_at_depth(depth)
        values: list[float] = []
        skipped = 0
        for node in nodes:
            idxs = contained[node.id]
            if len(idxs) < 2:
                skipped += 1
                values.append(0.0)
                continue
            values.append(_score_clauses([clauses[i] for i in idxs]).mu1_norm_all)
        out[depth] = LevelMergeability(
            value=math.fsum(values) / len(values),
            present=True,
            skipped_nodes=skipped,
        )
    return out


def community_merge_scores(
    cnf: Cnf, tree: HcsTree, depth: int
) -> LevelMergeability:
    """Mean merge score over communities at one depth; absent depth -> 0."""
    levels = level_mergeability(cnf, tree)
    return levels.get(depth, LevelMergeability(0.0, False, 0))
