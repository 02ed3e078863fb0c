"""Resolvability and merge scores, whole-formula and per-community."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcskit.cnf import Cnf
from hcskit.errors import TooFewClausesError
from hcskit.hcs import decompose
from hcskit.mergeability import (
    LevelMergeability,
    clause_containment,
    community_merge_scores,
    level_mergeability,
    merge_scores,
    resolvable,
)
from hcskit.vig import build_vig
from oracles import random_graph_with_edges


def naive_merge_scores(clauses):
    """All-pairs double loop straight off the definitions (oracle route)."""
    m = len(clauses)
    r = 0
    mu1_terms = []
    mu2_terms = []
    degenerate = 0
    for i, j in itertools.combinations(range(m), 2):
        s1, s2 = set(clauses[i]), set(clauses[j])
        opposing = sum(1 for lit in s1 if -lit in s2)
        if opposing != 1:
            continue
        r += 1
        overlap = len(s1 & s2)
        den1 = len(s1) + len(s2) - 2
        den2 = len(s1 | s2) - 2
        if den1 == 0 or den2 == 0:
            degenerate += 1
            continue
        mu1_terms.append(overlap / den1)
        mu2_terms.append(overlap / den2)
    total = m * (m - 1) // 2
    return {
        "r": r,
        "degenerate": degenerate,
        "mu1_norm_r": math.fsum(mu1_terms) / r if r else 0.0,
        "mu2_norm_r": math.fsum(mu2_terms) / r if r else 0.0,
        "mu1_norm_all": math.fsum(mu1_terms) / total,
        "mu2_norm_all": math.fsum(mu2_terms) / total,
    }


def test_resolvable_definition():
    assert resolvable((1, 2), (-1, 2))
    assert not resolvable((1, 2), (-1, -2))  # two opposing pairs
    assert not resolvable((1, 2), (3, 4))  # none


def test_resolvable_is_symmetric_on_normalized_clauses():
    pairs = [((1, 2, 3), (-1, 2)), ((1,), (-1,)), ((1, 2), (2, 3))]
    for c1, c2 in pairs:
        assert resolvable(c1, c2) == resolvable(c2, c1)


def test_merge_scores_shared_literal_pair():
    report = merge_scores(Cnf(2, [(1, 2), (-1, 2)]))
    assert report.resolvable_pairs == 1
    assert report.merge_literal_total == 1
    assert report.mu1_norm_all == pytest.approx(0.5, abs=1e-15)
    assert report.mu2_norm_all == pytest.approx(1.0, abs=1e-15)
    assert report.degenerate_pairs == 0


def test_merge_scores_unit_pair_degenerate():
    report = merge_scores(Cnf(1, [(1,), (-1,)]))
    assert report.resolvable_pairs == 1
    assert report.degenerate_pairs == 1
    assert report.merge_literal_total == 0
    assert report.mu1_norm_r == 0.0
    assert report.mu2_norm_r == 0.0
    assert report.mu1_norm_all == 0.0
    assert report.mu2_norm_all == 0.0


def test_merge_scores_width_three_pair():
    # c1 = x+y+a, c2 = -x+y+b: overlap 1, mu1 = 1/4, mu2 = 1/3
    report = merge_scores(Cnf(4, [(1, 2, 3), (-1, 2, 4)]))
    assert report.mu1_norm_all == pytest.approx(1 / 4, abs=1e-15)
    assert report.mu2_norm_all == pytest.approx(1 / 3, abs=1e-15)
    assert report.mu1_norm_r == pytest.approx(1 / 4, abs=1e-15)
    assert report.mu2_norm_r == pytest.approx(1 / 3, abs=1e-15)


def test_merge_scores_needs_two_clauses():
    with pytest.raises(TooFewClausesError):
        merge_scores(Cnf(2, [(1, 2)]))


def test_merge_scores_counts_duplicate_clauses():
    # raw clause list: 3 clauses, all_pairs = 3 even with a duplicate
    report = merge_scores(Cnf(2, [(1, 2), (1, 2), (-1, 2)]))
    assert report.num_clauses == 3
    assert report.resolvable_pairs == 2
    assert report.mu1_norm_all == pytest.approx((0.5 + 0.5) / 3, abs=1e-15)


@st.composite
def clause_lists(draw):
    num_vars = draw(st.integers(min_value=1, max_value=8))
    m = draw(st.integers(min_value=2, max_value=12))
    clauses = []
    for _ in range(m):
        width = draw(st.integers(min_value=1, max_value=min(4, num_vars)))
        variables = draw(
            st.lists(
                st.integers(1, num_vars), min_size=width, max_size=width, unique=True
            )
        )
        signs = draw(st.lists(st.booleans(), min_size=width, max_size=width))
        clauses.append(tuple(v if s else -v for v, s in zip(variables, signs)))
    return Cnf(num_vars=num_vars, clauses=clauses, origin="constructed")


@settings(max_examples=400, deadline=None)
@given(clause_lists())
def test_merge_scores_match_naive_oracle(cnf):
    got = merge_scores(cnf)
    want = naive_merge_scores(list(cnf.clauses))
    assert got.resolvable_pairs == want["r"]
    assert got.degenerate_pairs == want["degenerate"]
    assert got.mu1_norm_r == pytest.approx(want["mu1_norm_r"], abs=1e-13)
    assert got.mu2_norm_r == pytest.approx(want["mu2_norm_r"], abs=1e-13)
    assert got.mu1_norm_all == pytest.approx(want["mu1_norm_all"], abs=1e-13)
    assert got.mu2_norm_all == pytest.approx(want["mu2_norm_all"], abs=1e-13)


@settings(max_examples=400, deadline=None)
@given(clause_lists())
def test_score_bounds(cnf):
    report = merge_scores(cnf)
    assert 0.0 <= report.mu1_norm_r <= 0.5 + 1e-12
    assert 0.0 <= report.mu1_norm_all <= 0.5 + 1e-12
    assert 0.0 <= report.mu2_norm_r <= 1.0 + 1e-12
    assert 0.0 <= report.mu2_norm_all <= 1.0 + 1e-12
    total = report.num_clauses * (report.num_clauses - 1) // 2
    assert report.resolvable_pairs <= total


@settings(max_examples=300, deadline=None)
@given(clause_lists())
def test_norm_all_bounded_by_norm_r(cnf):
    report = merge_scores(cnf)
    assert report.mu1_norm_all <= report.mu1_norm_r + 1e-12
    assert report.mu2_norm_all <= report.mu2_norm_r + 1e-12


@settings(max_examples=300, deadline=None)
@given(clause_lists(), st.integers(min_value=1, max_value=8))
def test_global_polarity_flip_invariance(cnf, var):
    if var > cnf.num_vars:
        var = 1 + (var - 1) % cnf.num_vars
    flipped = Cnf(
        cnf.num_vars,
        [
            tuple(-lit if abs(lit) == var else lit for lit in clause)
            for clause in cnf.clauses
        ],
        origin="constructed",
    )
    a, b = merge_scores(cnf), merge_scores(flipped)
    assert a.resolvable_pairs == b.resolvable_pairs
    assert a.merge_literal_total == b.merge_literal_total
    assert a.mu1_norm_all == pytest.approx(b.mu1_norm_all, abs=1e-13)
    assert a.mu2_norm_all == pytest.approx(b.mu2_norm_all, abs=1e-13)


# ---------------------------------------------------------------------------
# Containment and per-community scores


def two_block_cnf():
    """Two 3-var clause blocks joined by one bridge clause."""
    return Cnf(
        6,
        [(1, 2), (-1, 2), (2, 3), (4, 5), (-4, 5), (5, 6), (3, 4)],
        origin="constructed",
    )


@settings(max_examples=120, deadline=None)
@given(clause_lists(), st.integers(min_value=0, max_value=2**31))
def test_containment_matches_subset_scan(cnf, seed):
    vig = build_vig(cnf)
    if vig.num_edges == 0:
        return
    tree = decompose(vig, seed)
    contained = clause_containment(tree, cnf)
    for node in tree.nodes:
        members = set(node.vertices)
        expected = [
            idx
            for idx, clause in enumerate(cnf.clauses)
            if {abs(lit) - 1 for lit in clause} <= members
        ]
        assert contained[node.id] == expected


def test_root_contains_every_clause():
    cnf = two_block_cnf()
    tree = decompose(build_vig(cnf), seed=0)
    assert clause_containment(tree, cnf)[tree.root] == list(range(7))


def test_root_level_score_equals_whole_formula():
    cnf = two_block_cnf()
    tree = decompose(build_vig(cnf), seed=0)
    assert community_merge_scores(cnf, tree, 1).value == pytest.approx(
        merge_scores(cnf).mu1_norm_all, abs=1e-15
    )


def test_level_values_frozen():
    cnf = two_block_cnf()
    tree = decompose(build_vig(cnf), seed=0)
    levels = level_mergeability(cnf, tree)
    assert levels[1].value == pytest.approx(1 / 21, abs=1e-15)  # frozen
    assert levels[1].skipped_nodes == 0
    # seed-0 split of this path graph: {0,1}, {2,3}, {4,5}; only the first
    # holds two clauses, the other two contribute zeros
    assert levels[2].value == pytest.approx(1 / 6, abs=1e-15)  # frozen
    assert levels[2].skipped_nodes == 2


def test_absent_depth_flagged():
    cnf = two_block_cnf()
    tree = decompose(build_vig(cnf), seed=0)
    assert community_merge_scores(cnf, tree, 9) == LevelMergeability(0.0, False, 0)


def test_community_with_single_clause_scores_zero():
    cnf = Cnf(4, [(1, 2), (3, 4)], origin="constructed")
    tree = decompose(build_vig(cnf), seed=0)
    level = community_merge_scores(cnf, tree, 2)
    assert level.value == 0.0
    assert level.present
    assert level.skipped_nodes == 2


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=12),
    st.integers(min_value=0, max_value=2**31),
)
def test_level_sums_are_order_independent(n, seed):
    # fsum over the sorted pair order: recomputation is bit-identical
    vig = random_graph_with_edges(n, seed)
    clauses = [(u + 1, -(v + 1)) for u, v in vig.edges()]
    cnf = Cnf(n, clauses, origin="constructed")
    tree = decompose(vig, seed=1)
    first = level_mergeability(cnf, tree)
    again = level_mergeability(cnf, tree)
    assert first == again
