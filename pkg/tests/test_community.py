"""Modularity forms, Louvain behavior, and the exact partition oracles.

Expected values marked "frozen" were computed by the independent
reference implementations in oracles.py and pinned here.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcskit.community import (
    BRUTE_FORCE_MAX_VERTICES,
    Partition,
    best_two_partition,
    brute_force_best_partition,
    louvain,
    modularity,
    partition_metrics,
)
from hcskit.errors import EmptyGraphError, TooLargeError
from hcskit.vig import Vig, connected_components
from oracles import (
    all_partitions,
    best_partition_exhaustive,
    complete_graph,
    pairwise_modularity,
    random_graph_with_edges,
    two_disjoint_triangles,
    two_partition_modularity,
    two_triangles_bridge,
)


def labels_of(blocks, n):
    return Partition.from_blocks(n, blocks)


# ---------------------------------------------------------------------------
# Partition type


def test_from_labels_renumbers_densely():
    p = Partition.from_labels([7, 3, 7, 9])
    assert p.community_of == (0, 1, 0, 2)
    assert p.num_communities == 3


def test_from_blocks_round_trip():
    # ids are dense by first vertex occurrence, not by block position
    p = Partition.from_blocks(4, [[2, 3], [0, 1]])
    assert p.communities() == [[0, 1], [2, 3]]
    assert p.community_of == (0, 0, 1, 1)


def test_from_blocks_requires_cover():
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [[0, 1]])


# ---------------------------------------------------------------------------
# Modularity values and identities


def test_two_disjoint_triangles_q_half():
    q = modularity(two_disjoint_triangles(), labels_of([[0, 1, 2], [3, 4, 5]], 6))
    assert q == pytest.approx(0.5, abs=1e-12)


def test_single_community_q_zero():
    for vig in (two_triangles_bridge(), complete_graph(5)):
        q = modularity(vig, Partition.from_labels([0] * vig.num_vertices))
        assert q == pytest.approx(0.0, abs=1e-12)


def test_k3_singletons():
    q = modularity(complete_graph(3), Partition.from_labels([0, 1, 2]))
    assert q == pytest.approx(-1 / 3, abs=1e-12)


def test_modularity_rejects_edgeless():
    with pytest.raises(EmptyGraphError):
        modularity(Vig.from_edges(3, []), Partition.from_labels([0, 0, 0]))


def test_metrics_bridge_partition():
    metrics = partition_metrics(
        two_triangles_bridge(), labels_of([[0, 1, 2], [3, 4, 5]], 6)
    )
    assert metrics.q == pytest.approx(5 / 14, abs=1e-12)  # frozen
    assert metrics.inter_edges == 1
    assert metrics.inter_vertices == 2
    assert metrics.e_in == (3, 3)
    assert metrics.e_out == (1, 1)
    assert metrics.vol == (7, 7)


@st.composite
def graph_and_labels(draw):
    n = draw(st.integers(min_value=2, max_value=10))
    seed = draw(st.integers(min_value=0, max_value=2**31))
    vig = random_graph_with_edges(n, seed)
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return vig, Partition.from_labels(labels)


@settings(max_examples=300, deadline=None)
@given(graph_and_labels())
def test_modularity_range_and_pairwise_agreement(case):
    vig, partition = case
    q = modularity(vig, partition)
    assert -0.5 - 1e-12 <= q <= 1.0 + 1e-12
    reference = pairwise_modularity(vig, partition.community_of)
    assert q == pytest.approx(float(reference), abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(graph_and_labels())
def test_decomposed_identity(case):
    # Q = 1 - (1/2m) sum e_out - (1/4m^2) sum vol^2
    vig, partition = case
    metrics = partition_metrics(vig, partition)
    m = vig.num_edges
    decomposed = (
        1.0
        - sum(metrics.e_out) / (2.0 * m)
        - sum(v * v for v in metrics.vol) / (4.0 * m * m)
    )
    assert metrics.q == pytest.approx(decomposed, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(graph_and_labels())
def test_metrics_volume_and_cut_invariants(case):
    vig, partition = case
    metrics = partition_metrics(vig, partition)
    assert sum(metrics.vol) == 2 * vig.num_edges
    assert sum(metrics.e_out) == 2 * metrics.inter_edges
    assert sum(metrics.e_in) + metrics.inter_edges == vig.num_edges


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=8),
    st.integers(min_value=0, max_value=2**31),
)
def test_two_partition_identity_all_subsets(n, seed):
    # Q({S, comp}) = vol(S)/m * (1 - vol(S)/2m) - e_out(S)/m for every S
    vig = random_graph_with_edges(n, seed)
    m = vig.num_edges
    degrees = vig.degrees
    for mask in range(1, (1 << n) - 1):
        s = {v for v in range(n) if mask >> v & 1}
        vol_s = sum(degrees[v] for v in s)
        cut = sum(1 for u, v in vig.edges() if (u in s) != (v in s))
        identity = vol_s / m * (1 - vol_s / (2 * m)) - cut / m
        labels = [0 if v in s else 1 for v in range(n)]
        q = modularity(vig, Partition.from_labels(labels))
        assert q == pytest.approx(identity, abs=1e-12)


# ---------------------------------------------------------------------------
# Louvain


def test_louvain_bridge_recovers_triangles():
    p = louvain(two_triangles_bridge(), seed=0)
    assert p.community_of == (0, 0, 0, 1, 1, 1)  # frozen


def test_louvain_k5_single_community():
    assert louvain(complete_graph(5), seed=0).num_communities == 1


def test_louvain_disjoint_triangles_matches_components():
    p = louvain(two_disjoint_triangles(), seed=0)
    assert p.community_of == (0, 0, 0, 1, 1, 1)  # frozen


def test_louvain_rejects_edgeless():
    with pytest.raises(EmptyGraphError):
        louvain(Vig.from_edges(3, []), seed=0)


def test_louvain_deterministic_per_seed():
    vig = random_graph_with_edges(30, 12345)
    first = louvain(vig, seed=9)
    again = louvain(vig, seed=9)
    assert first == again


def test_louvain_resolution_default_explicit_agree():
    vig = random_graph_with_edges(20, 7)
    assert louvain(vig, seed=3) == louvain(vig, seed=3, resolution=1.0)


@settings(max_examples=120, deadline=None)
@given(
    st.integers(min_value=2, max_value=14),
    st.integers(min_value=0, max_value=2**31),
    st.integers(min_value=0, max_value=2**31),
)
def test_louvain_never_merges_components(n, graph_seed, louvain_seed):
    vig = random_graph_with_edges(n, graph_seed)
    partition = louvain(vig, louvain_seed)
    component_of = {}
    for idx, comp in enumerate(connected_components(vig)):
        for v in comp:
            component_of[v] = idx
    for u in range(n):
        for v in range(u + 1, n):
            if partition.community_of[u] == partition.community_of[v]:
                assert component_of[u] == component_of[v]


@settings(max_examples=100, deadline=None)
@given(
    st.integers(min_value=2, max_value=8),
    st.integers(min_value=0, max_value=2**31),
    st.integers(min_value=0, max_value=2**31),
)
def test_louvain_soundness_vs_brute_force(n, graph_seed, louvain_seed):
    vig = random_graph_with_edges(n, graph_seed)
    _, q_opt = brute_force_best_partition(vig)
    q_louvain = modularity(vig, louvain(vig, louvain_seed))
    assert q_louvain <= q_opt + 1e-9


# ---------------------------------------------------------------------------
# Brute-force partition oracle


def test_brute_force_bridge():
    p, q = brute_force_best_partition(two_triangles_bridge())
    assert p.community_of == (0, 0, 0, 1, 1, 1)  # frozen
    assert q == pytest.approx(5 / 14, abs=1e-12)  # frozen


def test_brute_force_cliques_stay_whole():
    for n in (2, 4, 5):
        p, q = brute_force_best_partition(complete_graph(n))
        assert p.num_communities == 1
        assert q == pytest.approx(0.0, abs=1e-12)


def test_brute_force_disjoint_triangles():
    p, q = brute_force_best_partition(two_disjoint_triangles())
    assert p.community_of == (0, 0, 0, 1, 1, 1)
    assert q == pytest.approx(0.5, abs=1e-12)


def test_brute_force_caps_at_twelve():
    with pytest.raises(TooLargeError):
        brute_force_best_partition(Vig.from_edges(13, [(0, 1)]))


def test_brute_force_rejects_edgeless():
    with pytest.raises(EmptyGraphError):
        brute_force_best_partition(Vig.from_edges(4, []))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=7),
    st.integers(min_value=0, max_value=2**31),
)
def test_brute_force_matches_exhaustive_reference(n, seed):
    # Same arg-max and the same tie-break (fewer blocks, then lex labels).
    vig = random_graph_with_edges(n, seed)
    got_partition, got_q = brute_force_best_partition(vig)
    want_labels, want_q = best_partition_exhaustive(vig)
    assert got_partition.community_of == want_labels
    assert got_q == pytest.approx(float(want_q), abs=1e-12)


def test_brute_force_exceeds_every_partition():
    vig = random_graph_with_edges(6, 99)
    _, q_opt = brute_force_best_partition(vig)
    for labels in all_partitions(6):
        assert modularity(vig, Partition.from_labels(labels)) <= q_opt + 1e-12


# ---------------------------------------------------------------------------
# Best 2-partition oracle


def test_best_two_bridge():
    s, q2 = best_two_partition(two_triangles_bridge())
    assert s == {0, 1, 2}
    assert q2 == pytest.approx(5 / 14, abs=1e-12)  # frozen


def test_best_two_k4_negative():
    s, q2 = best_two_partition(complete_graph(4))
    assert q2 == pytest.approx(-1 / 8, abs=1e-12)  # frozen
    assert s == {0}  # tie-break: smallest side, then lex


def test_best_two_disjoint_triangles():
    s, q2 = best_two_partition(two_disjoint_triangles())
    assert s == {0, 1, 2}
    assert q2 == pytest.approx(0.5, abs=1e-12)


def test_best_two_k2():
    s, q2 = best_two_partition(complete_graph(2))
    assert s == {0}
    assert q2 == pytest.approx(-0.5, abs=1e-12)


def test_best_two_caps_at_twenty_four():
    with pytest.raises(TooLargeError):
        best_two_partition(Vig.from_edges(25, [(0, 1)]))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=8),
    st.integers(min_value=0, max_value=2**31),
)
def test_best_two_matches_exhaustive_reference(n, seed):
    from oracles import best_two_exhaustive

    vig = random_graph_with_edges(n, seed)
    got_set, got_q = best_two_partition(vig)
    want_set, want_q = best_two_exhaustive(vig)
    assert got_q == pytest.approx(float(want_q), abs=1e-12)
    assert got_set == set(want_set)


@settings(max_examples=80, deadline=None)
@given(
    st.integers(min_value=2, max_value=BRUTE_FORCE_MAX_VERTICES),
    st.integers(min_value=0, max_value=2**31),
)
def test_dominance_best_partition_at_least_best_two(n, seed):
    vig = random_graph_with_edges(n, seed)
    _, q_opt = brute_force_best_partition(vig)
    _, q2 = best_two_partition(vig)
    assert q_opt >= q2 - 1e-12


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=3, max_value=10),
    st.integers(min_value=0, max_value=2**31),
)
def test_best_two_dominates_every_subset(n, seed):
    vig = random_graph_with_edges(n, seed)
    _, q2 = best_two_partition(vig)
    for mask in range(1, 1 << (n - 1)):
        s = {v for v in range(n) if mask >> v & 1} | {0}
        if len(s) == n:
            continue
        assert float(two_partition_modularity(vig, s)) <= q2 + 1e-12
