"""Modularity, seeded Louvain detection, and exact small-graph oracles.

Modularity of a partition P of a graph with m edges:

    Q(P) = (1/2m) * sum_{u,v} [A_uv - d(u)d(v)/2m] * [P(u) == P(v)]
         = sum_c (e_in(c)/m - (vol(c)/2m)^2)

Q ranges over [-0.5, 1]. The Louvain routine here is fully deterministic
given (graph, seed): vertex visiting order is a seeded shuffle per pass, a
vertex moves only on a strictly positive gain, and equal gains resolve to the
lowest community id. The exact maximizers below serve as oracles for graphs
small enough to enumerate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import EmptyGraphError, TooLargeError
from .vig import Vig

BRUTE_FORCE_MAX_VERTICES = 12
TWO_PARTITION_MAX_VERTICES = 24


@dataclass(frozen=True)
class Partition:
    """Dense community labels: every id in 0..num_communities-1 is used."""

    community_of: tuple[int, ...]
    num_communities: int

    @staticmethod
    def from_labels(labels) -> "Partition":
        """Renumber arbitrary labels densely by first occurrence."""
        remap: dict[int, int] = {}
        out: list[int] = []
        for lab in labels:
            if lab not in remap:
                remap[lab] = len(remap)
            out.append(remap[lab])
        return Partition(tuple(out), len(remap))

    @staticmethod
    def from_blocks(num_vertices: int, blocks) -> "Partition":
        labels = [-1] * num_vertices
        for i, block in enumerate(blocks):
            for v in block:
                labels[v] = i
        if -1 in labels:
            raise ValueError("blocks do not cover all vertices")
        return Partition.from_labels(labels)

    def communities(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_communities)]
        for v, c in enumerate(self.community_of):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class PartitionMetrics:
    q: float
    e_in: tuple[int, ...]
    e_out: tuple[int, ...]
    vol: tuple[int, ...]
    inter_edges: int
    inter_vertices: int


def partition_metrics(vig: Vig, p: Partition) -> PartitionMetrics:
    """Per-community edge counts, volumes, and the modularity of p."""
    m = vig.num_edges
    if m == 0:
        raise EmptyGraphError("modularity is undefined on an edgeless graph")
    k = p.num_communities
    e_in = [0] * k
    e_out = [0] * k
    vol = [0] * k
    crossing_vertices: set[int] = set()
    inter_edges = 0
    for v in range(vig.num_vertices):
        vol[p.community_of[v]] += len(vig.adjacency[v])
    for u, v in vig.edges():
        cu, cv = p.community_of[u], p.community_of[v]
        if cu == cv:
            e_in[cu] += 1
        else:
            e_out[cu] += 1
            e_out[cv] += 1
            inter_edges += 1
            crossing_vertices.add(u)
            crossing_vertices.add(v)
    q = sum(e_in[c] / m - (vol[c] / (2 * m)) ** 2 for c in range(k))
    return PartitionMetrics(
        q=q,
        e_in=tuple(e_in),
        e_out=tuple(e_out),
        vol=tuple(vol),
        inter_edges=inter_edges,
        inter_vertices=len(crossing_vertices),
    )


def modularity(vig: Vig, p: Partition) -> float:
    return partition_metrics(vig, p).q


# ---------------------------------------------------------------------------
# Louvain


def _weighted_modularity(adj, self_loops, degrees, comm, m: float, resolution: float) -> float:
    """Modularity of a labeling on the weighted level graph."""
    w_in: dict[int, float] = {}
    vol: dict[int, float] = {}
    for v, deg in enumerate(degrees):
        vol[comm[v]] = vol.get(comm[v], 0.0) + deg
        w_in[comm[v]] = w_in.get(comm[v], 0.0) + self_loops[v]
    for u in range(len(adj)):
        for v, w in adj[u].items():
            if u < v and comm[u] == comm[v]:
                w_in[comm[u]] += w
    return sum(
        w_in.get(c, 0.0) / m - resolution * (vol[c] / (2.0 * m)) ** 2 for c in vol
    )


def louvain(vig: Vig, seed: int, resolution: float = 1.0) -> Partition:
    """Two-phase modularity maximization, deterministic given (vig, seed).

    Phase 1 sweeps vertices in a seeded shuffled order, applying only strictly
    improving moves (ties between target communities go to the lowest id).
    Phase 2 aggregates communities into a weighted quotient graph whose
    self-loops carry the intra-community weight. The two phases repeat until
    aggregation reaches a fixed point; the returned partition is the final
    top level projected back onto the original vertices.
    """
    m = float(vig.num_edges)
    if m == 0:
        raise EmptyGraphError("louvain needs at least one edge")
    rng = random.Random(seed)

    n0 = vig.num_vertices
    adj: list[dict[int, float]] = [
        {v: 1.0 for v in vig.adjacency[u]} for u in range(n0)
    ]
    self_loops = [0.0] * n0
    assignment = list(range(n0))  # original vertex -> current level node

    while True:
        n = len(adj)
        degrees = [2.0 * self_loops[v] + sum(adj[v].values()) for v in range(n)]
        comm = list(range(n))
        sigma_tot = degrees[:]

        prev_q = _weighted_modularity(adj, self_loops, degrees, comm, m, resolution)
        while True:
            order = list(range(n))
            rng.shuffle(order)
            moved = 0
            for v in order:
                c0 = comm[v]
                w_to: dict[int, float] = {}
                for u, w in adj[v].items():
                    cu = comm[u]
                    w_to[cu] = w_to.get(cu, 0.0) + w
                sigma_tot[c0] -= degrees[v]
                best_c = c0
                best_gain = (
                    w_to.get(c0, 0.0) / m
                    - resolution * sigma_tot[c0] * degrees[v] / (2.0 * m * m)
                )
                for c in sorted(w_to):
                    if c == c0:
                        continue
                    gain = (
                        w_to[c] / m
                        - resolution * sigma_tot[c] * degrees[v] / (2.0 * m * m)
                    )
                    if gain > best_gain:
                        best_gain = gain
                        best_c = c
                sigma_tot[best_c] += degrees[v]
                comm[v] = best_c
                if best_c != c0:
                    moved += 1
            q_now = _weighted_modularity(adj, self_loops, degrees, comm, m, resolution)
            assert q_now >= prev_q - 1e-9, "modularity decreased during local moving"
            prev_q = q_now
            if moved == 0:
                break

        remap: dict[int, int] = {}
        for v in range(n):
            if comm[v] not in remap:
                remap[comm[v]] = len(remap)
        k = len(remap)
        if k == n:
            break

        new_adj: list[dict[int, float]] = [dict() for _ in range(k)]
        new_loops = [0.0] * k
        for v in range(n):
            c = remap[comm[v]]
            new_loops[c] += self_loops[v]
            for u, w in adj[v].items():
                cu = remap[comm[u]]
                if cu == c:
                    if u > v:
                        new_loops[c] += w
                else:
                    new_adj[c][cu] = new_adj[c].get(cu, 0.0) + w
        assignment = [remap[comm[node]] for node in assignment]
        adj, self_loops = new_adj, new_loops

    return Partition.from_labels(assignment)


# ---------------------------------------------------------------------------
# Exact oracles


def _subset_tables(vig: Vig) -> tuple[list[int], list[int], list[int]]:
    """Per-bitmask internal edge counts and volumes, and neighbor masks."""
    n = vig.num_vertices
    adj_mask = [0] * n
    for u in range(n):
        for v in vig.adjacency[u]:
            adj_mask[u] |= 1 << v
    size = 1 << n
    e_in = [0] * size
    vol = [0] * size
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        e_in[s] = e_in[rest] + (adj_mask[low] & rest).bit_count()
        vol[s] = vol[rest] + len(vig.adjacency[low])
    return e_in, vol, adj_mask


def brute_force_best_partition(vig: Vig) -> tuple[Partition, float]:
    """Exact modularity maximizer over all set partitions (n <= 12).

    Ties resolve to fewer communities, then to the lexicographically smallest
    dense label vector. Scores are compared as exact integers
    (4m*e_in - vol^2 summed per block), so float round-off cannot flip a tie.
    """
    n = vig.num_vertices
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise TooLargeError(f"{n} vertices exceeds the ceiling of {BRUTE_FORCE_MAX_VERTICES}")
    m = vig.num_edges
    if m == 0:
        raise EmptyGraphError("modularity is undefined on an edgeless graph")

    e_in, vol, _ = _subset_tables(vig)
    size = 1 << n
    block_score = [0] * size
    for s in range(1, size):
        block_score[s] = 4 * m * e_in[s] - vol[s] * vol[s]

    # best[s] = (score, blocks, first_block) for the optimal partition of the
    # vertex set s, where first_block contains s's lowest vertex.
    best: list[tuple[int, int, int] | None] = [None] * size
    best[0] = (0, 0, 0)
    labeling_cache: dict[int, tuple[int, ...]] = {0: ()}

    def labeling(s: int) -> tuple[int, ...]:
        """Dense labels over the sorted vertices of s, canonical block order."""
        cached = labeling_cache.get(s)
        if cached is not None:
            return cached
        _, _, block = best[s]  # type: ignore[misc]
        rest = s ^ block
        rest_labels = labeling(rest)
        out: list[int] = []
        idx = 0
        t = s
        while t:
            v_bit = t & -t
            if v_bit & block:
                out.append(0)
            else:
                out.append(1 + rest_labels[idx])
                idx += 1
            t ^= v_bit
        result = tuple(out)
        labeling_cache[s] = result
        return result

    def candidate_labels(s: int, block: int) -> tuple[int, ...]:
        rest = s ^ block
        rest_labels = labeling(rest)
        out: list[int] = []
        idx = 0
        t = s
        while t:
            v_bit = t & -t
            if v_bit & block:
                out.append(0)
            else:
                out.append(1 + rest_labels[idx])
                idx += 1
            t ^= v_bit
        return tuple(out)

    for s in range(1, size):
        low_bit = s & -s
        rest_all = s ^ low_bit
        best_entry: tuple[int, int, int] | None = None
        t = rest_all
        while True:
            block = low_bit | t
            remainder = s ^ block
            r_score, r_blocks, _ = best[remainder]  # type: ignore[misc]
            score = block_score[block] + r_score
            blocks = r_blocks + 1
            if best_entry is None:
                best_entry = (score, blocks, block)
            else:
                b_score, b_blocks, b_block = best_entry
                if score > b_score or (
                    score == b_score
                    and (
                        blocks < b_blocks
                        or (
                            blocks == b_blocks
                            and candidate_labels(s, block) < candidate_labels(s, b_block)
                        )
                    )
                ):
                    best_entry = (score, blocks, block)
            if t == 0:
                break
            t = (t - 1) & rest_all
        best[s] = best_entry

    full = size - 1
    labels = labeling(full)
    score = best[full][0]  # type: ignore[index]
    partition = Partition.from_labels(labels)
    return partition, score / (4.0 * m * m)


def best_two_partition(vig: Vig) -> tuple[set[int], float]:
    """Exact best 2-partition {S, complement} by modularity (n <= 24).

    Returns the smaller side (the side holding vertex 0 when sizes tie) and
    Q({S, comp}). Equal-quality cuts resolve to the smaller reported side,
    then to the lexicographically smallest vertex tuple. A Gray-code sweep
    maintains vol(S) and cut(S) incrementally, and qualities are compared as
    exact integers over the common denominator 2m^2.
    """
    n = vig.num_vertices
    if n > TWO_PARTITION_MAX_VERTICES:
        raise TooLargeError(f"{n} vertices exceeds the ceiling of {TWO_PARTITION_MAX_VERTICES}")
    m = vig.num_edges
    if m == 0:
        raise EmptyGraphError("modularity is undefined on an edgeless graph")
    if n < 2:
        raise TooLargeError("a 2-partition needs at least two vertices")

    degrees = vig.degrees
    member = bytearray(n)
    member[0] = 1
    vol = degrees[0]
    cut = degrees[0]
    size_s = 1

    def reported(mask_members: bytearray, s_size: int) -> tuple[int, ...]:
        if 2 * s_size < n or (2 * s_size == n and mask_members[0]):
            return tuple(v for v in range(n) if mask_members[v])
        return tuple(v for v in range(n) if not mask_members[v])

    # quality numerator over the fixed denominator 2m^2
    def numerator(v_s: int, c_s: int) -> int:
        return 2 * m * v_s - v_s * v_s - 2 * m * c_s

    best_num = numerator(vol, cut)
    best_set = reported(member, size_s)

    # Gray-code sweep over subsets of {1..n-1}; vertex 0 stays inside S, so
    # each unordered 2-partition appears exactly once. Flipping v toggles its
    # edges between internal and cut: inside = |adj(v) & S| before the flip.
    steps = (1 << (n - 1)) - 1
    gray_prev = 0
    for i in range(1, steps + 1):
        gray = i ^ (i >> 1)
        changed = gray ^ gray_prev
        gray_prev = gray
        v = changed.bit_length()  # bit j <-> vertex j+1, and bit_length is j+1
        inside = sum(1 for u in vig.adjacency[v] if member[u])
        if member[v]:
            member[v] = 0
            size_s -= 1
            vol -= degrees[v]
            cut += 2 * inside - degrees[v]
        else:
            member[v] = 1
            size_s += 1
            vol += degrees[v]
            cut += degrees[v] - 2 * inside
        if size_s == n:
            continue
        num = numerator(vol, cut)
        if num > best_num:
            best_num = num
            best_set = reported(member, size_s)
        elif num == best_num:
            cand = reported(member, size_s)
            if (len(cand), cand) < (len(best_set), best_set):
                best_set = cand
    q2 = best_num / (2.0 * m * m)
    return set(best_set), q2
