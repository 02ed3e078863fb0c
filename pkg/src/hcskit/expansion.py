"""Exact edge expansion by exhaustive subset sweep.

    h(G) = min over nonempty S with |S| <= n/2 of cut(S) / |S|

Subsets are visited in Gray-code order so each step updates the running
cut size in O(deg) instead of recounting. Values are exact Fractions; the
reported minimizer breaks ties by smaller |S|, then lexicographically
smallest sorted vertex tuple. Capped at 24 vertices (2^24 subsets).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptySetError, FullSetError, SingleVertexError, TooLargeError
from .hcs import HcsTree
from .vig import Vig, induced_subgraph

EXACT_EXPANSION_MAX_VERTICES = 24


def subset_expansion(vig: Vig, subset: tuple[int, ...]) -> Fraction:
    """cut(S)/|S| for one subset (no |S| <= n/2 restriction)."""
    vertices = set(subset)
    if not vertices:
        raise EmptySetError("subset must be nonempty")
    if len(vertices) >= vig.num_vertices:
        raise FullSetError("subset must be proper")
    for v in vertices:
        if not 0 <= v < vig.num_vertices:
            raise ValueError(f"vertex {v} out of range")
    cut = sum(
        1 for v in vertices for u in vig.adjacency[v] if u not in vertices
    )
    return Fraction(cut, len(vertices))


@dataclass(frozen=True)
class ExpansionReport:
    h: Fraction
    argmin_set: tuple[int, ...]
    subsets_checked: int


def edge_expansion_exact(vig: Vig) -> ExpansionReport:
    n = vig.num_vertices
    if n < 2:
        raise SingleVertexError("expansion needs at least two vertices")
    if n > EXACT_EXPANSION_MAX_VERTICES:
        raise TooLargeError(f"exact expansion capped at {EXACT_EXPANSION_MAX_VERTICES} vertices")

    degrees = vig.degrees
    half = n // 2
    member = [0] * n
    size = 0
    cut = 0
    checked = 0
    best_cut = 0
    best_size = 0
    best_mask = 0
    have_best = False
    prev_gray = 0
    # Gray code over all n bits; bit i corresponds to vertex i.
    for code in range(1, 1 << n):
        gray = code ^ (code >> 1)
        changed = gray ^ prev_gray
        prev_gray = gray
        v = changed.bit_length() - 1
        inside = sum(1 for u in vig.adjacency[v] if member[u])
        if member[v]:
            member[v] = 0
            size -= 1
            cut += 2 * inside - degrees[v]
        else:
            member[v] = 1
            size += 1
            cut += degrees[v] - 2 * inside
        if not 1 <= size <= half:
            continue
        checked += 1
        if have_best:
            # cut/size vs best_cut/best_size by cross multiplication
            lhs = cut * best_size
            rhs = best_cut * size
            if lhs > rhs:
                continue
            if lhs == rhs:
                if size > best_size:
                    continue
                if size == best_size and _subset_tuple(gray, n) >= _subset_tuple(best_mask, n):
                    continue
        best_cut, best_size, best_mask = cut, size, gray
        have_best = True
    return ExpansionReport(
        h=Fraction(best_cut, best_size),
        argmin_set=_subset_tuple(best_mask, n),
        subsets_checked=checked,
    )


def _subset_tuple(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


@dataclass(frozen=True)
class NodeExpansionAudit:
    node: int
    depth: int
    size: int
    leaf: bool
    inter_edges: int | None  # None for leaves
    upper_report: float | None  # 2*E_IC/size, internal nodes only
    exact_h: Fraction | None  # induced subgraph, only when size fits the cap
    witness: tuple[int, ...] | None  # original vertex ids of the argmin set


def hcs_expansion_audit(
    vig: Vig, tree: HcsTree, exact_limit: int = EXACT_EXPANSION_MAX_VERTICES
) -> list[NodeExpansionAudit]:
    """Compare each node's reported expansion bound with the exact value.

    Returns one row per tree node in id order. Exact values are computed on
    the node's induced subgraph when its size is between 2 and exact_limit.
    """
    if exact_limit > EXACT_EXPANSION_MAX_VERTICES:
        raise TooLargeError(f"exact_limit above {EXACT_EXPANSION_MAX_VERTICES}")
    rows: list[NodeExpansionAudit] = []
    for node in tree.nodes:
        exact_h: Fraction | None = None
        witness: tuple[int, ...] | None = None
        if 2 <= node.size <= exact_limit:
            sub, mapping = induced_subgraph(vig, node.vertices)
            report = edge_expansion_exact(sub)
            exact_h = report.h
            witness = tuple(mapping[v] for v in report.argmin_set)
        rows.append(
            NodeExpansionAudit(
                node=node.id,
                depth=node.depth,
                size=node.size,
                leaf=node.is_leaf,
                inter_edges=None if node.is_leaf else node.inter_edges,
                upper_report=None if node.is_leaf else node.expansion_upper_report,
                exact_h=exact_h,
                witness=witness,
            )
        )
    return rows
