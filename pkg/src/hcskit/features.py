"""The 49-column structural feature vector of a formula.

Level conventions: root = the depth-1 node, lvl2/lvl3 = unweighted means over
nodes at depths 2 and 3, max* = maximum over all tree levels of the per-level
mean (levels past 3 only show up there). Leaves count as zeros in degree and
inter-community means; modularity means skip leaves since a leaf holds no
split. A missing level or a zero-denominator ratio yields 0.0 and the feature
name lands in the vector's absent set, so every cell stays finite; CSV export
writes the zeros, JSON export writes nulls.

rootCommunitySize, used only inside ratios, is numVars.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .cnf import Cnf, base_features
from .errors import EmptyGraphError, TooFewClausesError
from .hcs import DEFAULT_MAX_DEPTH, HcsTree, decompose
from .mergeability import level_mergeability, merge_scores
from .vig import build_vig

SCHEMA_VERSION = 1

FEATURE_NAMES: tuple[str, ...] = (
    "numVars",
    "numClauses",
    "CVR",
    "dvMean",
    "dvVariance",
    "numCommunities",
    "numLeaves",
    "avgLeafDepth",
    "depthMostLeaves",
    "rootInterVars",
    "lvl2InterVars",
    "lvl3InterVars",
    "rootInterEdges",
    "lvl2InterEdges",
    "lvl3InterEdges",
    "rootDegree",
    "lvl2Degree",
    "lvl3Degree",
    "maxDegree",
    "rootModularity",
    "lvl2Modularity",
    "lvl3Modularity",
    "maxModularity",
    "rootMergeability",
    "lvl2Mergeability",
    "lvl3Mergeability",
    "maxMergeability",
    "lvl2CommunitySize",
    "lvl3CommunitySize",
    "leafCommunitySize",
    "numLeaves/numCommunities",
    "rootInterEdges/rootInterVars",
    "lvl2InterEdges/lvl2InterVars",
    "lvl3InterEdges/lvl3InterVars",
    "max(interEdges/interVars)",
    "rootInterEdges/rootCommunitySize",
    "lvl2InterEdges/lvl2CommunitySize",
    "lvl3InterEdges/lvl3CommunitySize",
    "max(interEdges/communitySize)",
    "rootInterVars/rootCommunitySize",
    "lvl2InterVars/lvl2CommunitySize",
    "lvl3InterVars/lvl3CommunitySize",
    "max(interVars/communitySize)",
    "rootInterEdges/rootDegree",
    "lvl2InterEdges/lvl2Degree",
    "lvl3InterEdges/lvl3Degree",
    "rootInterVars/rootDegree",
    "lvl2InterVars/lvl2Degree",
    "lvl3InterVars/lvl3Degree",
)

assert len(FEATURE_NAMES) == 49


@dataclass(frozen=True)
class FeatureVector:
    values: tuple[float, ...]
    absent: frozenset[str]

    def __getitem__(self, name: str) -> float:
        return self.values[FEATURE_NAMES.index(name)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(FEATURE_NAMES, self.values))

    def to_json(self) -> dict[str, float | None]:
        """Feature mapping with nulls where the value was absent."""
        return {
            name: (None if name in self.absent else value)
            for name, value in zip(FEATURE_NAMES, self.values)
        }


@dataclass(frozen=True)
class _Level:
    count: int
    size: float
    degree: float
    inter_edges: float
    inter_vars: float
    modularity: float | None  # None when the level has no internal node
    mergeability: float


def _levels(cnf: Cnf, tree: HcsTree) -> dict[int, _Level]:
    merge = level_mergeability(cnf, tree)
    out: dict[int, _Level] = {}
    for depth in range(1, tree.depth() + 1):
        nodes = tree.nodes_at_depth(depth)
        count = len(nodes)
        internal = [n.modularity_here for n in nodes if n.modularity_here is not None]
        out[depth] = _Level(
            count=count,
            size=sum(n.size for n in nodes) / count,
            degree=sum(n.community_degree for n in nodes) / count,
            inter_edges=sum(n.inter_edges for n in nodes) / count,
            inter_vars=sum(n.inter_vertices for n in nodes) / count,
            modularity=sum(internal) / len(internal) if internal else None,
            mergeability=merge[depth].value,
        )
    return out


def extract(
    cnf: Cnf,
    seed: int,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_size: int = 1,
) -> FeatureVector:
    """All 49 features of a formula; deterministic given (cnf, seed)."""
    vig = build_vig(cnf)
    if vig.num_edges == 0:
        raise EmptyGraphError("feature extraction needs a VIG with edges")
    base = base_features(cnf)
    tree = decompose(vig, seed, max_depth=max_depth, min_size=min_size)
    levels = _levels(cnf, tree)

    leaves = tree.leaves()
    leaf_depth_counts: dict[int, int] = {}
    for leaf in leaves:
        leaf_depth_counts[leaf.depth] = leaf_depth_counts.get(leaf.depth, 0) + 1
    most = max(leaf_depth_counts.values())
    depth_most_leaves = min(d for d, c in leaf_depth_counts.items() if c == most)

    absent: set[str] = set()
    feats: dict[str, float] = {}

    def put(name: str, value: float) -> None:
        feats[name] = float(value)

    def put_absent(name: str) -> None:
        feats[name] = 0.0
        absent.add(name)

    def level_value(depth: int, field: str, name: str) -> None:
        level = levels.get(depth)
        if level is None:
            put_absent(name)
            return
        value = getattr(level, field)
        if value is None:  # modularity of an all-leaf level
            put_absent(name)
        else:
            put(name, value)

    def ratio(name: str, num: float, den: float, defined: bool = True) -> None:
        if not defined or den == 0:
            put_absent(name)
        else:
            put(name, num / den)

    put("numVars", base.num_vars)
    put("numClauses", base.num_clauses)
    put("CVR", base.cvr)
    put("dvMean", base.dv_mean)
    put("dvVariance", base.dv_variance)
    put("numCommunities", len(tree.nodes))
    put("numLeaves", len(leaves))
    put("avgLeafDepth", sum(n.depth for n in leaves) / len(leaves))
    put("depthMostLeaves", depth_most_leaves)

    for depth, prefix in ((1, "root"), (2, "lvl2"), (3, "lvl3")):
        level_value(depth, "inter_vars", f"{prefix}InterVars")
        level_value(depth, "inter_edges", f"{prefix}InterEdges")
        level_value(depth, "degree", f"{prefix}Degree")
        level_value(depth, "modularity", f"{prefix}Modularity")
        level_value(depth, "mergeability", f"{prefix}Mergeability")
    put("maxDegree", max(l.degree for l in levels.values()))
    mods = [l.modularity for l in levels.values() if l.modularity is not None]
    if mods:
        put("maxModularity", max(mods))
    else:
        put_absent("maxModularity")
    put("maxMergeability", max(l.mergeability for l in levels.values()))

    level_value(2, "size", "lvl2CommunitySize")
    level_value(3, "size", "lvl3CommunitySize")
    put("leafCommunitySize", sum(n.size for n in leaves) / len(leaves))

    put("numLeaves/numCommunities", len(leaves) / len(tree.nodes))

    def level_ratio(name: str, depth: int, num_field: str, den_field: str) -> None:
        level = levels.get(depth)
        if level is None:
            put_absent(name)
            return
        ratio(name, getattr(level, num_field), getattr(level, den_field))

    root_size = float(base.num_vars)  # rootCommunitySize
    level_ratio("rootInterEdges/rootInterVars", 1, "inter_edges", "inter_vars")
    level_ratio("lvl2InterEdges/lvl2InterVars", 2, "inter_edges", "inter_vars")
    level_ratio("lvl3InterEdges/lvl3InterVars", 3, "inter_edges", "inter_vars")
    _max_ratio("max(interEdges/interVars)", levels, "inter_edges", "inter_vars", put, put_absent)

    ratio("rootInterEdges/rootCommunitySize", levels[1].inter_edges, root_size)
    level_ratio("lvl2InterEdges/lvl2CommunitySize", 2, "inter_edges", "size")
    level_ratio("lvl3InterEdges/lvl3CommunitySize", 3, "inter_edges", "size")
    _max_ratio("max(interEdges/communitySize)", levels, "inter_edges", "size", put, put_absent)

    ratio("rootInterVars/rootCommunitySize", levels[1].inter_vars, root_size)
    level_ratio("lvl2InterVars/lvl2CommunitySize", 2, "inter_vars", "size")
    level_ratio("lvl3InterVars/lvl3CommunitySize", 3, "inter_vars", "size")
    _max_ratio("max(interVars/communitySize)", levels, "inter_vars", "size", put, put_absent)

    level_ratio("rootInterEdges/rootDegree", 1, "inter_edges", "degree")
    level_ratio("lvl2InterEdges/lvl2Degree", 2, "inter_edges", "degree")
    level_ratio("lvl3InterEdges/lvl3Degree", 3, "inter_edges", "degree")
    level_ratio("rootInterVars/rootDegree", 1, "inter_vars", "degree")
    level_ratio("lvl2InterVars/lvl2Degree", 2, "inter_vars", "degree")
    level_ratio("lvl3InterVars/lvl3Degree", 3, "inter_vars", "degree")

    values = tuple(feats[name] for name in FEATURE_NAMES)
    return FeatureVector(values=values, absent=frozenset(absent))


def _max_ratio(name, levels, num_field, den_field, put, put_absent) -> None:
    """Max over levels of mean-num/mean-den; degenerate levels count as 0."""
    ratios = []
    defined = False
    for level in levels.values():
        den = getattr(level, den_field)
        if den == 0:
            ratios.append(0.0)
        else:
            ratios.append(getattr(level, num_field) / den)
            defined = True
    if defined:
        put(name, max(ratios))
    else:
        put_absent(name)


def supplementary_merge(cnf: Cnf) -> dict[str, float | int] | None:
    """Whole-formula merge score variants beyond the canonical column.

    None when the formula has fewer than two clauses.
    """
    try:
        report = merge_scores(cnf)
    except TooFewClausesError:
        return None
    return {
        "resolvablePairs": report.resolvable_pairs,
        "mergeLiteralTotal": report.merge_literal_total,
        "degeneratePairs": report.degenerate_pairs,
        "mu1NormR": report.mu1_norm_r,
        "mu2NormR": report.mu2_norm_r,
        "mu1NormAll": report.mu1_norm_all,
        "mu2NormAll": report.mu2_norm_all,
    }


Row = tuple[str, str | None, FeatureVector]


def write_csv(rows: list[Row], path: str) -> None:
    """51-column CSV: instance, label, then the 49 features in schema order.

    Absent values are written as their 0.0 placeholders; a missing label is
    an empty field. Row order follows the input, so identical input produces
    a byte-identical file.
    """
    if not rows:
        raise ValueError("rows must be nonempty")
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["instance", "label", *FEATURE_NAMES])
        for instance_id, label, vector in rows:
            writer.writerow(
                [instance_id, "" if label is None else label, *vector.values]
            )
