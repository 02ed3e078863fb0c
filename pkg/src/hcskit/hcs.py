"""Recursive decomposition of a graph into a community tree.

Each node holds a vertex set; internal nodes carry the modularity-maximizing
split of their induced subgraph (computed by the seeded Louvain routine on
the subgraph's own edges, so edges leaving the node are ignored while
recursing but counted in the parent's inter-community tally). A node becomes
a leaf when its best partition has a single part, or when the min_size or
max_depth guard cuts recursion short; guarded leaves are flagged by
leaf_reason so downstream consumers can tell them apart from natural ones.

Recursion is deterministic: every child derives its seed from
blake2b(parent_seed, child_index), never from scheduling order.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field

from .community import Partition, louvain, partition_metrics
from .errors import EmptyGraphError
from .vig import Vig, induced_subgraph

DEFAULT_MAX_DEPTH = 64


def derive_seed(parent_seed: int, child_index: int) -> int:
    """Stable 64-bit child seed; independent of process hash randomization."""
    payload = struct.pack("<QQ", parent_seed & (2**64 - 1), child_index)
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def graph_fingerprint(vig: Vig) -> str:
    hasher = hashlib.blake2b(digest_size=16)
    hasher.update(struct.pack("<QQ", vig.num_vertices, vig.num_edges))
    for u, v in vig.edges():
        hasher.update(struct.pack("<QQ", u, v))
    return hasher.hexdigest()


@dataclass
class HcsNode:
    id: int
    vertices: tuple[int, ...]
    depth: int
    parent: int | None
    seed: int
    children: list[int] = field(default_factory=list)
    modularity_here: float | None = None
    inter_edges: int = 0
    inter_vertices: int = 0
    leaf_reason: str | None = None  # None for internal nodes

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def community_degree(self) -> int:
        return len(self.children)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def expansion_upper_report(self) -> float:
        return 2.0 * self.inter_edges / self.size


@dataclass
class HcsTree:
    nodes: list[HcsNode]
    num_vertices: int
    seed: int
    max_depth: int
    min_size: int
    source: str  # graph fingerprint
    root: int = 0

    def node(self, node_id: int) -> HcsNode:
        return self.nodes[node_id]

    def leaves(self) -> list[HcsNode]:
        return [n for n in self.nodes if n.is_leaf]

    def depth(self) -> int:
        return max(n.depth for n in self.nodes)

    def nodes_at_depth(self, depth: int) -> list[HcsNode]:
        return [n for n in self.nodes if n.depth == depth]

    def leaf_of(self) -> list[int]:
        """Map each vertex to the id of the leaf containing it."""
        out = [-1] * self.num_vertices
        for node in self.nodes:
            if node.is_leaf:
                for v in node.vertices:
                    out[v] = node.id
        return out


def decompose(
    vig: Vig,
    seed: int,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_size: int = 1,
) -> HcsTree:
    """Build the community tree of a graph (needs at least one edge)."""
    if vig.num_edges == 0:
        raise EmptyGraphError("decomposition needs at least one edge")
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")

    nodes: list[HcsNode] = []
    root = HcsNode(
        id=0,
        vertices=tuple(range(vig.num_vertices)),
        depth=1,
        parent=None,
        seed=seed,
    )
    nodes.append(root)
    stack = [0]
    while stack:
        node = nodes[stack.pop()]
        sub, mapping = induced_subgraph(vig, node.vertices)
        if node.size == 1 or sub.num_edges == 0:
            node.leaf_reason = "natural"
            continue
        if node.depth >= max_depth:
            node.leaf_reason = "max_depth"
            continue
        if node.size <= min_size:
            node.leaf_reason = "min_size"
            continue
        partition = louvain(sub, node.seed)
        if partition.num_communities == 1:
            node.leaf_reason = "natural"
            continue
        metrics = partition_metrics(sub, partition)
        node.modularity_here = metrics.q
        node.inter_edges = metrics.inter_edges
        node.inter_vertices = metrics.inter_vertices
        for index, block in enumerate(partition.communities()):
            child = HcsNode(
                id=len(nodes),
                vertices=tuple(mapping[v] for v in block),
                depth=node.depth + 1,
                parent=node.id,
                seed=derive_seed(node.seed, index),
            )
            node.children.append(child.id)
            nodes.append(child)
            stack.append(child.id)

    return HcsTree(
        nodes=nodes,
        num_vertices=vig.num_vertices,
        seed=seed,
        max_depth=max_depth,
        min_size=min_size,
        source=graph_fingerprint(vig),
    )


@dataclass(frozen=True)
class NodeMetrics:
    size: int
    community_degree: int
    inter_edges: int
    inter_vertices: int
    modularity_here: float | None
    expansion_upper_report: float


def node_metrics(tree: HcsTree, node_id: int) -> NodeMetrics:
    """Per-node structural metrics; leaves report zero inter counts."""
    node = tree.node(node_id)
    return NodeMetrics(
        size=node.size,
        community_degree=node.community_degree,
        inter_edges=node.inter_edges,
        inter_vertices=node.inter_vertices,
        modularity_here=node.modularity_here,
        expansion_upper_report=node.expansion_upper_report,
    )


def level_aggregate(tree: HcsTree, depth: int, metric: str) -> tuple[float, bool]:
    """Mean of a metric over nodes at a depth; (0.0, False) when absent.

    Metrics: size, degree, inter_edges, inter_vertices, expansion_upper_report
    average over every node at the depth (leaves contribute their zeros);
    modularity averages over internal nodes only, since leaves have no split.
    """
    nodes = tree.nodes_at_depth(depth)
    if not nodes:
        return 0.0, False
    if metric == "modularity":
        internal = [n.modularity_here for n in nodes if n.modularity_here is not None]
        if not internal:
            return 0.0, False
        return sum(internal) / len(internal), True
    getter = {
        "size": lambda n: n.size,
        "degree": lambda n: n.community_degree,
        "inter_edges": lambda n: n.inter_edges,
        "inter_vertices": lambda n: n.inter_vertices,
        "expansion_upper_report": lambda n: n.expansion_upper_report,
    }.get(metric)
    if getter is None:
        raise ValueError(f"unknown metric {metric!r}")
    return sum(getter(n) for n in nodes) / len(nodes), True


def tree_to_json(tree: HcsTree, include_vertices: bool = False) -> dict:
    """JSON-ready dict; vertex lists (1-based variable ids) behind a flag."""
    nodes = []
    for n in tree.nodes:
        entry = {
            "id": n.id,
            "depth": n.depth,
            "size": n.size,
            "degree": n.community_degree,
            "modularity": n.modularity_here,
            "interEdges": n.inter_edges,
            "interVars": n.inter_vertices,
            "children": list(n.children),
            "leafReason": n.leaf_reason,
        }
        if include_vertices:
            entry["variables"] = [v + 1 for v in n.vertices]
        nodes.append(entry)
    return {
        "root": tree.root,
        "numVertices": tree.num_vertices,
        "seed": tree.seed,
        "maxDepth": tree.max_depth,
        "minSize": tree.min_size,
        "source": tree.source,
        "nodes": nodes,
    }


def tree_to_dot(tree: HcsTree) -> str:
    lines = ["digraph hcs {"]
    for n in tree.nodes:
        q = "" if n.modularity_here is None else f"\\nQ={n.modularity_here:.3f}"
        lines.append(f'  n{n.id} [label="#{n.id} d{n.depth} s{n.size}{q}"];')
    for n in tree.nodes:
        for child in n.children:
            lines.append(f"  n{n.id} -> n{child};")
    lines.append("}")
    return "\n".join(lines) + "\n"
