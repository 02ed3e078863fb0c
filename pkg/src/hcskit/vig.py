"""Variable incidence graphs.

One vertex per variable (vertex i is variable i+1); an edge joins two
variables whenever they co-occur in a clause, so a width-w clause induces a
w-clique. The graph is simple and undirected; variables that occur in no
clause stay as isolated vertices. Adjacency lists are sorted ascending so
every traversal in the toolkit is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cnf import Cnf


@dataclass(frozen=True)
class Vig:
    num_vertices: int
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.num_vertices) for v in self.adjacency[u] if u < v]

    @staticmethod
    def from_edges(num_vertices: int, edges) -> "Vig":
        """Build from an iterable of vertex pairs; loops and repeats collapse."""
        neighbor_sets: list[set[int]] = [set() for _ in range(num_vertices)]
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        return Vig(num_vertices, tuple(tuple(sorted(s)) for s in neighbor_sets))


def build_vig(cnf: Cnf) -> Vig:
    """The variable incidence graph of a formula; polarity is ignored."""
    neighbor_sets: list[set[int]] = [set() for _ in range(cnf.num_vars)]
    for clause in cnf.clauses:
        variables = sorted({abs(lit) - 1 for lit in clause})
        for i, u in enumerate(variables):
            for v in variables[i + 1 :]:
                neighbor_sets[u].add(v)
                neighbor_sets[v].add(u)
    return Vig(cnf.num_vars, tuple(tuple(sorted(s)) for s in neighbor_sets))


def connected_components(vig: Vig) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by smallest member."""
    seen = [False] * vig.num_vertices
    components: list[list[int]] = []
    for start in range(vig.num_vertices):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        comp = [start]
        while queue:
            u = queue.popleft()
            for v in vig.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        components.append(sorted(comp))
    return components


def induced_subgraph(vig: Vig, vertices) -> tuple[Vig, list[int]]:
    """Subgraph on the given vertices plus the local-to-global vertex map.

    Local indices follow ascending global order; edges leaving the set are
    dropped.
    """
    ordered = sorted(set(vertices))
    local = {g: i for i, g in enumerate(ordered)}
    adjacency = tuple(
        tuple(local[v] for v in vig.adjacency[g] if v in local) for g in ordered
    )
    return Vig(len(ordered), adjacency), ordered


def to_dot(vig: Vig, name: str = "vig") -> str:
    """Graphviz DOT rendering with variables as 1-based labels."""
    lines = [f"graph {name} {{"]
    for v in range(vig.num_vertices):
        lines.append(f"  v{v + 1};")
    for u, v in vig.edges():
        lines.append(f"  v{u + 1} -- v{v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
