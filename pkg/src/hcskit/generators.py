"""Instance generators: planted hierarchical formulas and reference constructions.

The planted generator builds a perfect c-ary hierarchy bottom-up: c^h leaf
blocks of leaf_size fresh variables get random width-k clauses over their own
variables, then each grouping level receives bridge clauses whose k variables
come from k distinct sub-communities (drawn from an iv-fraction pool fixed
per sub-community per level). The bridge budget is taken off the CVR budget
first; leaf clause counts absorb the slack so that the total clause count is
round(cvr * numVars).

All constructions consume a single random.Random(seed) stream in a documented
order (leaf clauses by block index, then bridge clauses by level), so the
same parameters and seed regenerate byte-identical DIMACS.
"""

from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass

from .cnf import Clause, Cnf
from .errors import (
    BadParamsError,
    DegreeTooHighError,
    InfeasibleBudgetError,
)
from .hcs import HcsNode, HcsTree, derive_seed, graph_fingerprint
from .vig import Vig, build_vig, connected_components

TSEITIN_MAX_DEGREE = 8


@dataclass(frozen=True)
class GenParams:
    depth: int
    degree: int
    leaf_size: int
    clause_width: int = 3
    cvr: float = 2.5
    powerlaw_beta: float | None = None
    bridge_fraction: float = 0.025
    inter_var_fraction: float = 0.5
    seed: int = 0

    @property
    def num_vars(self) -> int:
        return self.leaf_size * self.degree**self.depth

    @property
    def num_leaves(self) -> int:
        return self.degree**self.depth


@dataclass(frozen=True)
class PlantedInstance:
    cnf: Cnf
    planted_tree: HcsTree
    params: GenParams


def _validate(p: GenParams) -> None:
    if p.depth < 1:
        raise BadParamsError("depth must be at least 1")
    if p.degree < 2:
        raise BadParamsError("degree must be at least 2")
    if p.leaf_size < 2:
        raise BadParamsError("leaf_size must be at least 2")
    if p.clause_width < 2:
        raise BadParamsError("clause_width must be at least 2")
    if p.clause_width > p.degree:
        raise BadParamsError("clause_width exceeds degree: bridge clauses need k distinct sub-communities")
    if p.clause_width > p.leaf_size:
        raise BadParamsError("clause_width exceeds leaf_size: leaf clauses need k distinct variables")
    if p.cvr <= 0:
        raise BadParamsError("cvr must be positive")
    if p.bridge_fraction < 0:
        raise BadParamsError("bridge_fraction must be non-negative")
    if not 0 < p.inter_var_fraction <= 1:
        raise BadParamsError("inter_var_fraction must be in (0, 1]")
    if p.inter_var_fraction * p.leaf_size < 1:
        raise BadParamsError("inter_var_fraction * leaf_size below one variable")


def _powerlaw_sample(rng: random.Random, pool: list[int], k: int, beta: float) -> list[int]:
    """k distinct picks; rank r in the pool gets weight r^(-beta)."""
    cum = list(itertools.accumulate((r + 1) ** -beta for r in range(len(pool))))
    total = cum[-1]
    chosen: list[int] = []
    seen: set[int] = set()
    while len(chosen) < k:
        var = pool[bisect.bisect_right(cum, rng.random() * total)]
        if var not in seen:
            seen.add(var)
            chosen.append(var)
    return chosen


def _planted_tree(params: GenParams) -> list[HcsNode]:
    """Perfect c-ary tree over contiguous variable blocks, BFS ids."""
    n = params.num_vars
    nodes = [
        HcsNode(
            id=0,
            vertices=tuple(range(n)),
            depth=1,
            parent=None,
            seed=params.seed,
            leaf_reason=None,
        )
    ]
    frontier = [0]
    for _ in range(params.depth):
        next_frontier: list[int] = []
        for node_id in frontier:
            node = nodes[node_id]
            block = len(node.vertices) // params.degree
            for index in range(params.degree):
                child = HcsNode(
                    id=len(nodes),
                    vertices=node.vertices[index * block : (index + 1) * block],
                    depth=node.depth + 1,
                    parent=node.id,
                    seed=derive_seed(node.seed, index),
                )
                node.children.append(child.id)
                nodes.append(child)
                next_frontier.append(child.id)
        frontier = next_frontier
    for node_id in frontier:
        nodes[node_id].leaf_reason = "natural"
    return nodes


def generate(params: GenParams) -> PlantedInstance:
    """Planted hierarchical formula with ground-truth tree.

    Raises InfeasibleBudgetError when the bridge clauses alone exceed the
    round(cvr * numVars) budget, BadParamsError on invalid parameters.
    """
    _validate(params)
    rng = random.Random(params.seed)
    h, c, ell, k = params.depth, params.degree, params.leaf_size, params.clause_width
    n = params.num_vars
    num_leaves = params.num_leaves
    total_budget = round(params.cvr * n)

    bridges_at = [
        int(params.bridge_fraction * (ell * c**i)) for i in range(1, h + 1)
    ]
    bridge_budget = sum(
        c ** (h - i) * bridges_at[i - 1] for i in range(1, h + 1)
    )
    if bridge_budget > total_budget:
        raise InfeasibleBudgetError(
            f"{bridge_budget} bridge clauses exceed the budget of {total_budget}"
        )

    leaf_budget = total_budget - bridge_budget
    base, extra = divmod(leaf_budget, num_leaves)
    clauses: list[Clause] = []

    for leaf in range(num_leaves):
        leaf_vars = list(range(leaf * ell + 1, (leaf + 1) * ell + 1))
        count = base + (1 if leaf < extra else 0)
        for _ in range(count):
            if params.powerlaw_beta is None:
                picks = rng.sample(leaf_vars, k)
            else:
                picks = _powerlaw_sample(rng, leaf_vars, k, params.powerlaw_beta)
            clauses.append(
                tuple(v if rng.getrandbits(1) else -v for v in picks)
            )

    for i in range(1, h + 1):
        sub_size = ell * c ** (i - 1)
        super_size = sub_size * c
        for group in range(c ** (h - i)):
            start = group * super_size
            pools = []
            for sub in range(c):
                sub_vars = list(
                    range(start + sub * sub_size + 1, start + (sub + 1) * sub_size + 1)
                )
                pools.append(rng.sample(sub_vars, int(params.inter_var_fraction * sub_size)))
            for _ in range(bridges_at[i - 1]):
                subs = rng.sample(range(c), k)
                picks = [rng.choice(pools[sub]) for sub in subs]
                clauses.append(
                    tuple(v if rng.getrandbits(1) else -v for v in picks)
                )

    cnf = Cnf(num_vars=n, clauses=tuple(clauses), origin="generated")
    tree = HcsTree(
        nodes=_planted_tree(params),
        num_vertices=n,
        seed=params.seed,
        max_depth=h + 1,
        min_size=1,
        source=graph_fingerprint(build_vig(cnf)),
    )
    return PlantedInstance(cnf=cnf, planted_tree=tree, params=params)


def planted_sidecar(instance: PlantedInstance) -> dict:
    """JSON-ready ground truth: parameters plus per-node variable lists."""
    p = instance.params
    return {
        "kind": "planted",
        "params": {
            "depth": p.depth,
            "degree": p.degree,
            "leafSize": p.leaf_size,
            "clauseWidth": p.clause_width,
            "cvr": p.cvr,
            "powerlawBeta": p.powerlaw_beta,
            "bridgeFraction": p.bridge_fraction,
            "interVarFraction": p.inter_var_fraction,
            "seed": p.seed,
        },
        "numVars": p.num_vars,
        "numClauses": len(instance.cnf.clauses),
        "tree": [
            {
                "id": node.id,
                "depth": node.depth,
                "parent": node.parent,
                "children": list(node.children),
                "variables": [v + 1 for v in node.vertices],
            }
            for node in instance.planted_tree.nodes
        ],
    }


def ring_of_cliques(q: int, c: int, seed: int = 0) -> tuple[Vig, Cnf]:
    """q cliques of size c joined in a ring through one canonical vertex each.

    Vertices j*c .. j*c+c-1 form clique j; vertex j*c links to the next
    clique's canonical vertex. The companion CNF has one binary clause per
    edge with seeded random polarities.
    """
    if q < 3:
        raise BadParamsError("need q >= 3: a 2-ring would duplicate an edge")
    if c < 3:
        raise BadParamsError("need c >= 3")
    edges: list[tuple[int, int]] = []
    for j in range(q):
        block = range(j * c, (j + 1) * c)
        edges.extend(itertools.combinations(block, 2))
    for j in range(q):
        u = j * c
        v = ((j + 1) % q) * c
        edges.append((min(u, v), max(u, v)))
    vig = Vig.from_edges(q * c, edges)
    rng = random.Random(seed)
    clauses = tuple(
        (
            (u + 1) if rng.getrandbits(1) else -(u + 1),
            (v + 1) if rng.getrandbits(1) else -(v + 1),
        )
        for u, v in vig.edges()
    )
    return vig, Cnf(num_vars=q * c, clauses=clauses, origin="generated")


def ring_cliques_blocks(q: int, c: int) -> list[tuple[int, ...]]:
    """The planted clique vertex sets of ring_of_cliques(q, c)."""
    return [tuple(range(j * c, (j + 1) * c)) for j in range(q)]


def disjoint_copies(f: Cnf, t: int) -> Cnf:
    """t variable-disjoint copies; copy i shifts variables by i * num_vars."""
    if t < 1:
        raise BadParamsError("need t >= 1")
    clauses: list[Clause] = []
    for copy in range(t):
        offset = copy * f.num_vars
        for clause in f.clauses:
            clauses.append(
                tuple(lit + offset if lit > 0 else lit - offset for lit in clause)
            )
    return Cnf(num_vars=f.num_vars * t, clauses=tuple(clauses), origin="generated")


def rooted_clique_product(f: Cnf, p: int, t: int = 2) -> Cnf:
    """Attach a p-variable block formula to every variable of f.

    Block i consists of variable i plus p-1 fresh variables. Its formula is
    a width-t positive CNF in which every pair of block variables co-occurs
    in some clause (one clause per pair, so at most C(p,2) <= p^2 clauses);
    any assignment with fewer than t false block variables satisfies it, in
    particular all-true. The VIG of the result is the VIG of f with a
    p-clique rooted at every variable.
    """
    if p < 2:
        raise BadParamsError("need p >= 2")
    if not 2 <= t <= p:
        raise BadParamsError("need 2 <= t <= p")
    clauses: list[Clause] = list(f.clauses)
    fresh = f.num_vars
    for i in range(1, f.num_vars + 1):
        block = [i] + [fresh + j for j in range(1, p)]
        fresh += p - 1
        for a_idx, b_idx in itertools.combinations(range(p), 2):
            clause = [block[a_idx], block[b_idx]]
            fill = b_idx
            while len(clause) < t:
                fill = (fill + 1) % p
                if fill != a_idx and fill != b_idx:
                    clause.append(block[fill])
            clauses.append(tuple(clause))
    return Cnf(num_vars=fresh, clauses=tuple(clauses), origin="generated")


def random_kcnf(n: int, k: int, cvr: float, seed: int = 0) -> Cnf:
    """round(cvr*n) clauses of k distinct variables, drawn with replacement."""
    if n < 1:
        raise BadParamsError("need n >= 1")
    if not 1 <= k <= n:
        raise BadParamsError("need 1 <= k <= n")
    if cvr <= 0:
        raise BadParamsError("cvr must be positive")
    rng = random.Random(seed)
    variables = list(range(1, n + 1))
    clauses = tuple(
        tuple(v if rng.getrandbits(1) else -v for v in rng.sample(variables, k))
        for _ in range(round(cvr * n))
    )
    return Cnf(num_vars=n, clauses=clauses, origin="generated")


def tseitin(graph: Vig, charges: tuple[int, ...] | None = None, seed: int = 0) -> Cnf:
    """Parity contradiction formula over a connected graph.

    One variable per edge (edges numbered in sorted order); each vertex v
    contributes 2^(deg-1) clauses ruling out every incident-edge assignment
    whose XOR differs from charges[v]. Unsatisfiable iff the total charge is
    odd. The construction itself is deterministic; seed is accepted for
    interface uniformity with the other generators.

    Default charges put a single odd charge on vertex 0.
    """
    del seed
    n = graph.num_vertices
    if n < 2:
        raise BadParamsError("need at least two vertices")
    if len(connected_components(graph)) != 1:
        raise BadParamsError("graph must be connected")
    if max(graph.degrees) > TSEITIN_MAX_DEGREE:
        raise DegreeTooHighError(
            f"vertex degree above {TSEITIN_MAX_DEGREE} blows up 2^(d-1) clauses"
        )
    if charges is None:
        charges = (1,) + (0,) * (n - 1)
    if len(charges) != n or any(bit not in (0, 1) for bit in charges):
        raise BadParamsError("charges must be one bit per vertex")

    edge_var = {edge: idx + 1 for idx, edge in enumerate(graph.edges())}
    clauses: list[Clause] = []
    for v in range(n):
        incident = [
            edge_var[(min(v, u), max(v, u))] for u in graph.adjacency[v]
        ]
        d = len(incident)
        for bits in itertools.product((0, 1), repeat=d):
            if sum(bits) % 2 == charges[v]:
                continue
            # clause falsified exactly by this parity-violating assignment
            clauses.append(
                tuple(-x if bit else x for x, bit in zip(incident, bits))
            )
    return Cnf(num_vars=len(edge_var), clauses=tuple(clauses), origin="generated")


def cycle_graph(n: int) -> Vig:
    if n < 3:
        raise BadParamsError("need n >= 3")
    return Vig.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Vig:
    if n < 2:
        raise BadParamsError("need n >= 2")
    return Vig.from_edges(n, list(itertools.combinations(range(n), 2)))
