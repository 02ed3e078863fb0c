"""Community-structure analysis of CNF formulas through variable incidence graphs."""

from .cnf import BaseFeatures, Clause, Cnf, base_features, parse_dimacs, render_dimacs
from .community import (
    Partition,
    PartitionMetrics,
    best_two_partition,
    brute_force_best_partition,
    louvain,
    modularity,
    partition_metrics,
)
from .expansion import ExpansionReport, edge_expansion_exact, hcs_expansion_audit, subset_expansion
from .features import FEATURE_NAMES, FeatureVector, extract, write_csv
from .generators import (
    GenParams,
    PlantedInstance,
    disjoint_copies,
    generate,
    random_kcnf,
    ring_of_cliques,
    rooted_clique_product,
    tseitin,
)
from .hcs import HcsNode, HcsTree, decompose, level_aggregate, node_metrics
from .mergeability import MergeReport, community_merge_scores, merge_scores, resolvable
from .vig import Vig, build_vig, connected_components, induced_subgraph

__version__ = "0.1.0"

__all__ = [
    "BaseFeatures",
    "Clause",
    "Cnf",
    "ExpansionReport",
    "FEATURE_NAMES",
    "FeatureVector",
    "GenParams",
    "HcsNode",
    "HcsTree",
    "MergeReport",
    "Partition",
    "PartitionMetrics",
    "PlantedInstance",
    "Vig",
    "__version__",
    "base_features",
    "best_two_partition",
    "brute_force_best_partition",
    "build_vig",
    "community_merge_scores",
    "connected_components",
    "decompose",
    "disjoint_copies",
    "edge_expansion_exact",
    "extract",
    "generate",
    "hcs_expansion_audit",
    "induced_subgraph",
    "level_aggregate",
    "louvain",
    "merge_scores",
    "modularity",
    "node_metrics",
    "parse_dimacs",
    "partition_metrics",
    "random_kcnf",
    "render_dimacs",
    "resolvable",
    "ring_of_cliques",
    "rooted_clique_product",
    "subset_expansion",
    "tseitin",
    "write_csv",
]
