"""Tabular ML harness for CNF structure feature tables.

Consumes the 49-column feature CSV produced by the structure toolkit and
evaluates how well those features predict instance labels or numeric
targets. All entry points are deterministic given their seed.
"""

__version__ = "0.1.0"

from mlharness.data import Dataset
from mlharness.evaluate import EvalReport, classify, regress
from mlharness.importance import ImportanceEntry, cluster_features, feature_importance

__all__ = [
    "Dataset",
    "EvalReport",
    "ImportanceEntry",
    "classify",
    "cluster_features",
    "feature_importance",
    "regress",
]
