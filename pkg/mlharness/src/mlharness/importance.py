"""Correlation-clustered permutation importance.

Feature tables carry many near-duplicate columns (level ratios, maxima).
Permuting one of a correlated pair leaks through the other, so columns are
first clustered by rank correlation and one representative per cluster is
scored on held-out data.
"""

from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform
from scipy.stats import rankdata
from sklearn.ensemble import RandomForestClassifier
from sklearn.inspection import permutation_importance

from mlharness.data import Dataset
from mlharness.evaluate import N_TREES, _check_classes
from mlharness.folds import fold_assignment, model_seed

DEFAULT_DISTANCE_THRESHOLD = 0.2
PERMUTATION_REPEATS = 10


@dataclass(frozen=True)
class ImportanceEntry:
    feature: str
    column: int
    importance: float
    cluster: tuple[str, ...]


def _spearman_distance(matrix: np.ndarray) -> np.ndarray:
    """1 - |Spearman rho| between columns; constant columns get distance 1."""
    ranks = np.apply_along_axis(rankdata, 0, matrix)
    with np.errstate(invalid="ignore", divide="ignore"):
        rho = np.corrcoef(ranks, rowvar=False)
    rho = np.nan_to_num(rho, nan=0.0)
    distance = 1.0 - np.abs(rho)
    np.fill_diagonal(distance, 0.0)
    return np.clip(distance, 0.0, 1.0)


def cluster_features(
    matrix: np.ndarray, threshold: float = DEFAULT_DISTANCE_THRESHOLD
) -> list[list[int]]:
    """Average-linkage clusters of column indices at the given distance cut.

    A non-positive threshold degenerates to one cluster per column.
    """
    columns = matrix.shape[1]
    if threshold <= 0.0 or columns == 1:
        return [[i] for i in range(columns)]
    distance = _spearman_distance(matrix)
    merges = linkage(squareform(distance, checks=False), method="average")
    flat = fcluster(merges, t=threshold, criterion="distance")
    groups: dict[int, list[int]] = {}
    for column, cluster_id in enumerate(flat):
        groups.setdefault(int(cluster_id), []).append(column)
    return sorted(groups.values(), key=min)


def feature_importance(
    csv_path: str,
    label_col: str = "label",
    seed: int = 0,
    folds: int = 5,
    threshold: float = DEFAULT_DISTANCE_THRESHOLD,
    top: int = 5,
) -> list[ImportanceEntry]:
    """Top cluster representatives by permutation importance on held-out rows.

    Fold 0 of the usual assignment is the holdout; the model trains on the
    rest using only the representative columns (lowest index per cluster).
    """
    dataset = Dataset.from_csv(csv_path)
    labels, matrix, _ = dataset.class_labels(label_col)
    _check_classes(labels, folds)
    names = (
        dataset.feature_names
        if label_col == "label"
        else tuple(n for n in dataset.feature_names if n != label_col)
    )
    y = np.array(labels)
    clusters = cluster_features(matrix, threshold)
    representatives = [min(cluster) for cluster in clusters]

    assignment = np.array(fold_assignment(seed, dataset.rows, folds))
    test = assignment == 0
    model = RandomForestClassifier(
        n_estimators=N_TREES, random_state=model_seed(seed, 0), n_jobs=1
    )
    model.fit(matrix[~test][:, representatives], y[~test])
    result = permutation_importance(
        model,
        matrix[test][:, representatives],
        y[test],
        n_repeats=PERMUTATION_REPEATS,
        random_state=model_seed(seed, folds),
        n_jobs=1,
    )

    order = sorted(
        range(len(representatives)),
        key=lambda i: (-result.importances_mean[i], representatives[i]),
    )
    entries = []
    for i in order[:top]:
        cluster = clusters[i]
        entries.append(
            ImportanceEntry(
                feature=names[representatives[i]],
                column=representatives[i],
                importance=float(result.importances_mean[i]),
                cluster=tuple(names[c] for c in cluster),
            )
        )
    return entries
