"""Cross-validated classification and regression over a feature table."""

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sklearn.ensemble import RandomForestClassifier, RandomForestRegressor
from sklearn.metrics import balanced_accuracy_score

from mlharness.data import Dataset
from mlharness.errors import (
    ClassTooSmallError,
    ConstantLabelsError,
    ConstantTargetError,
    TooFewRowsError,
)
from mlharness.folds import fold_assignment, model_seed

N_TREES = 200
REGRESSION_MIN_ROWS = 51  # adjustment with 49 predictors needs n - 50 >= 1


@dataclass(frozen=True)
class EvalReport:
    """Outcome of one cross-validated evaluation."""

    task: str  # "classify" or "regress"
    metric: str
    score: float
    fold_scores: tuple[float, ...]
    folds: int
    seed: int
    rows: int
    predictors: int
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.task == "classify" and not 0.0 <= self.score <= 1.0:
            raise ValueError(f"balanced accuracy out of range: {self.score}")
        if self.score > 1.0:
            raise ValueError(f"score above 1: {self.score}")

    def to_json(self) -> str:
        from mlharness import __version__

        payload = {
            "tool": {"name": "mlharness", "version": __version__},
            "task": self.task,
            "metric": self.metric,
            "score": self.score,
            "foldScores": list(self.fold_scores),
            "folds": self.folds,
            "seed": self.seed,
            "rows": self.rows,
            "predictors": self.predictors,
            "detail": self.detail,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _check_classes(labels, folds: int) -> None:
    counts = Counter(labels)
    if len(counts) < 2:
        raise ConstantLabelsError("need at least two distinct classes")
    small = {cls: n for cls, n in counts.items() if n < folds}
    if small:
        raise ClassTooSmallError(
            f"classes with fewer rows than folds ({folds}): {sorted(small)}"
        )


def classify(
    csv_path: str, label_col: str = "label", seed: int = 0, folds: int = 5
) -> EvalReport:
    """Mean balanced accuracy of a tree-ensemble classifier over k folds."""
    dataset = Dataset.from_csv(csv_path)
    labels, matrix, predictors = dataset.class_labels(label_col)
    _check_classes(labels, folds)
    y = np.array(labels)
    assignment = np.array(fold_assignment(seed, dataset.rows, folds))

    scores: list[float] = []
    for fold in range(folds):
        test = assignment == fold
        model = RandomForestClassifier(
            n_estimators=N_TREES, random_state=model_seed(seed, fold), n_jobs=1
        )
        model.fit(matrix[~test], y[~test])
        scores.append(float(balanced_accuracy_score(y[test], model.predict(matrix[test]))))

    counts = Counter(labels)
    return EvalReport(
        task="classify",
        metric="balancedAccuracy",
        score=float(np.mean(scores)),
        fold_scores=tuple(scores),
        folds=folds,
        seed=seed,
        rows=dataset.rows,
        predictors=predictors,
        detail={"classes": {cls: counts[cls] for cls in sorted(counts)}},
    )


def _r2(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    ss_tot = float(np.sum((y_true - y_true.mean()) ** 2))
    if ss_tot == 0.0:
        return 0.0
    ss_res = float(np.sum((y_true - y_pred) ** 2))
    return 1.0 - ss_res / ss_tot


def regress(
    csv_path: str, target_col: str = "label", seed: int = 0, folds: int = 5
) -> EvalReport:
    """Adjusted R-squared of a tree-ensemble regressor on held-out folds.

    Out-of-fold predictions are pooled into one R-squared, then adjusted
    for the number of predictor columns.
    """
    dataset = Dataset.from_csv(csv_path)
    if dataset.rows < REGRESSION_MIN_ROWS:
        raise TooFewRowsError(
            f"regression needs more than 50 rows, got {dataset.rows}"
        )
    y, matrix, predictors = dataset.numeric_target(target_col)
    if float(y.min()) == float(y.max()):
        raise ConstantTargetError("target column has zero variance")
    assignment = np.array(fold_assignment(seed, dataset.rows, folds))

    predicted = np.zeros_like(y)
    fold_scores: list[float] = []
    for fold in range(folds):
        test = assignment == fold
        model = RandomForestRegressor(
            n_estimators=N_TREES, random_state=model_seed(seed, fold), n_jobs=1
        )
        model.fit(matrix[~test], y[~test])
        predicted[test] = model.predict(matrix[test])
        fold_scores.append(_r2(y[test], predicted[test]))

    r2 = _r2(y, predicted)
    n = dataset.rows
    adjusted = 1.0 - (1.0 - r2) * (n - 1) / (n - predictors - 1)
    return EvalReport(
        task="regress",
        metric="adjustedR2",
        score=adjusted,
        fold_scores=tuple(fold_scores),
        folds=folds,
        seed=seed,
        rows=n,
        predictors=predictors,
        detail={"r2": r2},
    )
