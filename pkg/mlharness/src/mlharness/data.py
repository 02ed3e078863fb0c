"""Loading the feature CSV into an in-memory dataset."""

import csv
from dataclasses import dataclass

import numpy as np

from mlharness.errors import SchemaError
from mlharness.schema import EXPECTED_HEADER, FEATURE_COLUMNS, LABEL_COLUMN


@dataclass(frozen=True)
class Dataset:
    """One feature table: ids, raw label strings, and the numeric matrix.

    matrix has one row per instance and one column per FEATURE_COLUMNS
    entry, in schema order.
    """

    instances: tuple[str, ...]
    labels: tuple[str, ...]
    matrix: np.ndarray
    feature_names: tuple[str, ...] = FEATURE_COLUMNS

    @property
    def rows(self) -> int:
        return len(self.instances)

    def column(self, name: str) -> np.ndarray:
        return self.matrix[:, self.feature_names.index(name)]

    def numeric_target(self, column: str) -> tuple[np.ndarray, np.ndarray, int]:
        """Target values plus the predictor matrix for that choice.

        column may be the label column or any feature column; a feature
        column used as target is removed from the predictors. Returns
        (y, X, predictor count).
        """
        if column == LABEL_COLUMN:
            try:
                y = np.array([float(v) for v in self.labels], dtype=float)
            except ValueError as exc:
                raise SchemaError(f"label column is not numeric: {exc}") from None
            return y, self.matrix, self.matrix.shape[1]
        if column not in self.feature_names:
            raise SchemaError(f"unknown target column {column!r}")
        index = self.feature_names.index(column)
        keep = [i for i in range(self.matrix.shape[1]) if i != index]
        return self.matrix[:, index], self.matrix[:, keep], len(keep)

    def class_labels(self, column: str) -> tuple[tuple[str, ...], np.ndarray, int]:
        """Class label per row plus the predictor matrix for that choice."""
        if column == LABEL_COLUMN:
            return self.labels, self.matrix, self.matrix.shape[1]
        if column not in self.feature_names:
            raise SchemaError(f"unknown label column {column!r}")
        index = self.feature_names.index(column)
        keep = [i for i in range(self.matrix.shape[1]) if i != index]
        values = tuple(repr(float(v)) for v in self.matrix[:, index])
        return values, self.matrix[:, keep], len(keep)

    @staticmethod
    def from_csv(path: str) -> "Dataset":
        with open(path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            try:
                header = tuple(next(reader))
            except StopIteration:
                raise SchemaError(f"{path}: empty file") from None
            if header != EXPECTED_HEADER:
                raise SchemaError(
                    f"{path}: header does not match the feature table schema "
                    f"(got {len(header)} columns, expected {len(EXPECTED_HEADER)})"
                )
            instances: list[str] = []
            labels: list[str] = []
            values: list[list[float]] = []
            for line_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(EXPECTED_HEADER):
                    raise SchemaError(f"{path}:{line_no}: wrong column count")
                try:
                    values.append([float(cell) for cell in row[2:]])
                except ValueError:
                    raise SchemaError(f"{path}:{line_no}: non-numeric feature cell") from None
                instances.append(row[0])
                labels.append(row[1])
        matrix = np.array(values, dtype=float) if values else np.empty((0, len(FEATURE_COLUMNS)))
        return Dataset(tuple(instances), tuple(labels), matrix)
