"""Shared helpers: synthetic feature tables that honor the CSV contract."""

import csv
import random

from mlharness.schema import EXPECTED_HEADER, FEATURE_COLUMNS


def synthetic_csv(path, count, seed=0, label=None, columns=None):
    """Write a schema-conformant feature CSV and return its path.

    Every cell defaults to a seeded uniform draw. label maps row index to
    the label string; columns maps a feature name to a callable(row index)
    overriding that cell.
    """
    rng = random.Random(seed)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(EXPECTED_HEADER)
        for i in range(count):
            cells = {name: rng.random() for name in FEATURE_COLUMNS}
            if columns:
                for name, fn in columns.items():
                    cells[name] = float(fn(i))
            row_label = label(i) if label else "x"
            writer.writerow(
                [f"r{i}", row_label, *[repr(cells[name]) for name in FEATURE_COLUMNS]]
            )
    return str(path)
