"""Deterministic cross-validation fold assignment.

The assignment is a pure function of (seed, rows, folds): it never looks at
features or labels, and it avoids Python's randomized hashing so the same
inputs give the same folds in every process.
"""

import hashlib
import random
import struct


def _mix(*values: int) -> int:
    packed = struct.pack(f"<{len(values)}q", *values)
    return int.from_bytes(hashlib.blake2b(packed, digest_size=8).digest(), "little")


def fold_assignment(seed: int, rows: int, folds: int = 5) -> tuple[int, ...]:
    """Fold id in [0, folds) for each row, balanced to within one row."""
    if folds < 2:
        raise ValueError(f"need at least 2 folds, got {folds}")
    if rows < folds:
        raise ValueError(f"need at least {folds} rows for {folds} folds, got {rows}")
    rng = random.Random(_mix(seed, rows, folds))
    order = list(range(rows))
    rng.shuffle(order)
    assignment = [0] * rows
    for position, row in enumerate(order):
        assignment[row] = position % folds
    return tuple(assignment)


def model_seed(seed: int, fold: int) -> int:
    """Per-fold model seed in the 32-bit range sklearn accepts."""
    return _mix(seed, 0x6D6F64656C, fold) % (2**32)
