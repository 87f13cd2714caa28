"""Seeded stratified hold-out splits and k-fold plans."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _class_indices(y) -> dict[int, np.ndarray]:
    y = np.asarray(y).ravel()
    classes = np.unique(y)
    if len(classes) < 2:
        raise ValueError("stratified splitting needs both classes present")
    return {int(c): np.nonzero(y == c)[0] for c in classes}


def holdout_counts(class_sizes: dict[int, int], test_fraction: float) -> dict[int, int]:
    """Per-class test sizes by floor-then-distribute.

    The overall test size is ``round(n * test_fraction)`` (halves round up).
    Each class first gets ``floor(n_c * test_fraction)``; leftover rows go to
    the classes with the largest fractional remainders, lower label first on ties.
    """
    n = sum(class_sizes.values())
    target = int(np.floor(n * test_fraction + 0.5))
    exact = {c: s * test_fraction for c, s in class_sizes.items()}
    counts = {c: int(np.floor(e + 1e-9)) for c, e in exact.items()}
    order = sorted(class_sizes, key=lambda c: (-(exact[c] - counts[c]), c))
    i = 0
    while sum(counts.values()) < target:
        c = order[i % len(order)]
        if counts[c] < class_sizes[c]:
            counts[c] += 1
        i += 1
    return counts


def train_test_indices(y, train_fraction: float = 0.8, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Sorted (train, test) row indices of a stratified shuffle split."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie in (0, 1)")
    y = np.asarray(y).ravel()
    if len(y) < 5:
        raise ValueError("need at least 5 rows to split")
    groups = _class_indices(y)
    counts = holdout_counts({c: len(ix) for c, ix in groups.items()}, 1.0 - train_fraction)
    rng = np.random.default_rng(seed)
    train, test = [], []
    for c in sorted(groups):
        perm = rng.permutation(groups[c])
        test.append(perm[: counts[c]])
        train.append(perm[counts[c]:])
    return np.sort(np.concatenate(train)), np.sort(np.concatenate(test))


def train_test_split(X, y, train_fraction: float = 0.8, seed: int = 0):
    """Stratified split returning ``X_train, X_test, y_train, y_test``."""
    X = np.asarray(X)
    y = np.asarray(y).ravel()
    if X.shape[0] != len(y):
        raise ValueError("X and y differ in length")
    tr, te = train_test_indices(y, train_fraction, seed)
    return X[tr], X[te], y[tr], y[te]


@dataclass(frozen=True)
class FoldPlan:
    seed: int
    k: int
    folds: tuple[np.ndarray, ...]

    @classmethod
    def stratified(cls, y, k: int = 10, seed: int = 0) -> "FoldPlan":
        """Shuffle each class with one seeded generator, then deal rows round-robin.

        Classes are dealt in label order and the dealing position carries over
        from one class to the next, so fold sizes differ by at most one and each
        class contributes floor or ceil of ``n_c / k`` rows to every fold.
        """
        y = np.asarray(y).ravel()
        if k < 2:
            raise ValueError("k must be at least 2")
        groups = _class_indices(y)
        small = {c: len(ix) for c, ix in groups.items() if len(ix) < k}
        if small:
            raise ValueError(
                f"class sizes {small} are below k={k}; use a smaller k (at most {min(map(len, groups.values()))})"
            )
        rng = np.random.default_rng(seed)
        buckets: list[list[int]] = [[] for _ in range(k)]
        pos = 0
        for c in sorted(groups):
            for i in rng.permutation(groups[c]):
                buckets[pos % k].append(int(i))
                pos += 1
        return cls(seed, k, tuple(np.sort(np.array(b, dtype=np.int64)) for b in buckets))

    def splits(self, n_rows: int):
        """Yield ``(train, test)`` index arrays per fold."""
        for test in self.folds:
            mask = np.ones(n_rows, dtype=bool)
            mask[test] = False
            yield np.nonzero(mask)[0], test
