"""Feature fusion: concatenation, scaling, and Pearson-correlation pruning."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .matrix import FeatureMatrix, concat
from .learn._validation import check_array, check_is_fitted, check_n_features
from .learn.serialize import register

__all__ = [
    "CorrelationPruner",
    "FusionSpec",
    "MinMaxScaler",
    "StandardScaler",
    "concat",
    "correlation_matrix",
    "pearson",
    "prune_correlated",
    "scale",
]


def pearson(x, y) -> float:
    """cov(x, y) / (sd(x) sd(y)); 0.0 when either column is constant."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("pearson needs at least two observations")
    # exact constancy check: a rounded mean would leave tiny spurious deviations
    if x.min() == x.max() or y.min() == y.max():
        return 0.0
    dx = x - x.mean()
    dy = y - y.mean()
    sx = np.sqrt(dx @ dx)
    sy = np.sqrt(dy @ dy)
    den = sx * sy
    if den == 0.0:  # spread underflowed (subnormal values)
        return 0.0
    r = float((dx @ dy) / den)
    return min(1.0, max(-1.0, r))


def correlation_matrix(X) -> np.ndarray:
    """All pairwise Pearson coefficients of the columns of ``X``; constant columns give 0."""
    X = np.asarray(X, dtype=np.float64)
    D = X - X.mean(axis=0)
    norms = np.sqrt(np.einsum("ij,ij->j", D, D))
    live = (X.min(axis=0) < X.max(axis=0)) & (norms > 0) if len(X) else np.zeros(X.shape[1], bool)
    Z = np.zeros_like(D)
    Z[:, live] = D[:, live] / norms[live]
    R = Z.T @ Z
    np.clip(R, -1.0, 1.0, out=R)
    np.fill_diagonal(R, np.where(live, 1.0, 0.0))
    return R


@register
class MinMaxScaler(TransformerMixin, BaseEstimator):
    """(x - min) / (max - min) with training-set extremes; constant columns map to 0."""

    def fit(self, X, y=None):
        X = check_array(X)
        self.min_ = X.min(axis=0)
        self.range_ = X.max(axis=0) - self.min_
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "min_")
        X = check_n_features(self, check_array(X))
        safe = np.where(self.range_ > 0, self.range_, 1.0)
        out = (X - self.min_) / safe
        out[:, self.range_ == 0] = 0.0
        return out


@register
class StandardScaler(TransformerMixin, BaseEstimator):
    """(x - mean) / sd with population sd; zero-variance columns map to 0."""

    def fit(self, X, y=None):
        X = check_array(X)
        self.mean_ = X.mean(axis=0)
        self.scale_ = X.std(axis=0)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "mean_")
        X = check_n_features(self, check_array(X))
        safe = np.where(self.scale_ > 0, self.scale_, 1.0)
        out = (X - self.mean_) / safe
        out[:, self.scale_ == 0] = 0.0
        return out


def scale(m: FeatureMatrix, mode: str = "minmax"):
    """Scale every column of ``m``; returns ``(scaled matrix, fitted scaler)``."""
    if m.shape[0] < 2:
        raise ValueError("scaling needs at least two rows")
    scaler = {"minmax": MinMaxScaler, "zscore": StandardScaler}[mode]().fit(m.values)
    out = FeatureMatrix(scaler.transform(m.values), m.columns, m.provenance, {**m.meta, "scaler": mode})
    return out, scaler


@register
class CorrelationPruner(TransformerMixin, BaseEstimator):
    """Greedy removal of one column from every pair with |rho| > threshold.

    Pairs (i, j), i < j, are visited in index order. When both columns are
    still present and correlated beyond the threshold, the column less
    correlated with the labels (absolute value) is dropped; on a tie the
    higher index goes. Afterwards no surviving pair exceeds the threshold.
    """

    def __init__(self, threshold=0.7):
        self.threshold = threshold

    def fit(self, X, y):
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must lie in (0, 1)")
        X = check_array(X)
        y = np.asarray(y, dtype=np.float64).ravel()
        if len(y) != X.shape[0]:
            raise ValueError("X and y differ in length")
        d = X.shape[1]
        R = correlation_matrix(X)
        label_r = np.array([abs(pearson(X[:, j], y)) if X.shape[0] >= 2 else 0.0 for j in range(d)])
        keep = np.ones(d, dtype=bool)
        log = []
        for i in range(d):
            if not keep[i]:
                continue
            hits = np.nonzero(keep & (np.abs(R[i]) > self.threshold))[0]
            for j in hits[hits > i]:
                if not keep[j]:
                    continue
                drop, partner = (i, j) if label_r[i] < label_r[j] else (j, i)
                keep[drop] = False
                log.append((int(drop), int(partner), float(R[i, j])))
                if drop == i:
                    break
        self.support_ = keep
        self.drop_log_ = log
        self.label_correlation_ = label_r
        self.n_features_in_ = d
        return self

    def transform(self, X):
        check_is_fitted(self, "support_")
        X = check_n_features(self, check_array(X))
        return X[:, self.support_]

    def get_support(self, indices=False):
        check_is_fitted(self, "support_")
        return np.nonzero(self.support_)[0] if indices else self.support_.copy()


@dataclass
class FusionSpec:
    wv_mode: str = "WVF2"
    scaler: str = "minmax"
    corr_threshold: float = 0.7
    drop_log: list = field(default_factory=list)

    def __post_init__(self):
        if not 0.0 < self.corr_threshold < 1.0:
            raise ValueError("corr_threshold must lie in (0, 1)")
        if self.wv_mode not in ("WVF1", "WVF2"):
            raise ValueError("wv_mode must be WVF1 or WVF2")
        if self.scaler not in ("minmax", "zscore"):
            raise ValueError("scaler must be minmax or zscore")


def prune_correlated(m: FeatureMatrix, labels, threshold: float = 0.7):
    """Return ``(pruned matrix, drop_log)``; log entries name dropped and kept columns."""
    pruner = CorrelationPruner(threshold).fit(m.values, labels)
    cols = tuple(c for c, k in zip(m.columns, pruner.support_) if k)
    log = [
        {"dropped": m.columns[d], "kept": m.columns[p], "rho": r}
        for d, p, r in pruner.drop_log_
    ]
    out = FeatureMatrix(m.values[:, pruner.support_], cols, m.provenance,
                        {**m.meta, "corr_threshold": threshold})
    return out, log
