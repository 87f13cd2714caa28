"""Per-split pipeline refits: hold-out evaluation and stratified k-fold CV."""
from __future__ import annotations

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from ..fuse import CorrelationPruner, MinMaxScaler, StandardScaler
from ..learn._validation import check_array
from .metrics import EvalReport, aggregate, metrics
from .split import FoldPlan, train_test_indices

SCALER_CHOICES = ("minmax+zscore", "minmax", "zscore", "none")


def build_pipeline(classifier, scaler: str = "minmax+zscore", threshold: float | None = 0.7) -> Pipeline:
    """Scale, prune correlated columns, optionally standardise, then classify.

    Everything before the classifier is fitted on training rows only.
    ``threshold=None`` disables pruning.
    """
    if scaler not in SCALER_CHOICES:
        raise ValueError(f"scaler must be one of {SCALER_CHOICES}")
    steps = []
    if scaler in ("minmax+zscore", "minmax"):
        steps.append(("minmax", MinMaxScaler()))
    elif scaler == "zscore":
        steps.append(("zscore", StandardScaler()))
    if threshold is not None:
        steps.append(("prune", CorrelationPruner(threshold)))
    if scaler == "minmax+zscore":
        steps.append(("zscore", StandardScaler()))
    steps.append(("clf", classifier))
    return Pipeline(steps)


def _fit_score(estimator, X, y, train, test, average, config):
    est = clone(estimator).fit(X[train], y[train])
    return metrics(y[test], est.predict(X[test]), average, config), est


def holdout_evaluate(estimator, X, y, train_fraction: float = 0.8, seed: int = 0,
                     average: str = "binary", config: dict | None = None, return_estimator: bool = False):
    """Fit on a stratified ``train_fraction`` share, score on the rest."""
    X = check_array(X)
    y = np.asarray(y).ravel().astype(np.int64)
    train, test = train_test_indices(y, train_fraction, seed)
    report, est = _fit_score(estimator, X, y, train, test, average, config)
    pct = round(train_fraction * 100)
    report.protocol = f"holdout-{pct}/{100 - pct}"
    return (report, est) if return_estimator else report


def cross_validate(estimator, X, y, k: int = 10, seed: int = 0, average: str = "binary",
                   config: dict | None = None, n_jobs: int = 1, return_estimators: bool = False):
    """Stratified k-fold CV. Every fold refits a fresh clone of ``estimator`` on its training rows.

    Returns the aggregated report (fold means, population std and per-fold
    reports); with ``return_estimators`` also the fitted per-fold clones.
    """
    X = check_array(X)
    y = np.asarray(y).ravel().astype(np.int64)
    if X.shape[0] != len(y):
        raise ValueError("X and y differ in length")
    if X.shape[0] < k:
        raise ValueError(f"{X.shape[0]} rows cannot fill k={k} folds")
    plan = FoldPlan.stratified(y, k, seed)
    jobs = list(plan.splits(len(y)))
    if n_jobs in (None, 1):
        out = [_fit_score(estimator, X, y, tr, te, average, config) for tr, te in jobs]
    else:
        out = Parallel(n_jobs=n_jobs)(
            delayed(_fit_score)(estimator, X, y, tr, te, average, config) for tr, te in jobs
        )
    report = aggregate([r for r, _ in out], config)
    return (report, [e for _, e in out]) if return_estimators else report
