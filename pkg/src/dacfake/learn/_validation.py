"""Input checks shared by every estimator."""
from __future__ import annotations

import numpy as np


class NotFittedError(ValueError, AttributeError):
    pass


def check_array(X, name: str = "X") -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return X


def check_X_y(X, y, min_classes: int = 2) -> tuple[np.ndarray, np.ndarray]:
    X = check_array(X)
    y = np.asarray(y).ravel()
    if len(y) != X.shape[0]:
        raise ValueError(f"X has {X.shape[0]} rows but y has {len(y)} labels")
    if y.dtype.kind == "f" and not np.all(np.isfinite(y)):
        raise ValueError("y contains NaN")
    y = y.astype(np.int64)
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("labels must be binary 0/1")
    if len(np.unique(y)) < min_classes:
        raise ValueError("y holds a single class; at least two are required")
    return X, y


def check_is_fitted(est, attr: str) -> None:
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


def check_n_features(est, X: np.ndarray) -> np.ndarray:
    if X.shape[1] != est.n_features_in_:
        raise ValueError(
            f"X has {X.shape[1]} features, but {type(est).__name__} was fitted with {est.n_features_in_}"
        )
    return X
