"""k-nearest-neighbour majority vote."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_array, check_is_fitted, check_n_features, check_X_y


class KNeighborsClassifier(ClassifierMixin, BaseEstimator):
    """Euclidean k-NN with an unweighted vote.

    Equal distances are broken by training-row order. A tied vote goes to class 0.
    When the training set has fewer than ``n_neighbors`` rows, k is clipped to the
    largest odd number not above the row count so two-class votes cannot tie.
    """

    def __init__(self, n_neighbors=7):
        self.n_neighbors = n_neighbors

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if self.n_neighbors < 1:
            raise ValueError("n_neighbors must be >= 1")
        self.X_, self.y_ = X, y
        k = int(self.n_neighbors)
        if k > len(y):
            k = len(y) if len(y) % 2 else len(y) - 1
        self.k_ = k
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def kneighbors(self, X):
        check_is_fitted(self, "X_")
        X = check_n_features(self, check_array(X))
        d2 = (
            np.einsum("ij,ij->i", X, X)[:, None]
            - 2.0 * X @ self.X_.T
            + np.einsum("ij,ij->i", self.X_, self.X_)[None, :]
        )
        np.maximum(d2, 0.0, out=d2)
        idx = np.argsort(d2, axis=1, kind="stable")[:, : self.k_]
        return np.sqrt(np.take_along_axis(d2, idx, axis=1)), idx

    def predict_proba(self, X):
        _, idx = self.kneighbors(X)
        p1 = self.y_[idx].mean(axis=1)
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X):
        _, idx = self.kneighbors(X)
        votes = self.y_[idx].sum(axis=1)
        return (2 * votes > self.k_).astype(np.int64)
