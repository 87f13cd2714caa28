"""Naive Bayes for real-valued (Gaussian) and count (multinomial) features."""
from __future__ import annotations

import numpy as np
from scipy.special import logsumexp
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_array, check_is_fitted, check_n_features, check_X_y


class _NBBase(ClassifierMixin, BaseEstimator):
    def predict_log_proba(self, X):
        jll = self._joint_log_likelihood(X)
        return jll - logsumexp(jll, axis=1, keepdims=True)

    def predict_proba(self, X):
        return np.exp(self.predict_log_proba(X))

    def predict(self, X):
        return np.argmax(self._joint_log_likelihood(X), axis=1)


class GaussianNB(_NBBase):
    """Per-class normal likelihoods. ``var_smoothing`` times the largest feature variance is added to every variance."""

    def __init__(self, var_smoothing=1e-9):
        self.var_smoothing = var_smoothing

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        eps = self.var_smoothing * max(X.var(axis=0).max(), 1e-300)
        self.theta_ = np.vstack([X[y == c].mean(axis=0) for c in (0, 1)])
        self.var_ = np.vstack([X[y == c].var(axis=0) for c in (0, 1)]) + eps
        self.class_prior_ = np.array([np.mean(y == 0), np.mean(y == 1)])
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def _joint_log_likelihood(self, X):
        check_is_fitted(self, "theta_")
        X = check_n_features(self, check_array(X))
        out = np.empty((X.shape[0], 2))
        for c in (0, 1):
            ll = -0.5 * np.sum(np.log(2.0 * np.pi * self.var_[c]))
            ll = ll - 0.5 * np.sum((X - self.theta_[c]) ** 2 / self.var_[c], axis=1)
            out[:, c] = np.log(self.class_prior_[c]) + ll
        return out


class MultinomialNB(_NBBase):
    """Multinomial likelihood with additive (Laplace) smoothing; features must be non-negative."""

    def __init__(self, alpha=1.0):
        self.alpha = alpha

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if np.any(X < 0):
            raise ValueError("MultinomialNB needs non-negative features")
        counts = np.vstack([X[y == c].sum(axis=0) for c in (0, 1)]) + self.alpha
        self.feature_log_prob_ = np.log(counts) - np.log(counts.sum(axis=1, keepdims=True))
        self.class_log_prior_ = np.log([np.mean(y == 0), np.mean(y == 1)])
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def _joint_log_likelihood(self, X):
        check_is_fitted(self, "feature_log_prob_")
        X = check_n_features(self, check_array(X))
        if np.any(X < 0):
            raise ValueError("MultinomialNB needs non-negative features")
        return X @ self.feature_log_prob_.T + self.class_log_prior_
