"""Linear models trained by full-batch (sub)gradient descent."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_array, check_is_fitted, check_n_features, check_X_y


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class _LinearBase(ClassifierMixin, BaseEstimator):
    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        X = check_n_features(self, check_array(X))
        return X @ self.coef_ + self.intercept_

    def predict_proba(self, X):
        p1 = sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(np.int64)


class LogisticRegression(_LinearBase):
    """Binary logistic regression with L2 penalty ``alpha/2 * |w|^2`` (intercept unpenalised).

    Stops after ``max_iter`` steps or once the gradient's infinity norm drops below ``tol``.
    """

    def __init__(self, alpha=1e-4, learning_rate=0.5, max_iter=2000, tol=1e-6):
        self.alpha = alpha
        self.learning_rate = learning_rate
        self.max_iter = max_iter
        self.tol = tol

    def loss_and_grad(self, w, b, X, y):
        z = X @ w + b
        # log(1 + e^z) - y z, computed stably
        loss = np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * self.alpha * (w @ w)
        r = sigmoid(z) - y
        return loss, X.T @ r / len(y) + self.alpha * w, r.mean()

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        w = np.zeros(X.shape[1])
        b = 0.0
        self.n_iter_ = 0
        for it in range(self.max_iter):
            _, gw, gb = self.loss_and_grad(w, b, X, y)
            if max(np.abs(gw).max(initial=0.0), abs(gb)) < self.tol:
                break
            w -= self.learning_rate * gw
            b -= self.learning_rate * gb
            self.n_iter_ = it + 1
        self.coef_, self.intercept_ = w, float(b)
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self


class LinearSVM(_LinearBase):
    """Primal linear SVM: mean hinge loss plus ``alpha/2 * |w|^2``, subgradient descent.

    The step size is ``eta0 / sqrt(t)``. The iterate with the lowest objective is kept.
    ``predict_proba`` is the logistic link applied to the raw margin (no calibration).
    """

    def __init__(self, alpha=1e-3, eta0=0.5, max_iter=1000):
        self.alpha = alpha
        self.eta0 = eta0
        self.max_iter = max_iter

    def objective(self, w, b, X, s):
        return np.mean(np.maximum(0.0, 1.0 - s * (X @ w + b))) + 0.5 * self.alpha * (w @ w)

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        s = 2.0 * y - 1.0
        n, d = X.shape
        w, b = np.zeros(d), 0.0
        best = (self.objective(w, b, X, s), w.copy(), b)
        for t in range(1, self.max_iter + 1):
            active = s * (X @ w + b) < 1.0
            gw = self.alpha * w - (s[active] @ X[active]) / n
            gb = -s[active].sum() / n
            eta = self.eta0 / np.sqrt(t)
            w = w - eta * gw
            b = b - eta * gb
            obj = self.objective(w, b, X, s)
            if obj < best[0]:
                best = (obj, w.copy(), b)
        self.objective_, self.coef_, self.intercept_ = best[0], best[1], float(best[2])
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = d
        return self
