"""Tree ensembles: random forest, extra trees, bagging, AdaBoost and gradient boosting.

Every member gets its own generator spawned from ``SeedSequence(random_state)``,
so fitted ensembles do not depend on ``n_jobs``.

Voting ensembles predict by hard majority over member predictions; a tied
vote goes to class 0. Their ``predict_proba`` is the fraction of members
voting for each class, so ``predict`` equals its argmax.
"""
from __future__ import annotations

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_array, check_is_fitted, check_n_features, check_X_y
from .linear import sigmoid
from .tree import DecisionTreeClassifier, DecisionTreeRegressor


def member_rngs(random_state, n: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(random_state).spawn(n)]


def _fit_member(template: DecisionTreeClassifier, X, y, rng, bootstrap: bool):
    tree = DecisionTreeClassifier(**template.get_params())
    if bootstrap:
        idx = rng.integers(0, X.shape[0], X.shape[0])
        weight = np.bincount(idx, minlength=X.shape[0]).astype(np.float64)
        keep = weight > 0
        tree._fit(X[keep], y[keep], weight[keep], rng)
    else:
        tree._fit(X, y, None, rng)
    return tree


class _VotingEnsemble(ClassifierMixin, BaseEstimator):
    _bootstrap = True

    def _template(self) -> DecisionTreeClassifier:
        raise NotImplementedError

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        template = self._template()
        rngs = member_rngs(self.random_state, self.n_estimators)
        if self.n_jobs in (None, 1):
            members = [_fit_member(template, X, y, r, self._bootstrap) for r in rngs]
        else:
            members = Parallel(n_jobs=self.n_jobs)(
                delayed(_fit_member)(template, X, y, r, self._bootstrap) for r in rngs
            )
        self.estimators_ = members
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def member_predictions(self, X) -> np.ndarray:
        """(n_members, n_rows) matrix of member labels."""
        check_is_fitted(self, "estimators_")
        X = check_n_features(self, check_array(X))
        return np.vstack([np.argmax(t.tree_.predict(X), axis=1) for t in self.estimators_])

    def predict_proba(self, X):
        p1 = self.member_predictions(X).mean(axis=0)
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X):
        votes = self.member_predictions(X)
        return (2 * votes.sum(axis=0) > votes.shape[0]).astype(np.int64)


class RandomForestClassifier(_VotingEnsemble):
    def __init__(self, n_estimators=200, criterion="entropy", max_depth=None, min_samples_leaf=1,
                 max_features="sqrt", random_state=0, n_jobs=1):
        self.n_estimators = n_estimators
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.random_state = random_state
        self.n_jobs = n_jobs

    def _template(self):
        return DecisionTreeClassifier(criterion=self.criterion, max_depth=self.max_depth,
                                      min_samples_leaf=self.min_samples_leaf,
                                      max_features=self.max_features)


class ExtraTreesClassifier(RandomForestClassifier):
    """Random thresholds drawn uniformly between a feature's node min and max; no bootstrap."""

    _bootstrap = False

    def __init__(self, n_estimators=100, criterion="entropy", max_depth=None, min_samples_leaf=1,
                 max_features="sqrt", random_state=0, n_jobs=1):
        super().__init__(n_estimators, criterion, max_depth, min_samples_leaf, max_features,
                         random_state, n_jobs)

    def _template(self):
        t = super()._template()
        t.splitter = "random"
        return t


class BaggingClassifier(_VotingEnsemble):
    """Bootstrap-aggregated full decision trees (all features considered at every split)."""

    def __init__(self, n_estimators=10, criterion="entropy", max_depth=None, random_state=0, n_jobs=1):
        self.n_estimators = n_estimators
        self.criterion = criterion
        self.max_depth = max_depth
        self.random_state = random_state
        self.n_jobs = n_jobs

    def _template(self):
        return DecisionTreeClassifier(criterion=self.criterion, max_depth=self.max_depth)


class AdaBoostClassifier(ClassifierMixin, BaseEstimator):
    """Discrete AdaBoost (SAMME, two classes) over decision stumps.

    A learner whose weighted error is >= 0.5 is discarded and boosting stops.
    A perfect learner is kept with weight ``log((1 - eps) / eps)`` and boosting
    stops. If no learner qualifies the model predicts the weighted majority class.
    ``F(x) = sum_m alpha_m h_m(x)`` with ``h`` in {-1, +1}; proba is ``sigmoid(2F)``.
    """

    _EPS = 1e-10

    def __init__(self, n_estimators=50, max_depth=1, random_state=0):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.random_state = random_state

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        n = X.shape[0]
        w = np.full(n, 1.0 / n)
        rngs = member_rngs(self.random_state, self.n_estimators)
        self.estimators_, self.estimator_weights_, self.estimator_errors_ = [], [], []
        for rng in rngs:
            stump = DecisionTreeClassifier(max_depth=self.max_depth)._fit(X, y, w, rng)
            miss = np.argmax(stump.tree_.predict(X), axis=1) != y
            err = float(w[miss].sum() / w.sum())
            if err >= 0.5:
                break
            alpha = np.log((1.0 - max(err, self._EPS)) / max(err, self._EPS))
            self.estimators_.append(stump)
            self.estimator_weights_.append(float(alpha))
            self.estimator_errors_.append(err)
            if err == 0.0:
                break
            w = w * np.exp(alpha * miss)
            w /= w.sum()
        self.constant_ = int(w[y == 1].sum() > w[y == 0].sum())
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        check_is_fitted(self, "estimators_")
        X = check_n_features(self, check_array(X))
        if not self.estimators_:
            return np.full(X.shape[0], 1.0 if self.constant_ else -1.0)
        F = np.zeros(X.shape[0])
        for a, t in zip(self.estimator_weights_, self.estimators_):
            F += a * (2.0 * np.argmax(t.tree_.predict(X), axis=1) - 1.0)
        return F

    def predict_proba(self, X):
        p1 = sigmoid(2.0 * self.decision_function(X))
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(np.int64)


def log_loss(y, F) -> float:
    """Mean logistic loss of raw scores ``F`` against 0/1 labels."""
    return float(np.mean(np.logaddexp(0.0, F) - y * F))


class GradientBoostingClassifier(ClassifierMixin, BaseEstimator):
    """Gradient boosting on the logistic loss.

    ``F0`` is the training log-odds. Each stage fits a regression tree to the
    residuals ``y - p`` and then replaces every leaf value with the Newton step
    ``sum(r) / sum(p (1 - p))`` over the training rows in that leaf. The update
    is scaled by ``learning_rate``. ``train_loss_[m]`` is the training log-loss
    after ``m`` stages, with index 0 being the prior.
    """

    def __init__(self, n_estimators=100, learning_rate=0.1, max_depth=3, min_samples_leaf=1,
                 max_features=None, random_state=0):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.random_state = random_state

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        yf = y.astype(np.float64)
        p0 = yf.mean()
        self.init_ = float(np.log(p0 / (1.0 - p0)))
        F = np.full(X.shape[0], self.init_)
        self.estimators_ = []
        self.train_loss_ = [log_loss(yf, F)]
        for rng in member_rngs(self.random_state, self.n_estimators):
            p = sigmoid(F)
            r = yf - p
            reg = DecisionTreeRegressor(max_depth=self.max_depth, min_samples_leaf=self.min_samples_leaf,
                                        max_features=self.max_features)._fit(X, r, None, rng)
            leaves = reg.tree_.apply(X)
            num = np.bincount(leaves, weights=r, minlength=reg.tree_.node_count)
            den = np.bincount(leaves, weights=p * (1.0 - p), minlength=reg.tree_.node_count)
            gamma = np.where(den > 1e-150, num / np.where(den > 1e-150, den, 1.0), 0.0)
            reg.tree_.value[:, 0] = gamma
            F = F + self.learning_rate * gamma[leaves]
            self.estimators_.append(reg)
            self.train_loss_.append(log_loss(yf, F))
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def staged_decision_function(self, X):
        check_is_fitted(self, "estimators_")
        X = check_n_features(self, check_array(X))
        F = np.full(X.shape[0], self.init_)
        yield F.copy()
        for reg in self.estimators_:
            F = F + self.learning_rate * reg.tree_.predict(X)[:, 0]
            yield F.copy()

    def decision_function(self, X):
        for F in self.staged_decision_function(X):
            pass
        return F

    def predict_proba(self, X):
        p1 = sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(np.int64)
