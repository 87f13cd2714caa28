"""CART-style binary decision trees (classification and regression).

Candidate thresholds are midpoints between consecutive distinct sorted
values; a sample goes left when ``x <= threshold``. Among equally good
splits the lowest feature index (in candidate order) and then the lowest
threshold win. An impure node is split whenever a valid split exists, even
at zero gain, so patterns like XOR stay reachable at depth two.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, RegressorMixin

from ._validation import check_array, check_is_fitted, check_n_features, check_X_y

_TOL = 1e-12


class Tree:
    """Flat-array tree. ``feature[i] == -1`` marks a leaf."""

    def __init__(self, n_outputs: int):
        self.n_outputs = n_outputs
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[np.ndarray] = []
        self.n_samples: list[int] = []
        self.depth: list[int] = []

    def add_node(self, value, n_samples, depth) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(np.asarray(value, dtype=np.float64).reshape(self.n_outputs))
        self.n_samples.append(int(n_samples))
        self.depth.append(int(depth))
        return len(self.feature) - 1

    def finalize(self) -> "Tree":
        self.feature = np.asarray(self.feature, dtype=np.int64)
        self.threshold = np.asarray(self.threshold, dtype=np.float64)
        self.left = np.asarray(self.left, dtype=np.int64)
        self.right = np.asarray(self.right, dtype=np.int64)
        self.value = np.vstack(self.value) if self.value else np.zeros((0, self.n_outputs))
        self.n_samples = np.asarray(self.n_samples, dtype=np.int64)
        self.depth = np.asarray(self.depth, dtype=np.int64)
        return self

    @property
    def node_count(self) -> int:
        return len(self.feature)

    @property
    def max_depth(self) -> int:
        return int(self.depth.max()) if len(self.depth) else 0

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by every row of ``X``."""
        node = np.zeros(X.shape[0], dtype=np.int64)
        active = self.feature[node] >= 0
        while np.any(active):
            rows = np.nonzero(active)[0]
            n = node[rows]
            go_left = X[rows, self.feature[n]] <= self.threshold[n]
            node[rows] = np.where(go_left, self.left[n], self.right[n])
            active[rows] = self.feature[node[rows]] >= 0
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.value[self.apply(X)]

    def to_dict(self) -> dict:
        return {
            "n_outputs": self.n_outputs,
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
            "n_samples": self.n_samples.tolist(),
            "depth": self.depth.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        t = cls(d["n_outputs"])
        t.feature = np.asarray(d["feature"], dtype=np.int64)
        t.threshold = np.asarray(d["threshold"], dtype=np.float64)
        t.left = np.asarray(d["left"], dtype=np.int64)
        t.right = np.asarray(d["right"], dtype=np.int64)
        t.value = np.asarray(d["value"], dtype=np.float64).reshape(-1, d["n_outputs"])
        t.n_samples = np.asarray(d["n_samples"], dtype=np.int64)
        t.depth = np.asarray(d["depth"], dtype=np.int64)
        return t


# --------------------------------------------------------------------------
# impurity


def _entropy(c0, c1):
    w = c0 + c1
    out = np.zeros(np.broadcast(c0, c1).shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        for c in (c0, c1):
            p = np.where(w > 0, c / np.where(w > 0, w, 1.0), 0.0)
            out -= np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return out


def _gini(c0, c1):
    w = c0 + c1
    safe = np.where(w > 0, w, 1.0)
    p0, p1 = c0 / safe, c1 / safe
    return np.where(w > 0, 1.0 - p0 * p0 - p1 * p1, 0.0)


_CLASS_IMPURITY = {"entropy": _entropy, "gini": _gini}


def node_impurity(criterion: str, y, w) -> float:
    """Impurity of a node (entropy/gini on 0/1 labels, or weighted SSE for 'mse')."""
    y = np.asarray(y, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if criterion == "mse":
        sw = w.sum()
        if sw <= 0:
            return 0.0
        return float((w * y * y).sum() - (w * y).sum() ** 2 / sw)
    c1 = float((w * y).sum())
    c0 = float(w.sum() - c1)
    return float(_CLASS_IMPURITY[criterion](np.array(c0), np.array(c1)))


def _best_split(Xn, y, w, criterion, min_leaf, feats, rng, random_thresholds):
    """Best (gain, feature, threshold) over candidate columns ``feats``; None when no valid split."""
    n = Xn.shape[0]
    sub = Xn[:, feats]
    if random_thresholds:
        lo, hi = sub.min(axis=0), sub.max(axis=0)
        live = hi > lo
        if not np.any(live):
            return None
        u = rng.random(len(feats))
        thr = lo + u * (hi - lo)
        thr = np.where(thr >= hi, lo, thr)
        masks = (sub <= thr).astype(np.float64)
        lw, tw = w @ masks, w.sum()
        rw = tw - lw
        if criterion == "mse":
            yw = w * y
            lyw, lyyw = yw @ masks, (yw * y) @ masks
            tyw, tyyw = yw.sum(), (yw * y).sum()
            with np.errstate(divide="ignore", invalid="ignore"):
                sse_l = lyyw - np.where(lw > 0, lyw * lyw / np.where(lw > 0, lw, 1.0), 0.0)
                sse_r = (tyyw - lyyw) - np.where(rw > 0, (tyw - lyw) ** 2 / np.where(rw > 0, rw, 1.0), 0.0)
            gains = (tyyw - tyw * tyw / tw) - sse_l - sse_r
        else:
            imp = _CLASS_IMPURITY[criterion]
            l1, t1 = (w * y) @ masks, (w * y).sum()
            gains = imp(tw - t1, t1) - (lw * imp(lw - l1, l1) + rw * imp(rw - (t1 - l1), t1 - l1)) / tw
        nl = masks.sum(axis=0)
        ok = live & (nl >= min_leaf) & (n - nl >= min_leaf)
        gains = np.where(ok, gains, -np.inf)
        k = int(np.argmax(gains))
        if not np.isfinite(gains[k]):
            return None
        return gains[k], int(feats[k]), float(thr[k])

    order = np.argsort(sub, axis=0, kind="stable")
    xs = np.take_along_axis(sub, order, axis=0)
    ws = w[order]
    if criterion == "mse":
        yw = (w * y)[order]
        yyw = (w * y * y)[order]
        cw, cyw, cyyw = np.cumsum(ws, 0), np.cumsum(yw, 0), np.cumsum(yyw, 0)
        tw, tyw, tyyw = cw[-1], cyw[-1], cyyw[-1]
        lw, lyw, lyyw = cw[:-1], cyw[:-1], cyyw[:-1]
        rw, ryw, ryyw = tw - lw, tyw - lyw, tyyw - lyyw
        with np.errstate(divide="ignore", invalid="ignore"):
            sse_l = lyyw - np.where(lw > 0, lyw * lyw / lw, 0.0)
            sse_r = ryyw - np.where(rw > 0, ryw * ryw / rw, 0.0)
        parent = tyyw - tyw * tyw / tw
        gains = parent - sse_l - sse_r
    else:
        c1 = np.cumsum((w * y)[order], axis=0)
        cw = np.cumsum(ws, axis=0)
        t1, tw = c1[-1], cw[-1]
        l1, lw = c1[:-1], cw[:-1]
        l0 = lw - l1
        r1 = t1 - l1
        r0 = (tw - lw) - r1
        imp = _CLASS_IMPURITY[criterion]
        parent = imp(tw - t1, t1)
        rw = tw - lw
        gains = parent - (lw * imp(l0, l1) + rw * imp(r0, r1)) / tw
    pos = np.arange(1, n)[:, None]
    valid = (xs[1:] > xs[:-1]) & (pos >= min_leaf) & (n - pos >= min_leaf)
    gains = np.where(valid, gains, -np.inf)
    gmax = gains.max() if gains.size else -np.inf
    if not np.isfinite(gmax):
        return None
    # first (feature, position) within tolerance of the best, feature-major
    hit = (gains >= gmax - _TOL).T.ravel()
    flat = int(np.argmax(hit))
    k, p = divmod(flat, n - 1)
    a, b = xs[p, k], xs[p + 1, k]
    thr = a + (b - a) / 2.0
    if thr >= b:
        thr = a
    return float(gains[p, k]), int(feats[k]), float(thr)


def build_tree(
    X: np.ndarray,
    y: np.ndarray,
    sample_weight: np.ndarray | None = None,
    criterion: str = "entropy",
    max_depth: int | None = None,
    min_samples_split: int = 2,
    min_samples_leaf: int = 1,
    max_features: int | None = None,
    rng: np.random.Generator | None = None,
    random_thresholds: bool = False,
) -> Tree:
    """Grow a tree depth-first. ``y`` is 0/1 for entropy/gini, real for 'mse'."""
    n, d = X.shape
    w = np.ones(n) if sample_weight is None else np.asarray(sample_weight, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    rng = rng if rng is not None else np.random.default_rng(0)
    regression = criterion == "mse"
    tree = Tree(1 if regression else 2)
    limit = np.inf if max_depth is None else max_depth
    n_feats = d if max_features is None else max(1, min(d, int(max_features)))

    def leaf_value(idx):
        ws = w[idx].sum()
        if regression:
            return [(w[idx] * y[idx]).sum() / ws if ws > 0 else 0.0]
        p1 = (w[idx] * y[idx]).sum() / ws if ws > 0 else 0.5
        return [1.0 - p1, p1]

    root = tree.add_node(leaf_value(np.arange(n)), n, 0)
    stack = [(root, np.arange(n), 0)]
    while stack:
        node, idx, depth = stack.pop()
        if depth >= limit or len(idx) < min_samples_split or len(idx) < 2 * min_samples_leaf:
            continue
        yi, wi = y[idx], w[idx]
        if node_impurity(criterion, yi, wi) <= _TOL:
            continue
        Xn = X[idx]
        # constant columns cannot split; sample only among the rest
        live = np.nonzero(Xn.max(axis=0) > Xn.min(axis=0))[0]
        if live.size == 0:
            continue
        if n_feats < live.size:
            feats = np.sort(rng.choice(live, n_feats, replace=False))
        else:
            feats = live
        found = _best_split(Xn, yi, wi, criterion, min_samples_leaf, feats, rng, random_thresholds)
        if found is None:
            continue
        _, f, thr = found
        go_left = X[idx, f] <= thr
        li, ri = idx[go_left], idx[~go_left]
        tree.feature[node] = f
        tree.threshold[node] = thr
        l = tree.add_node(leaf_value(li), len(li), depth + 1)
        r = tree.add_node(leaf_value(ri), len(ri), depth + 1)
        tree.left[node], tree.right[node] = l, r
        stack.append((r, ri, depth + 1))
        stack.append((l, li, depth + 1))
    return tree.finalize()


def resolve_max_features(max_features, n_features: int) -> int | None:
    if max_features is None:
        return None
    if max_features == "sqrt":
        return max(1, int(np.sqrt(n_features)))
    if max_features == "log2":
        return max(1, int(np.log2(n_features)))
    if isinstance(max_features, float):
        return max(1, int(max_features * n_features))
    return int(max_features)


class DecisionTreeClassifier(ClassifierMixin, BaseEstimator):
    def __init__(self, criterion="entropy", max_depth=None, min_samples_split=2,
                 min_samples_leaf=1, max_features=None, splitter="best", random_state=0):
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.splitter = splitter
        self.random_state = random_state

    def fit(self, X, y, sample_weight=None):
        X, y = check_X_y(X, y)
        return self._fit(X, y, sample_weight, np.random.default_rng(self.random_state))

    def _fit(self, X, y, sample_weight, rng):
        if self.criterion not in _CLASS_IMPURITY:
            raise ValueError(f"unknown criterion {self.criterion!r}")
        self.tree_ = build_tree(
            X, y, sample_weight, self.criterion, self.max_depth, self.min_samples_split,
            self.min_samples_leaf, resolve_max_features(self.max_features, X.shape[1]), rng,
            random_thresholds=self.splitter == "random",
        )
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def predict_proba(self, X):
        check_is_fitted(self, "tree_")
        X = check_n_features(self, check_array(X))
        return self.tree_.predict(X)

    def predict(self, X):
        return np.argmax(self.predict_proba(X), axis=1)


class DecisionTreeRegressor(RegressorMixin, BaseEstimator):
    def __init__(self, max_depth=3, min_samples_split=2, min_samples_leaf=1, max_features=None,
                 random_state=0):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.random_state = random_state

    def fit(self, X, y, sample_weight=None):
        X = check_array(X)
        y = np.asarray(y, dtype=np.float64).ravel()
        if len(y) != X.shape[0]:
            raise ValueError("X and y differ in length")
        return self._fit(X, y, sample_weight, np.random.default_rng(self.random_state))

    def _fit(self, X, y, sample_weight, rng):
        self.tree_ = build_tree(
            X, y, sample_weight, "mse", self.max_depth, self.min_samples_split,
            self.min_samples_leaf, resolve_max_features(self.max_features, X.shape[1]), rng,
        )
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "tree_")
        X = check_n_features(self, check_array(X))
        return self.tree_.predict(X)[:, 0]
