import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from dacfake.fuse import (
    CorrelationPruner,
    FusionSpec,
    MinMaxScaler,
    StandardScaler,
    correlation_matrix,
    pearson,
    prune_correlated,
    scale,
)
from dacfake.matrix import FeatureMatrix


def _pearson_oracle(x, y):
    # textbook two-pass formula in plain Python floats
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if min(x) == max(x) or min(y) == max(y):
        return 0.0
    return sxy / math.sqrt(sxx * syy)


def test_pearson_identities():
    x = np.array([1.0, 2.5, -3.0, 4.0, 0.5])
    assert pearson(x, x) == 1.0
    assert pearson(x, -x) == -1.0
    assert pearson(x, np.full(5, 7.0)) == 0.0
    assert pearson(np.full(5, 7.0), np.full(5, 7.0)) == 0.0


def test_pearson_errors():
    with pytest.raises(ValueError):
        pearson([1, 2, 3], [1, 2])
    with pytest.raises(ValueError):
        pearson([1], [1])


# eighths are exact in binary, so the oracle and the vectorised code see the same data
_num = st.integers(-8000, 8000).map(lambda i: i / 8)
_vec = st.lists(_num, min_size=2, max_size=30)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_pearson_matches_oracle_and_is_bounded(data):
    x = data.draw(_vec)
    y = data.draw(st.lists(_num, min_size=len(x), max_size=len(x)))
    r = pearson(x, y)
    assert -1.0 <= r <= 1.0
    assert r == pytest.approx(_pearson_oracle(x, y), abs=1e-9)
    assert r == pytest.approx(pearson(y, x), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (12, 5), elements=st.floats(-100, 100)))
def test_correlation_matrix_matches_pairwise(X):
    R = correlation_matrix(X)
    for i, j in itertools.product(range(5), repeat=2):
        if i == j:
            continue
        assert R[i, j] == pytest.approx(pearson(X[:, i], X[:, j]), abs=1e-9)


def _pair_scan(X, threshold):
    d = X.shape[1]
    return [(i, j) for i in range(d) for j in range(i + 1, d)
            if abs(_pearson_oracle(list(X[:, i]), list(X[:, j]))) > threshold]


def test_pruning_leaves_no_correlated_pair_on_random_matrices():
    rng = np.random.default_rng(0)
    for trial in range(50):
        base = rng.normal(size=(30, 8))
        mix = rng.normal(size=(8, 40)) * (rng.random((8, 40)) < 0.3)
        X = base @ mix + 0.3 * rng.normal(size=(30, 40))
        y = (rng.random(30) < 0.5).astype(int)
        p = CorrelationPruner(0.7).fit(X, y)
        assert _pair_scan(p.transform(X), 0.7) == []
        # every dropped column had a surviving-or-earlier partner beyond the threshold
        for drop, partner, rho in p.drop_log_:
            assert abs(rho) > 0.7 and drop != partner


def test_pruning_keeps_more_label_correlated_column():
    rng = np.random.default_rng(1)
    y = np.r_[np.zeros(20), np.ones(20)]
    a = y + 0.1 * rng.normal(size=40)
    b = a + 0.05 * rng.normal(size=40)  # near-copy of a
    X = np.column_stack([b, a, rng.normal(size=40)])
    p = CorrelationPruner(0.7).fit(X, y)
    keep = p.get_support(indices=True).tolist()
    dropped = {0, 1} - set(keep)
    assert len(dropped) == 1
    (d,) = dropped
    other = 1 - d
    assert p.label_correlation_[d] <= p.label_correlation_[other]


def test_pruner_rejects_bad_threshold():
    with pytest.raises(ValueError):
        CorrelationPruner(1.0).fit(np.eye(3), [0, 1, 0])
    with pytest.raises(ValueError):
        FusionSpec(corr_threshold=0.0)


def test_scalers_by_hand():
    X = np.array([[0.0, 5.0, 1.0], [2.0, 5.0, 3.0], [4.0, 5.0, 8.0]])
    mm = MinMaxScaler().fit(X)
    assert mm.transform(X).tolist() == [[0.0, 0.0, 0.0], [0.5, 0.0, 2 / 7], [1.0, 0.0, 1.0]]
    z = StandardScaler().fit(X).transform(X)
    sd = math.sqrt(8 / 3)
    np.testing.assert_allclose(z[:, 0], [-2 / sd, 0.0, 2 / sd])
    assert z[:, 1].tolist() == [0.0, 0.0, 0.0]
    with pytest.raises(ValueError):
        mm.transform(np.ones((2, 4)))


def test_scale_and_prune_on_feature_matrix():
    rng = np.random.default_rng(2)
    v = rng.normal(size=(10, 3))
    v[:, 2] = 3 * v[:, 0] + 1
    m = FeatureMatrix(v, ("a", "b", "c"), "FUSED", {"corpus_hash": "h"})
    s, scaler = scale(m, "minmax")
    assert s.values.min() >= 0 and s.values.max() <= 1 and s.meta["scaler"] == "minmax"
    out, log = prune_correlated(s, [0, 1] * 5, 0.7)
    assert len(out.columns) == 2 and log[0]["rho"] == pytest.approx(1.0)
    assert {log[0]["dropped"], log[0]["kept"]} == {"a", "c"}
