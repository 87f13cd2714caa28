import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dacfake.learn import (
    CLASSIFIERS,
    DEFAULT_VARIANTS,
    AdaBoostClassifier,
    BaggingClassifier,
    DecisionTreeClassifier,
    ExtraTreesClassifier,
    GaussianNB,
    GradientBoostingClassifier,
    KNeighborsClassifier,
    LinearSVM,
    LogisticRegression,
    ModelFormatError,
    NotFittedError,
    RandomForestClassifier,
    load_model,
    make_classifier,
    save_model,
)
from dacfake.learn.serialize import dumps, loads


def _H(labels):
    n = len(labels)
    if n == 0:
        return 0.0
    p = sum(labels) / n
    return -sum(q * math.log2(q) for q in (p, 1 - p) if q > 0)


def _brute_root_split(X, y):
    """Exhaustive search: every feature, every midpoint between distinct values."""
    n, d = len(X), len(X[0])
    parent = _H(y)
    best = None
    for f in range(d):
        vals = sorted(set(row[f] for row in X))
        for a, b in zip(vals, vals[1:]):
            t = (a + b) / 2
            left = [y[i] for i in range(n) if X[i][f] <= t]
            right = [y[i] for i in range(n) if X[i][f] > t]
            gain = parent - (len(left) * _H(left) + len(right) * _H(right)) / n
            if best is None or gain > best[0] + 1e-12:
                best = (gain, f, t)
    return best


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_root_split_matches_exhaustive_search(seed):
    rng = np.random.default_rng(seed)
    n, d = int(rng.integers(4, 21)), int(rng.integers(1, 5))
    X = rng.integers(0, 6, size=(n, d)).astype(float)
    y = rng.integers(0, 2, size=n)
    if len(set(y)) < 2:
        y[0] = 1 - y[0]
    best = _brute_root_split(X.tolist(), y.tolist())
    tree = DecisionTreeClassifier(max_depth=1).fit(X, y).tree_
    if best is None:
        assert tree.node_count == 1
        return
    assert (int(tree.feature[0]), float(tree.threshold[0])) == (best[1], best[2])


def test_full_tree_fits_distinct_rows():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(60, 4))
    y = rng.integers(0, 2, 60)
    y[:2] = [0, 1]
    dt = DecisionTreeClassifier().fit(X, y)
    assert (dt.predict(X) == y).all()
    assert dt.tree_.max_depth <= 59


def test_max_depth_respected():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(200, 5))
    y = (X[:, 0] * X[:, 1] > 0).astype(int)
    assert DecisionTreeClassifier(max_depth=3).fit(X, y).tree_.max_depth <= 3


def _blobs(n=200, sep=4.0, seed=0, d=3):
    rng = np.random.default_rng(seed)
    y = np.r_[np.zeros(n // 2, int), np.ones(n - n // 2, int)]
    X = rng.normal(size=(n, d)) + sep * y[:, None]
    return X, y


@pytest.mark.parametrize("cls", [RandomForestClassifier, ExtraTreesClassifier, BaggingClassifier])
def test_voting_matches_member_majority(cls):
    X, y = _blobs(120, sep=1.0)
    m = cls(n_estimators=9).fit(X, y)
    votes = m.member_predictions(X)
    assert votes.shape == (9, 120)
    expected = (votes.sum(axis=0) >= 5).astype(int)
    assert (m.predict(X) == expected).all()
    assert np.allclose(m.predict_proba(X)[:, 1], votes.mean(axis=0))


def test_even_vote_tie_goes_to_class_zero():
    X, y = _blobs(120, sep=0.5)
    m = RandomForestClassifier(n_estimators=4).fit(X, y)
    votes = m.member_predictions(X).sum(axis=0)
    tied = votes == 2
    assert tied.any()
    assert (m.predict(X)[tied] == 0).all()


def test_members_differ_across_seeds_within_one_forest():
    X, y = _blobs(120, sep=0.5)
    m = RandomForestClassifier(n_estimators=5).fit(X, y)
    roots = {(int(t.tree_.feature[0]), float(t.tree_.threshold[0])) for t in m.estimators_}
    assert len(roots) > 1


def _xor(reps=50):
    X = np.tile(np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]), (reps, 1))
    y = np.tile(np.array([0, 1, 1, 0]), reps)
    return X, y


def test_gradient_boosting_solves_xor_and_loss_is_monotone():
    X, y = _xor()
    gb = GradientBoostingClassifier(n_estimators=50, max_depth=2).fit(X, y)
    assert (gb.predict(X) == y).mean() >= 0.95
    loss = np.array(gb.train_loss_)
    assert len(loss) == 51
    assert (np.diff(loss) <= 1e-12).all()


def test_gradient_boosting_zero_rate_returns_prior():
    X, y = _blobs(100)
    y[:30] = 1  # 30 + 50 ones out of 100
    gb = GradientBoostingClassifier(n_estimators=5, learning_rate=0.0).fit(X, y)
    p = y.mean()
    assert gb.init_ == pytest.approx(math.log(p / (1 - p)))
    assert np.allclose(gb.predict_proba(X)[:, 1], p)


def test_gradient_boosting_staged_matches_final():
    X, y = _blobs(80, sep=1.0)
    gb = GradientBoostingClassifier(n_estimators=7).fit(X, y)
    stages = list(gb.staged_decision_function(X))
    assert len(stages) == 8
    assert np.array_equal(stages[-1], gb.decision_function(X))


def test_adaboost_kept_learners_beat_chance():
    X, y = _blobs(150, sep=1.0)
    ada = AdaBoostClassifier(n_estimators=30).fit(X, y)
    errs = np.array(ada.estimator_errors_)
    assert len(errs) >= 1 and (errs < 0.5).all()
    assert np.allclose(ada.estimator_weights_, np.log((1 - errs) / errs))


def test_adaboost_stops_after_perfect_stump():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    ada = AdaBoostClassifier(n_estimators=10).fit(X, [0, 0, 1, 1])
    assert len(ada.estimators_) == 1 and ada.estimator_errors_ == [0.0]


@pytest.mark.parametrize("cls", [LogisticRegression, LinearSVM])
def test_linear_models_separate_blobs(cls):
    X, y = _blobs(300, sep=6.0)
    assert (cls().fit(X, y).predict(X) == y).mean() >= 0.99


def test_logistic_gradient_matches_finite_differences():
    X, y = _blobs(40, sep=1.0)
    lr = LogisticRegression(alpha=0.1)
    rng = np.random.default_rng(0)
    theta = rng.normal(size=X.shape[1] + 1)

    def loss(t):
        return lr.loss_and_grad(t[:-1], t[-1], X, y)[0]

    _, gw, gb = lr.loss_and_grad(theta[:-1], theta[-1], X, y)
    h = 1e-6
    num = np.array([(loss(theta + h * e) - loss(theta - h * e)) / (2 * h) for e in np.eye(len(theta))])
    assert np.allclose(np.r_[gw, gb], num, atol=1e-6)


def test_knn_hand_fixture():
    # query at 0; nearest seven: four ones at distance 1..4, three zeros at 1.5..3.5
    X = np.array([1, 2, 3, 4, 1.5, 2.5, 3.5, 10, 11, 12], float)[:, None]
    y = np.array([1, 1, 1, 1, 0, 0, 0, 0, 0, 0])
    knn = KNeighborsClassifier(7).fit(X, y)
    assert knn.predict([[0.0]]).tolist() == [1]
    assert knn.predict_proba([[0.0]])[0].tolist() == pytest.approx([3 / 7, 4 / 7])


def test_knn_clips_k_to_odd_when_few_rows():
    knn = KNeighborsClassifier(7).fit([[0.0], [1.0], [5.0], [6.0]], [0, 0, 1, 1])
    assert knn.k_ == 3


def test_gaussian_nb_symmetric_midpoint():
    X = np.array([[-2.0], [-1.0], [-3.0], [2.0], [1.0], [3.0]])
    nb = GaussianNB().fit(X, [0, 0, 0, 1, 1, 1])
    assert nb.predict_proba([[0.0]])[0].tolist() == pytest.approx([0.5, 0.5])


def test_multinomial_nb_on_counts():
    X = np.array([[5, 0, 1], [4, 1, 0], [0, 5, 1], [1, 4, 0]], float)
    mnb = make_classifier("mnb").fit(X, [0, 0, 1, 1])
    assert mnb.predict(X).tolist() == [0, 0, 1, 1]


# every variant, shared contract -------------------------------------------------

@pytest.mark.parametrize("name", DEFAULT_VARIANTS)
def test_memorises_one_row_per_class(name):
    X = np.array([[0.0, 1.0], [1.0, 0.0]])
    clf = make_classifier(name, seed=0).fit(X, [0, 1])
    assert clf.predict(X).tolist() == [0, 1]


@pytest.mark.parametrize("name", DEFAULT_VARIANTS)
def test_contract_and_determinism(name):
    X, y = _blobs(120, sep=1.5, d=4)
    a = make_classifier(name, seed=3).fit(X, y)
    b = make_classifier(name, seed=3).fit(X, y)
    P = a.predict_proba(X)
    assert P.shape == (120, 2)
    assert np.allclose(P.sum(axis=1), 1.0)
    assert ((P >= 0) & (P <= 1)).all()
    assert np.array_equal(P, b.predict_proba(X))
    pred = a.predict(X)
    assert np.array_equal(pred, b.predict(X))
    clear = np.abs(P[:, 1] - 0.5) > 1e-9
    assert np.array_equal(pred[clear], P[clear].argmax(axis=1))


@pytest.mark.parametrize("name", DEFAULT_VARIANTS)
def test_input_errors(name):
    X, y = _blobs(20, d=3)
    with pytest.raises(NotFittedError):
        make_classifier(name).predict(X)
    with pytest.raises(ValueError, match="single class"):
        make_classifier(name).fit(X, np.zeros(20))
    bad = X.copy()
    bad[0, 0] = np.nan
    with pytest.raises(ValueError, match="NaN"):
        make_classifier(name).fit(bad, y)
    clf = make_classifier(name).fit(X, y)
    with pytest.raises(ValueError, match="features"):
        clf.predict(X[:, :2])


@pytest.mark.parametrize("name", sorted(CLASSIFIERS))
def test_serialization_round_trip(name, tmp_path):
    X, y = _blobs(60, sep=1.5)
    X = np.abs(X)  # count-like for MultinomialNB
    clf = make_classifier(name, seed=1).fit(X, y)
    save_model(clf, tmp_path / "m.json", meta={"k": 1})
    back, meta = load_model(tmp_path / "m.json")
    assert meta == {"k": 1} and type(back) is type(clf)
    assert np.array_equal(back.predict_proba(X), clf.predict_proba(X))


def test_serialization_rejects_other_versions():
    import json
    doc = json.loads(dumps(GaussianNB().fit([[0.0], [1.0]], [0, 1])))
    doc["version"] = 99
    with pytest.raises(ModelFormatError, match="version"):
        loads(json.dumps(doc))
    with pytest.raises(ModelFormatError):
        loads(json.dumps({"format": "pickle"}))


def test_unknown_classifier_name():
    with pytest.raises(ValueError):
        make_classifier("xgboost")
