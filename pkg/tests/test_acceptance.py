"""Acceptance criteria, one test per criterion.

Each test prints ``criterion N: PASS|FAIL|SKIP`` with its runtime; the same
lines are repeated in the pytest terminal summary. Criteria 8 and 9 need the
public McIntire ``fake_or_real_news.csv`` (columns title, text, label with
FAKE/REAL); point ``DACFAKE_MCINTIRE_CSV`` at it to run them.

Run alone with ``python3 -m pytest tests/test_acceptance.py -v``.
"""
import os
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

import conftest
from test_embed import CASES, _numeric_grad, _toy
from test_learn import _blobs, _brute_root_split, _xor
from test_readability import FIXTURES, expected_scores

from dacfake.corpus import Schema, ingest_csv, phase1_clean
from dacfake.embed import CBOW, SG, pair_loss_and_grad, train
from dacfake.evaluation import FoldPlan, build_pipeline, cross_validate, metrics, run_experiment_matrix
from dacfake.evaluation.experiment import build_feature_sets
from dacfake.fuse import CorrelationPruner, pearson
from dacfake.learn import (
    BaggingClassifier,
    DEFAULT_VARIANTS,
    DecisionTreeClassifier,
    GradientBoostingClassifier,
    LinearSVM,
    LogisticRegression,
    RandomForestClassifier,
    make_classifier,
)
from dacfake.lingfeat import table4_report
from dacfake.lingfeat.readability import READABILITY_NAMES, readability_suite, text_counts
from dacfake.synthetic import make_corpus
from dacfake.textprep import default_lexicons, prep_wv
from dacfake.textprep.segment import segment

MCINTIRE = os.environ.get("DACFAKE_MCINTIRE_CSV")


@contextmanager
def criterion(n: int, budget: float | None = None):
    t0 = time.perf_counter()
    try:
        yield
        dt = time.perf_counter() - t0
        if budget is not None:
            assert dt < budget, f"runtime {dt:.1f}s over the {budget:.0f}s budget"
    except pytest.skip.Exception as e:
        conftest.ACCEPTANCE[n] = ("SKIP", str(e.msg))
        print(f"criterion {n}: SKIP  {e.msg}")
        raise
    except BaseException as e:
        dt = time.perf_counter() - t0
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        conftest.ACCEPTANCE[n] = ("FAIL", f"({dt:.2f}s) {msg}")
        print(f"criterion {n}: FAIL  ({dt:.2f}s) {msg}")
        raise
    conftest.ACCEPTANCE[n] = ("PASS", f"({dt:.2f}s)")
    print(f"criterion {n}: PASS  ({dt:.2f}s)")


def test_criterion_1_readability_formulas():
    with criterion(1, budget=1.0):
        lex = default_lexicons()
        for name, fx in FIXTURES.items():
            c = text_counts(segment(fx["text"]), lex)
            syl = fx["syllables"]
            assert (c.words, c.sentences, c.syllables) == (len(syl), fx["sentences"], sum(syl)), name
            got = readability_suite(segment(fx["text"]), lex)
            want = expected_scores(fx)
            assert len(READABILITY_NAMES) == 10
            for metric in READABILITY_NAMES:
                assert abs(got[metric] - want[metric]) <= 1e-9, f"{name}/{metric}"


def test_criterion_2_pearson_and_pruning():
    with criterion(2, budget=10.0):
        x = np.array([0.3, -1.2, 2.2, 5.0, 0.0, 1.1])
        assert pearson(x, x) == 1.0 and pearson(x, -x) == -1.0
        assert pearson(x, np.full_like(x, 3.3)) == 0.0
        rng = np.random.default_rng(0)
        for _ in range(50):
            base = rng.normal(size=(30, 8))
            X = base @ (rng.normal(size=(8, 40)) * (rng.random((8, 40)) < 0.3)) + 0.3 * rng.normal(size=(30, 40))
            y = rng.integers(0, 2, 30)
            kept = CorrelationPruner(0.7).fit(X, y).transform(X)
            d = kept.shape[1]
            for i in range(d):
                for j in range(i + 1, d):
                    assert abs(pearson(kept[:, i], kept[:, j])) <= 0.7


def test_criterion_3_word2vec_gradients_and_loss():
    with criterion(3, budget=30.0):
        for mode, inputs, target, negs in CASES:
            syn0, syn1 = _toy()
            _, a0, a1 = pair_loss_and_grad(syn0, syn1, mode, inputs, target, negs)
            n0, n1 = _numeric_grad(syn0, syn1, mode, inputs, target, negs)
            for a, nmr in ((a0, n0), (a1, n1)):
                rel = np.linalg.norm(a - nmr) / max(np.linalg.norm(a) + np.linalg.norm(nmr), 1e-12)
                assert rel < 1e-4, (mode, rel)
        docs = [prep_wv(t) for t in phase1_clean(make_corpus(50, seed=3)).texts]
        for mode, alpha in ((SG, 0.025), (CBOW, 0.1)):
            h = train(docs, mode, vector_size=20, epochs=3, alpha=alpha, seed=0).loss_history
            assert h[0] > h[1] > h[2], (mode, h)


def test_criterion_4_classifier_oracles():
    with criterion(4, budget=60.0):
        rng = np.random.default_rng(11)
        for _ in range(200):
            n, d = int(rng.integers(4, 21)), int(rng.integers(1, 5))
            X = rng.integers(0, 6, size=(n, d)).astype(float)
            y = rng.integers(0, 2, size=n)
            y[0], y[1] = 0, 1
            best = _brute_root_split(X.tolist(), y.tolist())
            t = DecisionTreeClassifier(max_depth=1).fit(X, y).tree_
            if best is None:
                assert t.node_count == 1
            else:
                assert (int(t.feature[0]), float(t.threshold[0])) == (best[1], best[2])
        X, y = _blobs(150, sep=1.0)
        for cls in (RandomForestClassifier, BaggingClassifier):
            m = cls(n_estimators=11).fit(X, y)
            votes = m.member_predictions(X)
            assert np.array_equal(m.predict(X), (2 * votes.sum(axis=0) > len(votes)).astype(int))
        Xx, yx = _xor()
        gb = GradientBoostingClassifier(n_estimators=50, max_depth=2).fit(Xx, yx)
        assert (np.diff(gb.train_loss_) <= 1e-12).all()
        assert (gb.predict(Xx) == yx).mean() >= 0.95
        Xb, yb = _blobs(300, sep=6.0)
        for cls in (LogisticRegression, LinearSVM):
            assert (cls().fit(Xb, yb).predict(Xb) == yb).mean() >= 0.99, cls.__name__


def test_criterion_5_cv_harness():
    with criterion(5, budget=30.0):
        rng = np.random.default_rng(5)
        for seed in range(100):
            n0, n1 = int(rng.integers(10, 150)), int(rng.integers(10, 150))
            k = int(rng.integers(2, 11))
            y = rng.permutation(np.r_[np.zeros(n0, int), np.ones(n1, int)])
            plan = FoldPlan.stratified(y, k, seed)
            rows = np.concatenate(plan.folds)
            assert len(rows) == len(y) and len(np.unique(rows)) == len(y)
            for c, n in ((0, n0), (1, n1)):
                per = np.array([(y[f] == c).sum() for f in plan.folds])
                assert np.all(np.abs(per - n / k) < 1.0)
        X, y = _blobs(200, sep=1.0, d=5)
        pipe = build_pipeline(make_classifier("gb", n_estimators=20))
        a = cross_validate(pipe, X, y, k=10, seed=3)
        b = cross_validate(pipe, X, y, k=10, seed=3)
        assert [f.to_dict() for f in a.per_fold] == [f.to_dict() for f in b.per_fold]


def test_criterion_6_metrics():
    with criterion(6):
        # hand counts; expected values are exact fractions rounded once to float
        r = metrics([1, 1, 0, 0], [1, 0, 0, 0])
        assert r.confusion == (1, 0, 1, 2)
        assert (r.accuracy, r.precision, r.recall, r.f1) == (0.75, 1.0, 0.5, float(Fraction(2, 3)))
        r = metrics([1, 0, 1, 0, 1, 0, 0, 0], [1, 1, 0, 0, 1, 0, 1, 0])
        # TP=2 FP=2 FN=1 TN=3: P=1/2, R=2/3, F1=(2/3)/(7/6)=4/7
        assert r.confusion == (2, 2, 1, 3)
        assert (r.accuracy, r.precision, r.recall, r.f1) == (
            float(Fraction(5, 8)), float(Fraction(1, 2)), float(Fraction(2, 3)), float(Fraction(4, 7)))
        r = metrics([0, 0, 0], [0, 0, 0])
        assert (r.accuracy, r.precision, r.recall, r.f1) == (1.0, 0.0, 0.0, 0.0)
        r = metrics([1, 1], [0, 0])
        assert (r.accuracy, r.precision, r.recall, r.f1) == (0.0, 0.0, 0.0, 0.0)


def test_criterion_7_end_to_end(tmp_path):
    from dacfake.cli import cmd_bench, cmd_embed, cmd_featurize, cmd_prepare
    from dacfake.config import RunConfig
    from dacfake.synthetic import write_csv

    with criterion(7, budget=120.0):
        data = write_csv(make_corpus(400, seed=0), tmp_path / "synthetic.csv")
        cfg = RunConfig(input=str(data), out_dir=str(tmp_path / "art")).validate()
        cmd_prepare(cfg)
        cmd_featurize(cfg)
        cmd_embed(cfg, ("cbow", "sg"))
        table = cmd_bench(cfg)
        assert not table.has_errors
        assert len(table.rows) == 5 * len(DEFAULT_VARIANTS)
        lf = table.get("LF", "gb").accuracy
        fused = table.get("LF+WVF2", "gb").accuracy
        print(f"gb accuracy LF={lf:.4f} LF+SG={fused:.4f}")
        assert fused >= lf, f"LF+SG {fused:.4f} < LF {lf:.4f}"
        assert fused >= 0.90, f"LF+SG accuracy {fused:.4f} < 0.90"


@pytest.fixture(scope="module")
def mcintire():
    if not MCINTIRE:
        pytest.skip("DACFAKE_MCINTIRE_CSV not set (public McIntire fake_or_real_news.csv)")
    corpus = phase1_clean(ingest_csv(MCINTIRE, Schema(text="text", title="title", label="label")))
    return corpus, build_feature_sets(corpus, seed=0)


def test_criterion_8_public_data_ordering(request):
    with criterion(8):
        corpus, feats = request.getfixturevalue("mcintire")
        table = run_experiment_matrix(feats, corpus.labels, protocol="holdout", seed=0)
        assert not table.has_errors
        acc = {(r.feature_set, r.classifier): r.report.accuracy for r in table.rows}
        print(table.format())
        tol = 0.005
        assert acc["LF+WVF2", "gb"] >= 0.90
        for combo, wv in (("LF+WVF2", "WVF2"), ("LF+WVF1", "WVF1")):
            assert acc[combo, "gb"] >= max(acc["LF", "gb"], acc[wv, "gb"]) - tol, combo
        for name in DEFAULT_VARIANTS:
            assert acc["LF+WVF2", "gb"] >= acc["LF+WVF2", name] - tol, name


def test_criterion_9_class_summary_direction(request):
    with criterion(9):
        corpus, feats = request.getfixturevalue("mcintire")
        rows = {r["id"]: r for r in table4_report(corpus, feats["LF"])}
        assert rows["quoted_content"]["true"] > rows["quoted_content"]["fake"]
        assert rows["url_count"]["fake"] > rows["url_count"]["true"]
        assert rows["exclamation_freq"]["fake"] > rows["exclamation_freq"]["true"]
        assert rows["third_person_pronouns"]["fake"] > rows["third_person_pronouns"]["true"]
