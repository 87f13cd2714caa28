"""Feature-set x classifier benchmark grid."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..corpus import Corpus
from ..embed import CBOW, SG, doc_matrix, train
from ..learn import DEFAULT_VARIANTS, make_classifier
from ..lingfeat import extract_lf
from ..matrix import FeatureMatrix, concat
from ..textprep import default_lexicons, prep_wv
from .cv import build_pipeline, cross_validate, holdout_evaluate
from .metrics import METRIC_NAMES, EvalReport

FEATURE_SETS = ("LF", "WVF1", "WVF2", "LF+WVF1", "LF+WVF2")


def build_feature_sets(corpus: Corpus, lex=None, *, vector_size: int = 100, window: int = 5,
                       negative: int = 5, epochs: int = 5, max_vocab: int = 1000,
                       pooled: bool = False, seed: int = 0, n_jobs: int = 1) -> dict[str, FeatureMatrix]:
    """LF, CBOW and skip-gram matrices plus both LF-first fusions.

    The embeddings are trained without labels on every document in ``corpus``.
    """
    lex = lex or default_lexicons()
    h = corpus.content_hash()
    lf = extract_lf(corpus, lex, n_jobs=n_jobs)
    docs = [prep_wv(t, lex) for t in corpus.texts]
    out = {"LF": lf}
    for name, mode in (("WVF1", CBOW), ("WVF2", SG)):
        model = train(docs, mode, vector_size=vector_size, window=window, negative=negative,
                      epochs=epochs, max_vocab=max_vocab, seed=seed)
        m = doc_matrix(model, docs, pooled=pooled)
        m.meta["corpus_hash"] = h
        out[name] = m
    out["LF+WVF1"] = concat(lf, out["WVF1"])
    out["LF+WVF2"] = concat(lf, out["WVF2"])
    return out


@dataclass
class ExperimentRow:
    feature_set: str
    classifier: str
    report: EvalReport | None
    error: str | None = None
    seconds: float = 0.0


@dataclass
class ExperimentTable:
    rows: list[ExperimentRow] = field(default_factory=list)
    protocol: str = ""

    @property
    def has_errors(self) -> bool:
        return any(r.error for r in self.rows)

    def get(self, feature_set: str, classifier: str) -> EvalReport | None:
        for r in self.rows:
            if r.feature_set == feature_set and r.classifier == classifier:
                return r.report
        raise KeyError((feature_set, classifier))

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["feature_set", "classifier", "protocol", *METRIC_NAMES,
                    *(f"{m}_std" for m in METRIC_NAMES), "TP", "FP", "FN", "TN", "seconds", "error"])
        for r in self.rows:
            if r.report is None:
                w.writerow([r.feature_set, r.classifier, self.protocol] + [""] * 12 + [f"{r.seconds:.3f}", r.error])
                continue
            rep = r.report
            std = [repr(rep.std[m]) if rep.std else "" for m in METRIC_NAMES]
            w.writerow([r.feature_set, r.classifier, rep.protocol,
                        *(repr(getattr(rep, m)) for m in METRIC_NAMES), *std, *rep.confusion,
                        f"{r.seconds:.3f}", ""])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    def format(self, metric: str = "accuracy") -> str:
        """Classifier rows by feature-set columns, one metric per cell."""
        sets = list(dict.fromkeys(r.feature_set for r in self.rows))
        clfs = list(dict.fromkeys(r.classifier for r in self.rows))
        cell = {(r.feature_set, r.classifier): r for r in self.rows}
        width = max(9, *(len(s) for s in sets))
        lines = [f"{metric} ({self.protocol})", "classifier".ljust(10) + "".join(s.rjust(width + 2) for s in sets)]
        for c in clfs:
            parts = []
            for s in sets:
                r = cell.get((s, c))
                if r is None:
                    parts.append("-")
                elif r.report is None:
                    parts.append("ERROR")
                else:
                    parts.append(f"{getattr(r.report, metric):.4f}")
            lines.append(c.ljust(10) + "".join(p.rjust(width + 2) for p in parts))
        for r in self.rows:
            if r.error:
                lines.append(f"error in ({r.feature_set}, {r.classifier}): {r.error}")
        return "\n".join(lines)


def run_experiment_matrix(features, labels=None, classifiers=DEFAULT_VARIANTS, feature_sets=FEATURE_SETS,
                          protocol: str = "holdout", seed: int = 0, k: int = 10, train_fraction: float = 0.8,
                          scaler: str = "minmax+zscore", threshold: float | None = 0.7,
                          classifier_params: dict | None = None, n_jobs: int = 1,
                          feature_options: dict | None = None) -> ExperimentTable:
    """Evaluate every (feature set, classifier) cell.

    ``features`` is either a dict of named FeatureMatrix objects or a cleaned
    Corpus (features are then built with ``build_feature_sets``). A failing
    cell is recorded with its error and the grid continues.
    """
    if isinstance(features, Corpus):
        if labels is None:
            labels = features.labels
        features = build_feature_sets(features, seed=seed, n_jobs=n_jobs, **(feature_options or {}))
    if labels is None:
        raise ValueError("labels are required with precomputed features")
    if protocol not in ("holdout", "cv"):
        raise ValueError("protocol must be 'holdout' or 'cv'")
    y = np.asarray(labels, dtype=np.int64)
    classifier_params = classifier_params or {}
    table = ExperimentTable(protocol=f"{k}-fold-cv" if protocol == "cv" else
                            f"holdout-{round(train_fraction * 100)}/{100 - round(train_fraction * 100)}")
    for fs in feature_sets:
        for name in classifiers:
            t0 = time.perf_counter()
            config = {"classifier": name, "features": fs, "seed": seed, "scaler": scaler,
                      "threshold": threshold, "protocol": table.protocol}
            try:
                if fs not in features:
                    raise KeyError(f"feature set {fs!r} not available")
                X = features[fs].values
                pipe = build_pipeline(make_classifier(name, seed=seed, **classifier_params.get(name, {})),
                                      scaler, threshold)
                if protocol == "cv":
                    rep = cross_validate(pipe, X, y, k=k, seed=seed, config=config, n_jobs=n_jobs)
                else:
                    rep = holdout_evaluate(pipe, X, y, train_fraction, seed, config=config)
                table.rows.append(ExperimentRow(fs, name, rep, None, time.perf_counter() - t0))
            except Exception as exc:  # noqa: BLE001 - one bad cell must not stop the grid
                table.rows.append(ExperimentRow(fs, name, None, f"{type(exc).__name__}: {exc}",
                                                time.perf_counter() - t0))
    return table
