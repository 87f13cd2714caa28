"""``dacfake`` command line: stage-wise pipeline over a persisted artifact directory.

Exit codes: 0 success, 1 stage failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import corpus as corpus_mod
from .config import ConfigError, RunConfig, load_config, render
from .embed import CBOW, SG, doc_matrix, load_embedding, save_embedding, train
from .evaluation import build_pipeline, cross_validate, metrics, run_experiment_matrix
from .fuse import prune_correlated, scale
from .learn import CLASSIFIERS, load_model, make_classifier, save_model
from .lingfeat import DEFAULT_REGISTRY, article_features, extract_lf
from .matrix import FeatureMatrix, HashMismatchError, concat
from .store import ArtifactStore, LockedError, MissingArtifactError, check_chain, file_hash
from .textprep import LexiconSet, default_lexicons, prep_lf, prep_wv

log = logging.getLogger("dacfake")

CORPUS = "corpus.jsonl"
CORPUS_META = "corpus.meta.json"
LF = "lf.csv"
WV_NAMES = {"sg": SG, "cbow": CBOW}
PROVENANCE = {"sg": "WVF2", "cbow": "WVF1"}


def _wv_file(mode: str) -> str:
    return f"wv_{mode}.csv"


def _emb_file(mode: str) -> str:
    return f"embedding_{mode}.json"


def _fused_file(mode: str) -> str:
    return f"fused_{mode}.csv"


def _model_file(clf: str, mode: str) -> str:
    return f"model_{clf}_{mode}.json"


def _lexicons(cfg: RunConfig) -> LexiconSet:
    return LexiconSet.load(cfg.lexicon_dir) if cfg.lexicon_dir else default_lexicons()


def _current_corpus(store: ArtifactStore):
    meta = store.read_json(CORPUS_META, "prepare")
    (path,) = store.require("prepare", CORPUS)
    corpus, records = corpus_mod.read_jsonl(path)
    check_chain(corpus.content_hash(), meta["corpus_hash"], CORPUS, "prepare")
    return corpus, records, meta


def _load_matrix(store: ArtifactStore, name: str, stage: str, corpus_hash: str):
    (path,) = store.require(stage, name)
    m, labels = FeatureMatrix.load(path)
    check_chain(m.corpus_hash, corpus_hash, name, stage)
    return m, labels


# ---------------------------------------------------------------------------
# stages


def cmd_prepare(cfg: RunConfig) -> dict:
    """Ingest, run dataset-level cleaning and store both branch views of every article."""
    if not cfg.input:
        raise ConfigError("prepare needs an input CSV (--input)")
    schema = corpus_mod.Schema(cfg.col_text, cfg.col_title or None, cfg.col_label, None, cfg.concat_title)
    parts = []
    for p in cfg.input.split(","):
        if not Path(p).is_file():
            raise ConfigError(f"input file not found: {p}")
        parts.append(corpus_mod.ingest_csv(p, schema))
    raw = parts[0] if len(parts) == 1 else corpus_mod.concat_corpora(parts)
    clean = corpus_mod.phase1_clean(raw, corpus_mod.CleaningConfig.default(cfg.lexicon_dir or None))
    if len(clean) == 0:
        raise ValueError("no articles left after cleaning")
    lex = _lexicons(cfg)
    extra = {a.id: {"lf_text": prep_lf(a.text), "wv_tokens": prep_wv(a.text, lex)} for a in clean}
    store = ArtifactStore(cfg.resolved_out_dir())
    with store.lock():
        corpus_mod.write_jsonl(clean, store.path(CORPUS), extra)
        meta = {
            "corpus_hash": clean.content_hash(),
            "report": dict(clean.ingest_report),
            "n_fake": int(sum(a.label == 1 for a in clean)),
            "n_true": int(sum(a.label == 0 for a in clean)),
            "config": cfg.snapshot(),
        }
        store.write_json(CORPUS_META, meta)
        store.path("run.cfg").write_text(render(cfg), encoding="utf-8")
    return meta


def cmd_featurize(cfg: RunConfig) -> dict:
    store = ArtifactStore(cfg.resolved_out_dir())
    corpus, _, meta = _current_corpus(store)
    m = extract_lf(corpus, _lexicons(cfg), n_jobs=cfg.n_jobs)
    m.meta["input_hash"] = file_hash(store.path(CORPUS))
    with store.lock():
        m.save(store.path(LF), corpus.labels)
    return {"artifact": str(store.path(LF)), "shape": list(m.shape), "corpus_hash": meta["corpus_hash"]}


def cmd_embed(cfg: RunConfig, modes=None) -> dict:
    store = ArtifactStore(cfg.resolved_out_dir())
    corpus, records, meta = _current_corpus(store)
    docs = [r["wv_tokens"] for r in records]
    out = {}
    for mode in modes or (cfg.wv_mode,):
        model = train(docs, WV_NAMES[mode], vector_size=cfg.vector_size, window=cfg.window,
                      negative=cfg.negative, epochs=cfg.epochs, max_vocab=cfg.max_vocab, seed=cfg.seed)
        m = doc_matrix(model, docs, pooled=cfg.doc_vec_mode == "pooled")
        m.meta.update(corpus_hash=meta["corpus_hash"], input_hash=file_hash(store.path(CORPUS)),
                      embedding_file=_emb_file(mode))
        with store.lock():
            save_embedding(model, store.path(_emb_file(mode)))
            m.save(store.path(_wv_file(mode)), corpus.labels)
        out[mode] = {"artifact": str(store.path(_wv_file(mode))), "shape": list(m.shape),
                     "oov_tokens": m.meta["oov_tokens"], "final_loss": model.loss_history[-1]}
    return out


def cmd_fuse(cfg: RunConfig) -> dict:
    """LF-first concatenation. Scaling and pruning are refit inside every trained
    pipeline; the drop log written here (fit on all rows) is informational only."""
    store = ArtifactStore(cfg.resolved_out_dir())
    _, _, meta = _current_corpus(store)
    h = meta["corpus_hash"]
    lf, labels = _load_matrix(store, LF, "featurize", h)
    wv, _ = _load_matrix(store, _wv_file(cfg.wv_mode), "embed", h)
    fused = concat(lf, wv)
    fused.meta.update(input_hash={LF: file_hash(store.path(LF)),
                                  _wv_file(cfg.wv_mode): file_hash(store.path(_wv_file(cfg.wv_mode)))},
                      corpus_hash=h)
    scaled, _ = scale(fused, "minmax")
    _, drop_log = prune_correlated(scaled, labels, cfg.corr_threshold)
    with store.lock():
        fused.save(store.path(_fused_file(cfg.wv_mode)), labels)
        store.write_json(f"fuse_{cfg.wv_mode}.report.json",
                         {"corr_threshold": cfg.corr_threshold, "n_columns": fused.shape[1],
                          "n_dropped_all_rows": len(drop_log), "drop_log": drop_log})
    return {"artifact": str(store.path(_fused_file(cfg.wv_mode))), "shape": list(fused.shape),
            "dropped_all_rows": len(drop_log)}


def _pipeline(cfg: RunConfig):
    try:
        clf = make_classifier(cfg.classifier, seed=cfg.seed, **cfg.hyperparams)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    threshold = cfg.corr_threshold
    return build_pipeline(clf, cfg.scaler, threshold)


def _fused(cfg: RunConfig, store: ArtifactStore):
    _, _, meta = _current_corpus(store)
    m, labels = _load_matrix(store, _fused_file(cfg.wv_mode), "fuse", meta["corpus_hash"])
    return m, labels, meta


def cmd_train(cfg: RunConfig) -> dict:
    """Fit the full pipeline on the stratified training share of the fused features."""
    from .evaluation.split import train_test_indices

    store = ArtifactStore(cfg.resolved_out_dir())
    m, y, meta = _fused(cfg, store)
    train_idx, test_idx = train_test_indices(y, cfg.train_fraction, cfg.seed)
    pipe = _pipeline(cfg).fit(m.values[train_idx], y[train_idx])
    model_meta = {
        "corpus_hash": meta["corpus_hash"],
        "feature_set": cfg.feature_set,
        "wv_mode": cfg.wv_mode,
        "doc_vec_mode": cfg.doc_vec_mode,
        "columns": list(m.columns),
        "embedding_file": _emb_file(cfg.wv_mode),
        "input_hash": file_hash(store.path(_fused_file(cfg.wv_mode))),
        "test_idx": test_idx.tolist(),
        "config": cfg.snapshot(),
    }
    path = store.path(_model_file(cfg.classifier, cfg.wv_mode))
    with store.lock():
        save_model(pipe, path, model_meta)
    kept = int(pipe.named_steps["prune"].support_.sum()) if "prune" in pipe.named_steps else m.shape[1]
    return {"model": str(path), "train_rows": len(train_idx), "columns_after_pruning": kept}


def cmd_eval(cfg: RunConfig):
    store = ArtifactStore(cfg.resolved_out_dir())
    (mpath,) = store.require("train", _model_file(cfg.classifier, cfg.wv_mode))
    pipe, mm = load_model(mpath)
    m, y, meta = _fused(cfg, store)
    check_chain(mm["corpus_hash"], meta["corpus_hash"], mpath.name, "train")
    if mm["input_hash"] != file_hash(store.path(_fused_file(cfg.wv_mode))):
        raise HashMismatchError(f"{mpath.name} was trained on older fused features; re-run `dacfake train`")
    test = np.asarray(mm["test_idx"], dtype=np.int64)
    pct = round(cfg.train_fraction * 100)
    report = metrics(y[test], pipe.predict(m.values[test]), config=mm["config"])
    report.protocol = f"holdout-{pct}/{100 - pct}"
    stem = f"report_{cfg.classifier}_{cfg.wv_mode}"
    with store.lock():
        store.write_json(stem + ".json", report.to_dict())
        store.path(stem + ".txt").write_text(report.format() + "\n", encoding="utf-8")
    return report


def cmd_cv(cfg: RunConfig):
    store = ArtifactStore(cfg.resolved_out_dir())
    m, y, _ = _fused(cfg, store)
    config = {**cfg.snapshot(), "features": cfg.feature_set}
    report = cross_validate(_pipeline(cfg), m.values, y, k=cfg.k, seed=cfg.seed, config=config,
                            n_jobs=cfg.n_jobs)
    stem = f"cv_{cfg.classifier}_{cfg.wv_mode}"
    with store.lock():
        store.write_json(stem + ".json", report.to_dict())
        store.path(stem + ".txt").write_text(report.format() + "\n", encoding="utf-8")
    return report


def cmd_bench(cfg: RunConfig):
    """Every feature set (LF, WVF1, WVF2 and both LF fusions) against the configured classifiers."""
    store = ArtifactStore(cfg.resolved_out_dir())
    _, _, meta = _current_corpus(store)
    h = meta["corpus_hash"]
    lf, labels = _load_matrix(store, LF, "featurize", h)
    sets = {"LF": lf}
    for mode in ("cbow", "sg"):
        wv, _ = _load_matrix(store, _wv_file(mode), "embed --wv both", h)
        sets[PROVENANCE[mode]] = wv
        sets[f"LF+{PROVENANCE[mode]}"] = concat(lf, wv)
    for name in cfg.classifier_list:
        if name not in CLASSIFIERS:
            raise ConfigError(f"unknown classifier {name!r}")
    hp = {cfg.classifier: cfg.hyperparams} if cfg.hyperparams else None
    table = run_experiment_matrix(sets, labels, classifiers=cfg.classifier_list, protocol=cfg.protocol,
                                  seed=cfg.seed, k=cfg.k, train_fraction=cfg.train_fraction,
                                  scaler=cfg.scaler, threshold=cfg.corr_threshold,
                                  classifier_params=hp, n_jobs=cfg.n_jobs)
    with store.lock():
        table.to_csv(store.path("bench.csv"))
        store.path("bench.txt").write_text(table.format() + "\n", encoding="utf-8")
    return table


def _prepare_inputs(texts: list[str]) -> list[str]:
    ad = corpus_mod._phrase_pattern(corpus_mod.CleaningConfig.default().ad_phrases)
    out = []
    for i, t in enumerate(texts):
        cleaned, _ = corpus_mod.remove_phrase_sentences((t or "").strip(), ad)
        if not cleaned.strip():
            raise ValueError(f"input {i} is empty after cleaning; nothing to classify")
        out.append(cleaned)
    return out


def cmd_predict(model_path, texts: list[str], lexicon_dir: str = "") -> list[dict]:
    """Label new texts with a trained model and the artifacts stored next to it."""
    model_path = Path(model_path)
    if not model_path.is_file():
        raise MissingArtifactError([model_path], "train")
    pipe, mm = load_model(model_path)
    emb_path = model_path.with_name(mm["embedding_file"])
    if not emb_path.is_file():
        raise MissingArtifactError([emb_path], "embed")
    emb = load_embedding(emb_path)
    lex = LexiconSet.load(lexicon_dir) if lexicon_dir else default_lexicons()
    texts = _prepare_inputs(texts)
    lf_rows = np.array([[d[k] for k in DEFAULT_REGISTRY.ids] for d in (article_features(t, lex) for t in texts)])
    lf = FeatureMatrix(lf_rows.reshape(len(texts), -1), tuple(DEFAULT_REGISTRY.ids), "LF")
    docs = [prep_wv(t, lex) for t in texts]
    oov = [sum(tok not in emb.vocab.index for tok in d) for d in docs]
    wv = doc_matrix(emb, docs, pooled=mm.get("doc_vec_mode") == "pooled")
    fused = concat(lf, wv)
    if list(fused.columns) != mm["columns"]:
        raise ValueError("feature columns differ from those the model was trained on")
    proba = pipe.predict_proba(fused.values)[:, 1]
    labels = pipe.predict(fused.values)
    return [{"label": int(l), "p_fake": float(p), "oov_tokens": int(o)} for l, p, o in zip(labels, proba, oov)]


# ---------------------------------------------------------------------------
# argument parsing

_FLAG_FIELDS = {
    "input": "input", "col_text": "col_text", "col_title": "col_title", "col_label": "col_label",
    "concat_title": "concat_title", "out": "out_dir", "lexicon_dir": "lexicon_dir", "seed": "seed",
    "doc_vec_mode": "doc_vec_mode", "vector_size": "vector_size", "window": "window",
    "negative": "negative", "epochs": "epochs", "max_vocab": "max_vocab", "scaler": "scaler",
    "corr_threshold": "corr_threshold", "classifier": "classifier", "classifiers": "classifiers",
    "train_fraction": "train_fraction", "k": "k", "protocol": "protocol", "n_jobs": "n_jobs",
}


def _hp_value(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value run configuration file")
    p.add_argument("--out", help="artifact directory (default: $DACFAKE_DATA_DIR or ./dacfake-artifacts)")
    p.add_argument("--lexicon-dir", dest="lexicon_dir", help="directory overriding the bundled word lists")
    p.add_argument("--seed", type=int)
    p.add_argument("--n-jobs", dest="n_jobs", type=int)
    p.add_argument("--json", action="store_true", help="print machine-readable JSON")
    p.add_argument("-v", "--verbose", action="store_true")


def _add_wv(p, allow_both=False):
    p.add_argument("--wv", choices=("sg", "cbow", "both") if allow_both else ("sg", "cbow"),
                   help="word-vector branch: sg (WVF2) or cbow (WVF1)")


def _add_model(p):
    p.add_argument("--classifier", choices=sorted(CLASSIFIERS))
    p.add_argument("--hp", action="append", default=[], metavar="KEY=VALUE",
                   help="classifier hyperparameter (repeatable)")
    p.add_argument("--scaler", choices=("minmax+zscore", "minmax", "zscore", "none"))
    p.add_argument("--corr-threshold", dest="corr_threshold", type=float)
    _add_wv(p)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dacfake", description="Linguistic + word-vector fake-news classification pipeline")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="ingest CSV(s), clean, store both preprocessing branches")
    _add_common(p)
    p.add_argument("--input", help="CSV path; several files separated by commas")
    p.add_argument("--col-text", dest="col_text")
    p.add_argument("--col-title", dest="col_title")
    p.add_argument("--col-label", dest="col_label")
    p.add_argument("--concat-title", dest="concat_title", action="store_const", const=True)

    p = sub.add_parser("featurize", help="extract the 80 linguistic features")
    _add_common(p)

    p = sub.add_parser("embed", help="train word2vec and build document x vocabulary features")
    _add_common(p)
    _add_wv(p, allow_both=True)
    p.add_argument("--doc-vec-mode", dest="doc_vec_mode", choices=("mean", "pooled"))
    p.add_argument("--vector-size", dest="vector_size", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--negative", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--max-vocab", dest="max_vocab", type=int)

    p = sub.add_parser("fuse", help="concatenate linguistic and word-vector features")
    _add_common(p)
    _add_wv(p)
    p.add_argument("--corr-threshold", dest="corr_threshold", type=float)

    for name, text in (("train", "fit a pipeline on the training split"),
                       ("eval", "score a trained model on its held-out split"),
                       ("cv", "stratified k-fold cross-validation")):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        _add_model(p)
        p.add_argument("--train-fraction", dest="train_fraction", type=float)
        if name == "cv":
            p.add_argument("--k", type=int)

    p = sub.add_parser("bench", help="feature-set x classifier grid")
    _add_common(p)
    p.add_argument("--classifiers", help="comma-separated short names")
    p.add_argument("--protocol", choices=("holdout", "cv"))
    p.add_argument("--k", type=int)
    p.add_argument("--train-fraction", dest="train_fraction", type=float)
    p.add_argument("--scaler", choices=("minmax+zscore", "minmax", "zscore", "none"))
    p.add_argument("--corr-threshold", dest="corr_threshold", type=float)

    p = sub.add_parser("predict", help="label new text with a trained model")
    p.add_argument("--model", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text")
    src.add_argument("--input", help="CSV with a text column")
    p.add_argument("--col-text", dest="col_text", default="text")
    p.add_argument("--lexicon-dir", dest="lexicon_dir", default="")
    p.add_argument("--json", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("list-features", help="print the linguistic feature registry")
    p.add_argument("--json", action="store_true")
    return ap


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    over = {}
    for flag, fieldname in _FLAG_FIELDS.items():
        v = getattr(args, flag, None)
        if v is not None:
            over[fieldname] = v
    wv = getattr(args, "wv", None)
    if wv in ("sg", "cbow"):
        over["wv_mode"] = wv
    hp = dict(cfg.hyperparams)
    for item in getattr(args, "hp", []) or []:
        if "=" not in item:
            raise ConfigError(f"--hp expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        hp[k.strip()] = _hp_value(v.strip())
    over["hyperparams"] = hp
    return cfg.with_overrides(**over)


def _emit(obj, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        print(text if text is not None else json.dumps(obj, indent=2, sort_keys=True, default=str))


def _run(args) -> int:
    if args.command == "list-features":
        if args.json:
            _emit([{"index": i, "id": e.id, "category": e.category, "description": e.description}
                   for i, e in enumerate(DEFAULT_REGISTRY.entries)], True)
        else:
            print(DEFAULT_REGISTRY.format_table())
        return 0
    if args.command == "predict":
        if args.text is not None:
            texts = [args.text]
        else:
            corpus_mod._raise_field_limit()
            with open(args.input, newline="", encoding="utf-8") as fh:
                reader = csv.DictReader(fh)
                if args.col_text not in (reader.fieldnames or []):
                    raise ConfigError(f"missing column {args.col_text!r} in {args.input}")
                texts = [row[args.col_text] for row in reader]
        rows = cmd_predict(args.model, texts, args.lexicon_dir)
        if args.json:
            _emit(rows, True)
        else:
            for r in rows:
                print(f"{r['label']}\t{r['p_fake']:.6f}\t{r['oov_tokens']}")
        return 0

    cfg = resolve_config(args)
    if args.command == "prepare":
        _emit(cmd_prepare(cfg), True)
    elif args.command == "featurize":
        _emit(cmd_featurize(cfg), True)
    elif args.command == "embed":
        modes = ("cbow", "sg") if args.wv == "both" else None
        _emit(cmd_embed(cfg, modes), True)
    elif args.command == "fuse":
        _emit(cmd_fuse(cfg), True)
    elif args.command == "train":
        _emit(cmd_train(cfg), True)
    elif args.command in ("eval", "cv"):
        report = (cmd_eval if args.command == "eval" else cmd_cv)(cfg)
        _emit(report.to_dict(), args.json, report.format())
    elif args.command == "bench":
        table = cmd_bench(cfg)
        if args.json:
            _emit([{"feature_set": r.feature_set, "classifier": r.classifier, "error": r.error,
                    "report": r.report.to_dict() if r.report else None} for r in table.rows], True)
        else:
            print(table.format())
        return 1 if table.has_errors else 0
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except (ConfigError, corpus_mod.SchemaError, corpus_mod.LabelError) as e:
        print(f"dacfake {args.command}: {e}", file=sys.stderr)
        return 2
    except (MissingArtifactError, HashMismatchError, LockedError, ValueError, OSError) as e:
        print(f"dacfake {args.command}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
