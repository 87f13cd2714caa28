"""word2vec (CBOW and skip-gram, negative sampling) and document features.

Training runs in a single-threaded numba kernel seeded from the model seed,
so a given corpus, seed and hyperparameter set reproduces vectors bit for
bit. :func:`pair_loss_and_grad` is a plain numpy version of one update,
kept for gradient checks.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from numba import njit
from sklearn.base import BaseEstimator, TransformerMixin

from .matrix import FeatureMatrix

CBOW, SG = "cbow", "sg"
MODES = (CBOW, SG)
FORMAT_VERSION = 1


@dataclass(frozen=True)
class Vocab:
    words: tuple[str, ...]
    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.words)

    @property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}


def build_vocab(docs: Sequence[Sequence[str]], max_size: int = 1000) -> Vocab:
    """Most frequent ``max_size`` tokens; equal counts ordered lexicographically."""
    counts = Counter(t for d in docs for t in d)
    if not counts:
        raise ValueError("cannot build a vocabulary: every document is empty")
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:max_size]
    return Vocab(tuple(w for w, _ in ranked), tuple(c for _, c in ranked))


@dataclass
class EmbeddingModel:
    vocab: Vocab
    input_vectors: np.ndarray
    output_vectors: np.ndarray
    mode: str
    hyperparams: dict = field(default_factory=dict)
    loss_history: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.input_vectors.shape[1]


# --------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _sigmoid(x):
    if x >= 0:
        return 1.0 / (1.0 + np.exp(-x))
    e = np.exp(x)
    return e / (1.0 + e)


@njit(cache=True)
def _log_sigmoid(x):
    if x >= 0:
        return -np.log1p(np.exp(-x))
    return x - np.log1p(np.exp(x))


@njit(cache=True)
def _ns_update(h, syn1, target, negs, alpha, neu1e):
    """Negative-sampling update of output vectors; accumulates d(-loss)/dh into neu1e."""
    loss = 0.0
    dim = h.shape[0]
    for k in range(negs.shape[0] + 1):
        if k == 0:
            w = target
            label = 1.0
        else:
            w = negs[k - 1]
            label = 0.0
        f = 0.0
        for d in range(dim):
            f += h[d] * syn1[w, d]
        if label > 0.0:
            loss -= _log_sigmoid(f)
        else:
            loss -= _log_sigmoid(-f)
        g = label - _sigmoid(f)
        for d in range(dim):
            neu1e[d] += g * syn1[w, d]
        for d in range(dim):
            syn1[w, d] += alpha * g * h[d]
    return loss


@njit(cache=True)
def sg_step(syn0, syn1, center, target, negs, alpha):
    """One skip-gram update: the center word's input vector predicts ``target``."""
    dim = syn0.shape[1]
    h = syn0[center].copy()
    neu1e = np.zeros(dim)
    loss = _ns_update(h, syn1, target, negs, alpha, neu1e)
    for d in range(dim):
        syn0[center, d] += alpha * neu1e[d]
    return loss


@njit(cache=True)
def cbow_step(syn0, syn1, context, target, negs, alpha):
    """One CBOW update: the mean of the context input vectors predicts ``target``."""
    dim = syn0.shape[1]
    n = context.shape[0]
    h = np.zeros(dim)
    for c in range(n):
        for d in range(dim):
            h[d] += syn0[context[c], d]
    for d in range(dim):
        h[d] /= n
    neu1e = np.zeros(dim)
    loss = _ns_update(h, syn1, target, negs, alpha, neu1e)
    for c in range(n):
        for d in range(dim):
            syn0[context[c], d] += alpha * neu1e[d] / n
    return loss


@njit(cache=True)
def _draw_negatives(cum_table, negative, target):
    out = np.empty(negative, dtype=np.int64)
    n = 0
    total = cum_table[-1]
    for _ in range(negative):
        w = np.searchsorted(cum_table, np.random.random() * total, side="right")
        if w >= cum_table.shape[0]:
            w = cum_table.shape[0] - 1
        if w == target:
            continue
        out[n] = w
        n += 1
    return out[:n]


@njit(cache=True)
def _train_epoch(syn0, syn1, tokens, starts, cum_table, sg, window, negative,
                 alpha0, min_alpha, done, total, seed):
    np.random.seed(seed)
    loss_sum = 0.0
    n_updates = 0
    ctx = np.empty(2 * window, dtype=np.int64)
    for doc in range(starts.shape[0] - 1):
        a, b = starts[doc], starts[doc + 1]
        for i in range(a, b):
            alpha = alpha0 - (alpha0 - min_alpha) * (done / total)
            if alpha < min_alpha:
                alpha = min_alpha
            done += 1
            reduced = np.random.randint(0, window)
            win = window - reduced
            lo = max(a, i - win)
            hi = min(b, i + win + 1)
            if sg:
                for j in range(lo, hi):
                    if j == i:
                        continue
                    negs = _draw_negatives(cum_table, negative, tokens[j])
                    loss_sum += sg_step(syn0, syn1, tokens[i], tokens[j], negs, alpha)
                    n_updates += 1
            else:
                n = 0
                for j in range(lo, hi):
                    if j != i:
                        ctx[n] = tokens[j]
                        n += 1
                if n == 0:
                    continue
                negs = _draw_negatives(cum_table, negative, tokens[i])
                loss_sum += cbow_step(syn0, syn1, ctx[:n], tokens[i], negs, alpha)
                n_updates += 1
    return loss_sum, n_updates


# --------------------------------------------------------------------------
# numpy reference (gradient checks)


def pair_loss(syn0, syn1, mode, inputs, target, negs) -> float:
    """Negative-sampling loss of one update; ``inputs`` is the center (SG) or context ids (CBOW)."""
    inputs = np.atleast_1d(np.asarray(inputs))
    h = syn0[inputs].mean(axis=0) if mode == CBOW else syn0[inputs[0]]
    pos = syn1[target] @ h
    neg = syn1[np.asarray(negs, dtype=int)] @ h
    return float(np.logaddexp(0.0, -pos) + np.logaddexp(0.0, neg).sum())


def pair_loss_and_grad(syn0, syn1, mode, inputs, target, negs):
    """Loss and full-matrix gradients ``(loss, d/dsyn0, d/dsyn1)``."""
    inputs = np.atleast_1d(np.asarray(inputs))
    negs = np.asarray(negs, dtype=int)
    h = syn0[inputs].mean(axis=0) if mode == CBOW else syn0[inputs[0]]
    loss = pair_loss(syn0, syn1, mode, inputs, target, negs)
    sig = lambda z: 1.0 / (1.0 + np.exp(-z))
    g_pos = sig(syn1[target] @ h) - 1.0
    g_neg = sig(syn1[negs] @ h)
    dh = g_pos * syn1[target] + g_neg @ syn1[negs]
    g1 = np.zeros_like(syn1)
    g1[target] += g_pos * h
    np.add.at(g1, negs, np.outer(g_neg, h))
    g0 = np.zeros_like(syn0)
    if mode == CBOW:
        np.add.at(g0, inputs, np.tile(dh / len(inputs), (len(inputs), 1)))
    else:
        g0[inputs[0]] += dh
    return loss, g0, g1


# --------------------------------------------------------------------------


def _encode(docs: Sequence[Sequence[str]], index: dict[str, int]) -> tuple[np.ndarray, np.ndarray]:
    ids: list[int] = []
    starts = [0]
    for d in docs:
        ids.extend(index[t] for t in d if t in index)
        starts.append(len(ids))
    return np.asarray(ids, dtype=np.int64), np.asarray(starts, dtype=np.int64)


def train(
    docs: Sequence[Sequence[str]],
    mode: str = CBOW,
    vector_size: int = 100,
    window: int = 5,
    negative: int = 5,
    epochs: int = 5,
    alpha: float = 0.025,
    min_alpha: float = 2.5e-5,
    max_vocab: int = 1000,
    seed: int = 0,
    vocab: Vocab | None = None,
) -> EmbeddingModel:
    """Train input/output embeddings with SGD and negative sampling.

    Negatives come from the unigram distribution raised to 0.75; the learning
    rate falls linearly from ``alpha`` to ``min_alpha`` over all epochs.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if vector_size < 2:
        raise ValueError("vector_size must be at least 2")
    if window < 1:
        raise ValueError("window must be at least 1")
    vocab = vocab or build_vocab(docs, max_vocab)
    if len(vocab) == 0:
        raise ValueError("empty vocabulary")
    rng = np.random.default_rng(seed)
    syn0 = (rng.random((len(vocab), vector_size)) - 0.5) / vector_size
    syn1 = np.zeros((len(vocab), vector_size))
    tokens, starts = _encode(docs, vocab.index)
    cum_table = np.cumsum(np.asarray(vocab.counts, dtype=np.float64) ** 0.75)
    hp = dict(vector_size=vector_size, window=window, negative=negative, epochs=epochs,
              alpha=alpha, min_alpha=min_alpha, max_vocab=max_vocab, seed=seed)
    model = EmbeddingModel(vocab, syn0, syn1, mode, hp)
    total = max(len(tokens) * epochs, 1)
    epoch_seeds = rng.integers(0, 2**31 - 1, size=epochs)
    for e in range(epochs):
        loss, n = _train_epoch(syn0, syn1, tokens, starts, cum_table, mode == SG, window,
                               negative, alpha, min_alpha, e * len(tokens), total, int(epoch_seeds[e]))
        model.loss_history.append(loss / n if n else 0.0)
    return model


def doc_matrix(model: EmbeddingModel, docs: Sequence[Sequence[str]], pooled: bool = False) -> FeatureMatrix:
    """Document features from a trained model.

    Default: ``#docs x |vocab|``; cell (i, j) is the mean over the components
    of word j's input vector when word j occurs in document i, else 0.
    ``pooled=True`` instead gives the ``#docs x D`` mean of the input vectors
    of each document's in-vocabulary tokens.
    """
    index = model.vocab.index
    n_oov = 0
    prov = "WVF1" if model.mode == CBOW else "WVF2"
    tag = "cbow" if model.mode == CBOW else "sg"
    if pooled:
        out = np.zeros((len(docs), model.dim))
        for i, d in enumerate(docs):
            ids = [index[t] for t in d if t in index]
            n_oov += len(d) - len(ids)
            if ids:
                out[i] = model.input_vectors[ids].mean(axis=0)
        cols = tuple(f"{tag}_dim{k}" for k in range(model.dim))
    else:
        word_means = model.input_vectors.mean(axis=1)
        out = np.zeros((len(docs), len(model.vocab)))
        for i, d in enumerate(docs):
            ids = sorted({index[t] for t in d if t in index})
            n_oov += sum(t not in index for t in d)
            out[i, ids] = word_means[ids]
        cols = tuple(f"{tag}:{w}" for w in model.vocab.words)
    meta = {"embedding": {"mode": model.mode, **model.hyperparams}, "oov_tokens": n_oov,
            "doc_vec_mode": "pooled" if pooled else "mean"}
    return FeatureMatrix(out, cols, prov, meta)


def save_embedding(model: EmbeddingModel, path: str | Path) -> None:
    """JSON header at ``path`` plus little-endian float64 blob at ``path``.f64."""
    path = Path(path)
    V, D = model.input_vectors.shape
    header = {
        "format_version": FORMAT_VERSION,
        "mode": model.mode,
        "hyperparams": model.hyperparams,
        "vocab": [[w, c] for w, c in zip(model.vocab.words, model.vocab.counts)],
        "shape": [V, D],
        "loss_history": model.loss_history,
        "blob": path.name + ".f64",
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(header, fh)
    blob = np.concatenate([model.input_vectors.ravel(), model.output_vectors.ravel()])
    blob.astype("<f8").tofile(path.with_name(path.name + ".f64"))


def load_embedding(path: str | Path) -> EmbeddingModel:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        header = json.load(fh)
    if header.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported embedding format {header.get('format_version')!r}")
    V, D = header["shape"]
    if len(header["vocab"]) != V:
        raise ValueError("vocabulary size disagrees with vector shape")
    blob = np.fromfile(path.with_name(header["blob"]), dtype="<f8")
    if blob.size != 2 * V * D:
        raise ValueError(f"vector blob holds {blob.size} floats, header implies {2 * V * D}")
    vocab = Vocab(tuple(w for w, _ in header["vocab"]), tuple(int(c) for _, c in header["vocab"]))
    syn0 = blob[: V * D].reshape(V, D).astype(np.float64)
    syn1 = blob[V * D:].reshape(V, D).astype(np.float64)
    return EmbeddingModel(vocab, syn0, syn1, header["mode"], header["hyperparams"], header["loss_history"])


class Word2Vec(TransformerMixin, BaseEstimator):
    """Token lists -> word-vector document features.

    ``fit`` trains on the documents it is given (no labels used);
    ``transform`` builds the document matrix of :func:`doc_matrix`.
    """

    def __init__(self, mode=SG, vector_size=100, window=5, negative=5, epochs=5,
                 alpha=0.025, min_alpha=2.5e-5, max_vocab=1000, doc_vec_mode="mean", seed=0):
        self.mode = mode
        self.vector_size = vector_size
        self.window = window
        self.negative = negative
        self.epochs = epochs
        self.alpha = alpha
        self.min_alpha = min_alpha
        self.max_vocab = max_vocab
        self.doc_vec_mode = doc_vec_mode
        self.seed = seed

    def fit(self, X, y=None):
        self.model_ = train(X, self.mode, self.vector_size, self.window, self.negative, self.epochs,
                            self.alpha, self.min_alpha, self.max_vocab, self.seed)
        return self

    def transform(self, X):
        return doc_matrix(self.model_, X, pooled=self.doc_vec_mode == "pooled").values

    def get_feature_names_out(self, input_features=None):
        tag = "cbow" if self.mode == CBOW else "sg"
        if self.doc_vec_mode == "pooled":
            return np.array([f"{tag}_dim{k}" for k in range(self.vector_size)], dtype=object)
        return np.array([f"{tag}:{w}" for w in self.model_.vocab.words], dtype=object)
