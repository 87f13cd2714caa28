"""Per-article linguistic feature extraction.

Structure (lines, paragraphs, sentences, URLs) and all word statistics are
read from the Phase-1 text, because the linguistic cleaning step collapses
whitespace and strips the ``/`` in URLs. Character and punctuation counts are
read from the cleaned text.
"""
from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ..corpus import Corpus
from ..matrix import FeatureMatrix
from ..textprep.cleaning import URL_RE, prep_lf
from ..textprep.lexicons import LexiconSet, default_lexicons
from ..textprep.segment import segment, tokenize
from ..textprep.syllables import count_syllables
from .readability import readability_suite
from .registry import DEFAULT_REGISTRY, MAX_WORD_LEN_BUCKET, FeatureRegistry

_ELLIPSIS_RUN = re.compile(r"\.{3,}")


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def _sentiment_sentences(sentences: Sequence[str], lex: LexiconSet) -> tuple[int, int]:
    pos = neg = 0
    for s in sentences:
        toks = [t.lower() for t in tokenize(s)]
        p = sum(t in lex.positive_words for t in toks)
        n = sum(t in lex.negative_words for t in toks)
        if p > n:
            pos += 1
        elif n > p:
            neg += 1
    return pos, neg


def article_features(text: str, lex: LexiconSet | None = None) -> dict[str, float]:
    """Every registry feature for one article, as a dict keyed by feature id."""
    lex = lex or default_lexicons()
    f: dict[str, float] = {}
    if not text or not text.strip():
        return {e.id: 0.0 for e in DEFAULT_REGISTRY.entries}

    seg = segment(text, lex.abbreviations)
    lf = prep_lf(text)

    # LF1
    f["n_chars"] = len(lf)
    f["n_digits"] = sum(c.isdigit() for c in lf)
    f["n_letters"] = sum(c.isalpha() for c in lf)
    f["n_uppercase"] = sum(c.isupper() for c in lf)
    f["n_whitespace"] = sum(c.isspace() for c in lf)
    f["n_special_chars"] = sum(not (c.isalnum() or c.isspace()) for c in lf)

    # LF2
    words = seg.words
    lower = [w.lower() for w in words]
    n_words = len(words)
    n_sent = len(seg.sentences)
    freq = Counter(lower)
    chars_in_words = sum(len(w) for w in words)
    f["n_words"] = n_words
    f["n_short_words"] = sum(len(w) < 4 for w in words)
    f["n_chars_in_words"] = chars_in_words
    f["avg_sentence_len_chars"] = _ratio(sum(len(s) for s in seg.sentences), n_sent)
    f["avg_sentence_len_words"] = _ratio(n_words, n_sent)
    f["hapax_legomena"] = sum(v == 1 for v in freq.values())
    f["dis_legomena"] = sum(v == 2 for v in freq.values())
    f["type_token_ratio"] = _ratio(len(freq), n_words)
    f["n_types"] = len(freq)
    f["avg_word_length"] = _ratio(chars_in_words, n_words)
    lengths = Counter(min(len(w), MAX_WORD_LEN_BUCKET) for w in words)
    for k in range(1, MAX_WORD_LEN_BUCKET + 1):
        f[f"word_len_{k}"] = lengths.get(k, 0)

    # LF3
    ellipses = lf.count("…") + len(_ELLIPSIS_RUN.findall(lf))
    dots_in_ellipses = sum(len(m) for m in _ELLIPSIS_RUN.findall(lf))
    f["comma_freq"] = lf.count(",")
    f["double_quote_freq"] = lf.count('"')
    f["single_quote_freq"] = lf.count("'")
    f["hash_freq"] = lf.count("#")
    f["question_mark_freq"] = lf.count("?")
    f["at_freq"] = lf.count("@")
    f["ellipsis_freq"] = ellipses
    f["exclamation_freq"] = lf.count("!")
    f["period_freq"] = lf.count(".") - dots_in_ellipses
    f["colon_freq"] = lf.count(":")
    f["semicolon_freq"] = lf.count(";")
    f["function_word_ratio"] = _ratio(sum(w in lex.function_words for w in lower), n_words)

    # LF4
    n_par = len(seg.paragraphs)
    f["n_lines"] = sum(bool(line.strip()) for line in text.splitlines())
    f["n_sentences"] = n_sent
    f["n_paragraphs"] = n_par
    f["sentences_per_paragraph"] = _ratio(n_sent, n_par)
    f["chars_per_paragraph"] = _ratio(sum(len(s) for p in seg.paragraphs for s in p), n_par)
    f["words_per_paragraph"] = _ratio(n_words, n_par)
    f["greeting_words"] = sum(w in lex.greeting_words for w in lower)
    f["quoted_content"] = lf.count('"') // 2
    f["url_count"] = len(URL_RE.findall(text))

    # LF5
    content = sum(w not in lex.stopwords and w not in lex.function_words for w in lower)
    pos, neg = _sentiment_sentences(seg.sentences, lex)
    f["content_word_count"] = content
    f["content_word_ratio"] = _ratio(content, n_words)
    f["positive_sentences"] = pos
    f["negative_sentences"] = neg

    # LF6
    f.update(readability_suite(seg, lex))
    syl = [count_syllables(w) for w in words]
    f["avg_syllables_per_word"] = _ratio(sum(syl), n_words)
    f["polysyllable_count"] = sum(s >= 3 for s in syl)
    f["long_word_count"] = sum(len(w) > 6 for w in words)
    f["monosyllable_count"] = sum(s == 1 for s in syl)

    # LF7 - LF9 lexicon hits
    for name in (
        "certainty_words", "tentative_words", "modal_verbs",
        "adjectives", "adverbs", "affective_terms",
        "self_references", "group_references",
        "first_person_pronouns", "second_person_pronouns", "third_person_pronouns",
    ):
        words_set = getattr(lex, name)
        f[name] = sum(w in words_set for w in lower)
    return {k: float(v) for k, v in f.items()}


class LinguisticFeatures(TransformerMixin, BaseEstimator):
    """Stateless transformer: iterable of texts -> (n, 80) array."""

    def __init__(self, lexicon_dir=None):
        self.lexicon_dir = lexicon_dir

    def _lex(self) -> LexiconSet:
        return LexiconSet.load(self.lexicon_dir) if self.lexicon_dir else default_lexicons()

    def fit(self, X=None, y=None):
        self.n_features_out_ = len(DEFAULT_REGISTRY)
        return self

    def transform(self, X: Iterable[str]) -> np.ndarray:
        lex = self._lex()
        ids = DEFAULT_REGISTRY.ids
        rows = [[article_features(t, lex)[k] for k in ids] for t in X]
        return np.array(rows, dtype=np.float64).reshape(len(rows), len(ids))

    def get_feature_names_out(self, input_features=None):
        return np.array(DEFAULT_REGISTRY.ids, dtype=object)


def extract_lf(
    corpus: Corpus,
    lex: LexiconSet | None = None,
    reg: FeatureRegistry | None = None,
    n_jobs: int = 1,
) -> FeatureMatrix:
    """Feature matrix of shape ``(len(corpus), 80)`` in registry order."""
    lex = lex or default_lexicons()
    reg = reg or DEFAULT_REGISTRY
    ids = reg.ids
    texts = corpus.texts
    if n_jobs != 1 and len(texts) > 1:
        from joblib import Parallel, delayed

        dicts = Parallel(n_jobs=n_jobs)(delayed(article_features)(t, lex) for t in texts)
    else:
        dicts = [article_features(t, lex) for t in texts]
    values = np.array([[d[k] for k in ids] for d in dicts], dtype=np.float64).reshape(len(texts), len(ids))
    meta = {
        "registry_version": reg.version,
        "lexicon_versions": dict(lex.versions),
        "corpus_hash": corpus.content_hash(),
    }
    return FeatureMatrix(values, tuple(ids), "LF", meta)
