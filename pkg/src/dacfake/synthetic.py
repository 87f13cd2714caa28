"""Seeded synthetic news corpus whose vocabulary carries the label.

Both classes share a neutral vocabulary and the same sentence machinery;
each class additionally draws words from its own small cue list. Surface
style (punctuation, sentence length) is identical across classes apart from
light noise, so word-level features carry most of the signal.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .corpus import Article, Corpus

NEUTRAL = (
    "city council market report week river school road bridge budget plan season "
    "team player match coach village farmer harvest weather storm morning evening "
    "office worker company price energy water garden museum library student teacher "
    "hospital doctor patient train station airport flight traveler hotel kitchen "
    "restaurant menu festival music concert artist painting history family neighbor "
    "street corner window door building tower park forest mountain valley island "
    "ocean beach boat harbor fisher village market shop customer product factory "
    "machine engine driver truck highway traffic police officer court judge lawyer "
    "election voter campaign speech debate leader member group meeting agreement "
    "project program service network system computer software phone camera picture "
    "story article reporter editor newspaper magazine radio television audience"
).split()

FAKE_CUES = (
    "shocking secret hoax exposed miracle outrage cover conspiracy bombshell banned "
    "insider scandal rigged leaked hidden elite globalist censored unbelievable panic "
    "propaganda smear viral cure fraud traitor destroy truth wake sheeple"
).split()

TRUE_CUES = (
    "ministry quarterly committee statement spokesperson percent analysts regulator "
    "survey official legislation fiscal delegation treaty parliament economist "
    "negotiations forecast inflation ratified bilateral consultation testimony audit "
    "procurement tariff"
).split()

FUNCTION = "the a of to in and on for with from by at as about after".split()


def _sentence(rng: np.random.Generator, cues, other, cue_rate: float, leak_rate: float) -> str:
    n = int(rng.integers(8, 17))
    words = []
    for i in range(n):
        u = rng.random()
        if u < cue_rate:
            words.append(cues[rng.integers(len(cues))])
        elif u < cue_rate + leak_rate:
            words.append(other[rng.integers(len(other))])
        elif i % 3 == 1:
            words.append(FUNCTION[rng.integers(len(FUNCTION))])
        else:
            words.append(NEUTRAL[rng.integers(len(NEUTRAL))])
    words[0] = words[0].capitalize()
    end = "!" if rng.random() < 0.08 else ("?" if rng.random() < 0.05 else ".")
    return " ".join(words) + end


def make_corpus(n_docs: int = 400, seed: int = 0, fake_fraction: float = 0.5,
                cue_rate: float = 0.12, leak_rate: float = 0.02) -> Corpus:
    """Corpus of ``n_docs`` articles, labels 1 (fake) / 0 (true), in shuffled order."""
    rng = np.random.default_rng(seed)
    n_fake = int(round(n_docs * fake_fraction))
    labels = np.array([1] * n_fake + [0] * (n_docs - n_fake))
    rng.shuffle(labels)
    articles = []
    for i, lab in enumerate(labels):
        cues, other = (FAKE_CUES, TRUE_CUES) if lab == 1 else (TRUE_CUES, FAKE_CUES)
        n_par = int(rng.integers(2, 5))
        paragraphs = []
        for _ in range(n_par):
            k = int(rng.integers(2, 5))
            paragraphs.append(" ".join(_sentence(rng, cues, other, cue_rate, leak_rate) for _ in range(k)))
        title = _sentence(rng, cues, other, cue_rate, leak_rate).rstrip(".!?")
        articles.append(Article(i, title, "\n\n".join(paragraphs), int(lab)))
    return Corpus(tuple(articles), f"synthetic-{seed}", {"rows_read": n_docs, "skipped": 0, "articles": n_docs})


def write_csv(corpus: Corpus, path: str | Path, label_names=("REAL", "FAKE")) -> Path:
    """Write ``id,title,text,label`` with string labels, as a public dataset would ship."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "title", "text", "label"])
        for a in corpus.articles:
            w.writerow([a.id, a.title, a.text, label_names[int(a.label)]])
    return path
