"""Readability formulas (standard published English constants).

Every formula takes raw counts so it can be checked against hand arithmetic.
Zero words or zero sentences yield 0.0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..textprep.lexicons import LexiconSet, default_lexicons
from ..textprep.segment import SegmentedText
from ..textprep.syllables import count_syllables

READABILITY_NAMES = (
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "smog_index",
    "coleman_liau_index",
    "automated_readability_index",
    "dale_chall_score",
    "linsear_write",
    "gunning_fog",
    "lexicon_count",
    "lexical_diversity",
)


def flesch_reading_ease(words: int, sentences: int, syllables: int) -> float:
    if words <= 0 or sentences <= 0:
        return 0.0
    return 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words)


def flesch_kincaid_grade(words: int, sentences: int, syllables: int) -> float:
    if words <= 0 or sentences <= 0:
        return 0.0
    return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59


def smog_index(polysyllables: int, sentences: int) -> float:
    if sentences <= 0:
        return 0.0
    return 1.0430 * math.sqrt(polysyllables * 30.0 / sentences) + 3.1291


def coleman_liau_index(letters: int, words: int, sentences: int) -> float:
    # L = letters per 100 words, S = sentences per 100 words
    if words <= 0:
        return 0.0
    return 0.0588 * (100.0 * letters / words) - 0.296 * (100.0 * sentences / words) - 15.8


def automated_readability_index(chars: int, words: int, sentences: int) -> float:
    if words <= 0 or sentences <= 0:
        return 0.0
    return 4.71 * (chars / words) + 0.5 * (words / sentences) - 21.43


def dale_chall_score(difficult: int, words: int, sentences: int) -> float:
    if words <= 0 or sentences <= 0:
        return 0.0
    pct = 100.0 * difficult / words
    score = 0.1579 * pct + 0.0496 * (words / sentences)
    if pct > 5.0:
        score += 3.6365
    return score


def linsear_write(easy: int, hard: int, sentences: int) -> float:
    """Easy words (< 3 syllables) score 1, hard ones 3; whole text, not a 100-word sample."""
    if sentences <= 0 or easy + hard == 0:
        return 0.0
    r = (easy + 3.0 * hard) / sentences
    return r / 2.0 if r > 20 else (r - 2.0) / 2.0


def gunning_fog(complex_words: int, words: int, sentences: int) -> float:
    if words <= 0 or sentences <= 0:
        return 0.0
    return 0.4 * ((words / sentences) + 100.0 * (complex_words / words))


@dataclass(frozen=True)
class TextCounts:
    words: int
    sentences: int
    syllables: int
    polysyllables: int
    monosyllables: int
    letters: int
    chars: int
    difficult: int
    types: int


def text_counts(seg: SegmentedText, lex: LexiconSet) -> TextCounts:
    words = seg.words
    syl = [count_syllables(w) for w in words]
    familiar = lex.dale_chall_familiar_words
    return TextCounts(
        words=len(words),
        sentences=len(seg.sentences),
        syllables=sum(syl),
        polysyllables=sum(s >= 3 for s in syl),
        monosyllables=sum(s == 1 for s in syl),
        letters=sum(c.isalpha() for w in words for c in w),
        chars=sum(c.isalnum() for w in words for c in w),
        difficult=sum(w.lower() not in familiar for w in words),
        types=len({w.lower() for w in words}),
    )


def readability_suite(seg: SegmentedText, lex: LexiconSet | None = None) -> dict[str, float]:
    """The ten readability scores, keyed by ``READABILITY_NAMES``."""
    lex = lex or default_lexicons()
    c = text_counts(seg, lex)
    if c.words == 0:
        return {name: 0.0 for name in READABILITY_NAMES}
    return {
        "flesch_reading_ease": flesch_reading_ease(c.words, c.sentences, c.syllables),
        "flesch_kincaid_grade": flesch_kincaid_grade(c.words, c.sentences, c.syllables),
        "smog_index": smog_index(c.polysyllables, c.sentences),
        "coleman_liau_index": coleman_liau_index(c.letters, c.words, c.sentences),
        "automated_readability_index": automated_readability_index(c.chars, c.words, c.sentences),
        "dale_chall_score": dale_chall_score(c.difficult, c.words, c.sentences),
        "linsear_write": linsear_write(c.words - c.polysyllables, c.polysyllables, c.sentences),
        "gunning_fog": gunning_fog(c.polysyllables, c.words, c.sentences),
        "lexicon_count": float(c.words),
        "lexical_diversity": c.types / c.words,
    }
