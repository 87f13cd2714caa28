"""Small rule-table lemmatizer: plural -> singular, -ing / -ed stripping.

No dictionary is consulted; a restore list protects words whose ending is
not an inflection (``thing``, ``need``, ``news``...).
"""
from __future__ import annotations

from functools import lru_cache

_KEEP = frozenset(
    """
    thing nothing something anything everything king ring sing bring spring string
    during morning evening ceiling wing sting swing sling cling fling ping
    need feed seed bed red shed speed indeed hundred bleed breed proceed succeed
    exceed greed weed deed heed steed sled wed fled bred led
    news series species means politics economics physics mathematics ethics
    bus gas yes this his has was is as us plus thus its lens chaos bias
    always perhaps whereas besides towards sometimes afterwards
    crisis analysis basis thesis status virus campus census focus bonus
    """.split()
)

_IRREGULAR_PLURALS = {
    "men": "man", "women": "woman", "children": "child", "people": "person",
    "feet": "foot", "teeth": "tooth", "mice": "mouse", "geese": "goose",
    "lives": "life", "wives": "wife", "knives": "knife", "leaves": "leaf",
    "halves": "half", "selves": "self", "thieves": "thief",
}

_VOWELS = set("aeiouy")


def _restore_e(stem: str) -> str:
    # make / mak, hope / hop: short consonant-vowel-consonant endings get an e
    if (
        len(stem) >= 3
        and stem[-1] not in _VOWELS | {"w", "x"}
        and stem[-2] in _VOWELS - {"y"}
        and stem[-3] not in _VOWELS
        and sum(c in _VOWELS for c in stem) == 1
    ):
        return stem + "e"
    if len(stem) > 3 and stem.endswith(("at", "iz", "bl", "iv", "uc", "rg", "dg", "rc")):
        return stem + "e"
    return stem


def _strip_verbal(word: str, suffix: str) -> str:
    stem = word[: -len(suffix)]
    if len(stem) < 3 or not any(c in _VOWELS for c in stem):
        return word
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "lsz" and stem[-1] not in _VOWELS:
        return stem[:-1]
    return _restore_e(stem)


@lru_cache(maxsize=65536)
def lemmatize(word: str) -> str:
    """Reduce one lowercase word to a base form."""
    if len(word) <= 3 or word in _KEEP:
        return word
    if word in _IRREGULAR_PLURALS:
        return _IRREGULAR_PLURALS[word]
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith(("ches", "shes", "xes", "zzes")):
        return word[:-2]
    if word.endswith("ing"):
        return _strip_verbal(word, "ing")
    if word.endswith("ied") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ed"):
        return _strip_verbal(word, "ed")
    if word.endswith("s") and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return word
