from __future__ import annotations

import re
from functools import lru_cache

_VOWEL_RUN = re.compile(r"[aeiouy]+")


@lru_cache(maxsize=65536)
def count_syllables(word: str) -> int:
    """Vowel-group syllable estimate.

    Counts maximal runs of ``aeiouy``; a final lone ``e`` after a consonant is
    silent unless the word ends consonant + ``le`` (``table``). Never below 1.
    """
    w = "".join(c for c in word.lower() if c.isalpha())
    if not w:
        return 1
    n = len(_VOWEL_RUN.findall(w))
    if len(w) >= 2 and w[-1] == "e" and w[-2] not in "aeiouy":
        consonant_le = w.endswith("le") and len(w) >= 3 and w[-3] not in "aeiouy"
        if not consonant_le:
            n -= 1
    return max(n, 1)
