"""Branch-specific cleaning: conservative for linguistic features, aggressive for word vectors."""
from __future__ import annotations

import re
import unicodedata

from .lemmatize import lemmatize
from .lexicons import LexiconSet, default_lexicons
from .porter import stem
from .segment import TOKEN_RE

# Kept by the linguistic branch. The extra . ! : ; are needed for sentence
# enders and exclamation counts.
PRESERVED_PUNCT = frozenset(",\"'#?@…!.:;")

EMOJI_RE = re.compile(
    "["
    "\U0001F000-\U0001FAFF"
    "\U00002600-\U000027BF"
    "\U00002B00-\U00002BFF"
    "\U0001F1E6-\U0001F1FF"
    "\U0000FE00-\U0000FE0F"
    "\U0000200D"
    "\U000020E3"
    "\U0000231A-\U0000231B"
    "\U000023E9-\U000023FA"
    "]+"
)

_QUOTES = str.maketrans({"“": '"', "”": '"', "„": '"', "‟": '"', "‘": "'", "’": "'", "‚": "'", "‛": "'"})

URL_RE = re.compile(r"(?:https?|ftp)://\S+|www\.\S+", re.IGNORECASE)

_MONTH = (
    r"(?:jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|june?|july?|aug(?:ust)?"
    r"|sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?)"
)
DATE_RE = re.compile(
    r"\b\d{1,4}[/.\-]\d{1,2}[/.\-]\d{1,4}\b"
    rf"|\b{_MONTH}\.?\s+\d{{1,2}}(?:st|nd|rd|th)?(?:,?\s+\d{{4}})?\b"
    rf"|\b\d{{1,2}}(?:st|nd|rd|th)?\s+{_MONTH}\.?(?:,?\s+\d{{4}})?\b"
    rf"|\b{_MONTH}\.?,?\s+\d{{4}}\b",
    re.IGNORECASE,
)


def normalize_quotes(text: str) -> str:
    return text.translate(_QUOTES)


def strip_emoji(text: str) -> str:
    return EMOJI_RE.sub("", text)


def prep_lf(text: str) -> str:
    """Clean text for linguistic features.

    Curly quotes become straight ones, emojis are deleted, every punctuation
    character outside ``PRESERVED_PUNCT`` becomes a space, and whitespace runs
    collapse to one space.
    """
    text = strip_emoji(normalize_quotes(text))
    out = []
    for ch in text:
        if ch not in PRESERVED_PUNCT and unicodedata.category(ch).startswith("P"):
            out.append(" ")
        else:
            out.append(ch)
    return " ".join("".join(out).split())


def _base_form(token: str) -> str:
    # lemmatize then stem, repeated until stable so the branch is idempotent
    for _ in range(10):
        nxt = stem(lemmatize(token))
        if nxt == token:
            break
        token = nxt
    return token


def prep_wv(text: str, lex: LexiconSet | None = None) -> list[str]:
    """Token list for the word-vector branch.

    Lowercases; removes URLs, dates, numbers, punctuation, emojis and
    stopwords; lemmatizes and Porter-stems what is left.
    """
    lex = lex or default_lexicons()
    stop = lex.stopwords
    text = normalize_quotes(text.lower())
    text = URL_RE.sub(" ", text)
    text = DATE_RE.sub(" ", text)
    text = strip_emoji(text)
    out: list[str] = []
    for tok in TOKEN_RE.findall(text):
        if any(c.isdigit() for c in tok):
            continue
        if tok.endswith("'s"):
            tok = tok[:-2]
        tok = tok.replace("'", "")
        if not tok or tok in stop:
            continue
        tok = _base_form(tok)
        if tok and tok not in stop:
            out.append(tok)
    return out
