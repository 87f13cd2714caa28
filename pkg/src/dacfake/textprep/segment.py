"""Paragraph, sentence and token segmentation with character offsets."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")
_PARA_RE = re.compile(r"\n[ \t\r\f\v]*\n\s*")
# sentence enders, optional closing quotes/brackets, then whitespace or end
_END_RE = re.compile(r"(?:[.?!…]+)[\"'”’)\]]*(?=\s|$)")


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class SegmentedText:
    chars: str
    paragraphs: tuple[tuple[str, ...], ...]
    sentences: tuple[str, ...]
    tokens: tuple[Token, ...]

    @property
    def words(self) -> list[str]:
        """Tokens holding at least one letter."""
        return [t.text for t in self.tokens if any(c.isalpha() for c in t.text)]


@lru_cache(maxsize=1)
def _abbreviations() -> frozenset[str]:
    from .lexicons import default_lexicons

    return default_lexicons().abbreviations


def split_sentences(paragraph: str, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Split on . ? ! or ellipsis followed by whitespace/end.

    A single period after a listed abbreviation, or after a lone capital
    initial, does not end the sentence.
    """
    abbr = _abbreviations() if abbreviations is None else abbreviations
    out: list[str] = []
    start = 0
    for m in _END_RE.finditer(paragraph):
        punct = m.group(0)
        if punct.rstrip("\"'”’)]") == ".":
            before = paragraph[start:m.start()].split()
            last = before[-1].lower().rstrip(".") if before else ""
            last = last.lstrip("(\"'“‘")
            if last in abbr or (len(last) == 1 and last.isalpha() and before[-1][0].isupper()):
                continue
        sent = paragraph[start:m.end()].strip()
        if sent:
            out.append(sent)
        start = m.end()
    tail = paragraph[start:].strip()
    if tail:
        out.append(tail)
    return out


def segment(text: str, abbreviations: frozenset[str] | None = None) -> SegmentedText:
    if not text:
        raise ValueError("segment() needs a non-empty string")
    paragraphs = []
    for block in _PARA_RE.split(text.strip()):
        sents = split_sentences(block, abbreviations)
        if sents:
            paragraphs.append(tuple(sents))
    if not paragraphs:
        paragraphs = [(text.strip(),)]
    sentences = tuple(s for p in paragraphs for s in p)
    tokens = tuple(Token(m.group(0), m.start(), m.end()) for m in TOKEN_RE.finditer(text))
    return SegmentedText(text, tuple(paragraphs), sentences, tokens)


def tokenize(text: str) -> list[str]:
    return TOKEN_RE.findall(text)
