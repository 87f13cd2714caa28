"""Bundled word lists (open substitutes for the proprietary LIWC categories).

Each list is a newline-delimited UTF-8 file. Lines starting with ``#`` are
comments; a ``# version: ...`` line names the list's version.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"

MIN_DALE_CHALL = 2900


def read_word_file(path: str | Path, lowercase: bool = True, phrases: bool = False) -> tuple[list[str], str]:
    words: list[str] = []
    version = "unversioned"
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.lower().startswith("version:"):
                    version = body.split(":", 1)[1].strip()
                continue
            if lowercase:
                line = line.lower()
            if phrases:
                line = " ".join(line.split())
            words.append(line)
    return words, version


@dataclass(frozen=True)
class LexiconSet:
    stopwords: frozenset[str]
    function_words: frozenset[str]
    greeting_words: frozenset[str]
    certainty_words: frozenset[str]
    tentative_words: frozenset[str]
    modal_verbs: frozenset[str]
    adjectives: frozenset[str]
    adverbs: frozenset[str]
    affective_terms: frozenset[str]
    positive_words: frozenset[str]
    negative_words: frozenset[str]
    self_references: frozenset[str]
    group_references: frozenset[str]
    first_person_pronouns: frozenset[str]
    second_person_pronouns: frozenset[str]
    third_person_pronouns: frozenset[str]
    dale_chall_familiar_words: frozenset[str]
    abbreviations: frozenset[str]
    versions: dict

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.name != "versions"]

    @classmethod
    def load(cls, directory: str | Path | None = None) -> "LexiconSet":
        """Load every list from ``directory``.

        Falls back to ``$DACFAKE_LEXICON_DIR`` and then the bundled data. Files
        missing from a user directory are taken from the bundled data.
        """
        directory = directory or os.environ.get("DACFAKE_LEXICON_DIR")
        dirs = [Path(directory)] if directory else []
        dirs.append(DATA_DIR)
        sets, versions = {}, {}
        for name in cls.names():
            path = next(d / f"{name}.txt" for d in dirs if (d / f"{name}.txt").exists())
            words, version = read_word_file(path)
            if not words:
                raise ValueError(f"lexicon {name!r} at {path} is empty")
            sets[name] = frozenset(words)
            versions[name] = version
        if len(sets["dale_chall_familiar_words"]) < MIN_DALE_CHALL:
            raise ValueError(
                f"Dale-Chall list has {len(sets['dale_chall_familiar_words'])} entries, "
                f"need at least {MIN_DALE_CHALL}"
            )
        return cls(versions=versions, **sets)


_default: LexiconSet | None = None


def default_lexicons() -> LexiconSet:
    global _default
    if _default is None:
        _default = LexiconSet.load()
    return _default
