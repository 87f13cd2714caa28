"""Labeled news corpora: CSV ingestion and first-pass (dataset level) cleaning."""
from __future__ import annotations

import csv
import hashlib
import json
import re
import sys
import unicodedata
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .textprep.lexicons import read_word_file, DATA_DIR

DEFAULT_LABEL_MAP: dict[str, int] = {
    "fake": 1,
    "true": 0,
    "real": 0,
    "1": 1,
    "0": 0,
}


class SchemaError(ValueError):
    """A required column is absent from the CSV header."""

    def __init__(self, column: str, path: str | Path | None = None):
        self.column = column
        where = f" in {path}" if path is not None else ""
        super().__init__(f"missing column {column!r}{where}")


class LabelError(ValueError):
    def __init__(self, values: Iterable[str]):
        self.values = sorted(set(values))
        super().__init__(f"label values outside the configured mapping: {self.values}")


@dataclass(frozen=True)
class Article:
    id: int
    title: str
    text: str
    label: int | str | None


@dataclass(frozen=True)
class Schema:
    """Column mapping for one CSV file.

    ``label_constant`` assigns one label to every row, for datasets shipped as
    one file per class (e.g. separate fake/true files).
    """

    text: str = "text"
    title: str | None = "title"
    label: str | None = "label"
    label_constant: str | None = None
    concat_title: bool = False


@dataclass(frozen=True)
class Corpus:
    articles: tuple[Article, ...]
    source_name: str = ""
    ingest_report: Mapping[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.articles)

    def __iter__(self):
        return iter(self.articles)

    @property
    def texts(self) -> list[str]:
        return [a.text for a in self.articles]

    @property
    def labels(self) -> list:
        return [a.label for a in self.articles]

    def content_hash(self) -> str:
        """SHA-256 over ids, labels and texts; stable across runs."""
        h = hashlib.sha256()
        for a in self.articles:
            h.update(json.dumps([a.id, a.label, a.title, a.text], ensure_ascii=False).encode())
            h.update(b"\n")
        return h.hexdigest()


def _raise_field_limit() -> None:
    limit = sys.maxsize
    while True:
        try:
            csv.field_size_limit(limit)
            return
        except OverflowError:
            limit //= 10


def ingest_csv(path: str | Path, schema: Schema | None = None, encoding: str = "utf-8") -> Corpus:
    """Read a labeled CSV without cleaning it.

    Rows whose field count differs from the header are skipped and counted in
    ``ingest_report["skipped"]``.
    """
    schema = schema or Schema()
    path = Path(path)
    _raise_field_limit()
    articles: list[Article] = []
    rows_read = skipped = 0
    with open(path, newline="", encoding=encoding) as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(schema.text, path) from None
        header = [h.strip().lstrip("﻿") for h in header]
        wanted = [schema.text]
        if schema.label_constant is None and schema.label is not None:
            wanted.append(schema.label)
        for col in wanted:
            if col not in header:
                raise SchemaError(col, path)
        i_text = header.index(schema.text)
        i_title = header.index(schema.title) if schema.title in header else None
        i_label = (
            header.index(schema.label)
            if schema.label_constant is None and schema.label in header
            else None
        )
        while True:
            try:
                row = next(reader)
            except StopIteration:
                break
            except csv.Error:
                rows_read += 1
                skipped += 1
                continue
            if not row:
                continue
            rows_read += 1
            if len(row) != len(header):
                skipped += 1
                continue
            title = row[i_title] if i_title is not None else ""
            text = row[i_text]
            if schema.concat_title and title:
                text = f"{title}\n\n{text}"
            label = schema.label_constant if schema.label_constant is not None else row[i_label]
            articles.append(Article(len(articles), title, text, label))
    report = {"rows_read": rows_read, "skipped": skipped, "articles": len(articles)}
    return Corpus(tuple(articles), source_name=path.name, ingest_report=report)


def concat_corpora(corpora: Iterable[Corpus]) -> Corpus:
    """Join several ingested files into one corpus, renumbering ids."""
    articles: list[Article] = []
    names: list[str] = []
    report: dict[str, int] = {"rows_read": 0, "skipped": 0}
    for c in corpora:
        names.append(c.source_name)
        for k in ("rows_read", "skipped"):
            report[k] += int(c.ingest_report.get(k, 0))
        for a in c.articles:
            articles.append(replace(a, id=len(articles)))
    report["articles"] = len(articles)
    return Corpus(tuple(articles), "+".join(names), report)


# --------------------------------------------------------------------------
# Phase-1 cleaning

def _normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text).strip()


def _phrase_pattern(phrases: Iterable[str]) -> re.Pattern | None:
    parts = [r"\s+".join(map(re.escape, p.split())) for p in phrases if p.strip()]
    if not parts:
        return None
    return re.compile("|".join(parts), re.IGNORECASE)


def remove_phrase_sentences(text: str, pattern: re.Pattern | None) -> tuple[str, int]:
    """Cut every sentence that contains a match of ``pattern``.

    A sentence here runs from just after the previous [.!?] or newline to the
    next [.!?] (inclusive) or newline.
    """
    if pattern is None:
        return text, 0
    removed = 0
    while True:
        m = pattern.search(text)
        if m is None:
            break
        start = m.start()
        while start > 0 and text[start - 1] not in ".!?\n":
            start -= 1
        end = m.end()
        while end < len(text) and text[end] not in ".!?\n":
            end += 1
        while end < len(text) and text[end] in ".!?":
            end += 1
        text = text[:start] + text[end:]
        removed += 1
    if removed:
        text = re.sub(r"[ \t]{2,}", " ", text)
        text = re.sub(r"[ \t]+\n", "\n", text).strip()
    return text, removed


@dataclass(frozen=True)
class CleaningConfig:
    ad_phrases: tuple[str, ...] = ()
    drop_phrases: tuple[str, ...] = ()
    label_map: Mapping[str, int] = field(default_factory=lambda: dict(DEFAULT_LABEL_MAP))

    @classmethod
    def default(cls, lexicon_dir: str | Path | None = None) -> "CleaningConfig":
        d = Path(lexicon_dir) if lexicon_dir else DATA_DIR
        ad, _ = read_word_file(d / "ad_phrases.txt", lowercase=True, phrases=True)
        drop, _ = read_word_file(d / "drop_phrases.txt", lowercase=True, phrases=True)
        return cls(tuple(ad), tuple(drop))


def _map_label(value, label_map: Mapping[str, int]):
    if value is None:
        return None
    if isinstance(value, bool):
        value = int(value)
    key = str(value).strip().lower()
    if key == "" or key == "nan":
        return None
    if key in label_map:
        return label_map[key]
    raise KeyError(key)


def phase1_clean(corpus: Corpus, config: CleaningConfig | None = None) -> Corpus:
    """Dataset-level cleaning, in this order:

    1. drop exact-duplicate texts (NFC, trimmed), keeping the first;
    2. cut sentences holding an ad phrase;
    3. drop articles holding a "page not found" class phrase;
    4. map label strings to 1 (fake) / 0 (true);
    5. drop rows with missing text or label.

    The duplicate key is computed after step 2 so that two copies differing
    only by an ad sentence collapse; this keeps the function idempotent.
    """
    config = config or CleaningConfig.default()
    ad_re = _phrase_pattern(config.ad_phrases)
    drop_re = _phrase_pattern(config.drop_phrases)

    bad_labels = []
    for a in corpus.articles:
        try:
            _map_label(a.label, config.label_map)
        except KeyError as e:
            bad_labels.append(e.args[0])
    if bad_labels:
        raise LabelError(bad_labels)

    seen: set[str] = set()
    counts = {"duplicates": 0, "ad_sentences_removed": 0, "not_found_dropped": 0, "missing_dropped": 0}
    kept: list[Article] = []
    for a in corpus.articles:
        text, n_ads = remove_phrase_sentences(_normalize(a.text or ""), ad_re)
        if text in seen and text:
            counts["duplicates"] += 1
            continue
        seen.add(text)
        counts["ad_sentences_removed"] += n_ads
        if drop_re is not None and drop_re.search(text):
            counts["not_found_dropped"] += 1
            continue
        label = _map_label(a.label, config.label_map)
        if not text or label is None:
            counts["missing_dropped"] += 1
            continue
        kept.append(Article(a.id, a.title or "", text, label))

    report = dict(corpus.ingest_report)
    report.update(counts)
    report["input_articles"] = len(corpus)
    report["output_articles"] = len(kept)
    return Corpus(tuple(kept), corpus.source_name, report)


def write_jsonl(corpus: Corpus, path: str | Path, extra: Mapping[int, Mapping] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for a in corpus.articles:
            rec = {"id": a.id, "title": a.title, "text": a.text, "label": a.label}
            if extra and a.id in extra:
                rec.update(extra[a.id])
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def read_jsonl(path: str | Path, source_name: str = "") -> tuple[Corpus, list[dict]]:
    articles, records = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            rec = json.loads(line)
            articles.append(Article(rec["id"], rec.get("title", ""), rec["text"], rec["label"]))
            records.append(rec)
    return Corpus(tuple(articles), source_name), records
