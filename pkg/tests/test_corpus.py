import csv

import pytest
from hypothesis import given, settings, strategies as st

from dacfake.corpus import (
    Article,
    CleaningConfig,
    Corpus,
    LabelError,
    Schema,
    SchemaError,
    concat_corpora,
    ingest_csv,
    phase1_clean,
    read_jsonl,
    write_jsonl,
)


def _write(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


def test_ingest_counts_and_skips_ragged_rows(tmp_path):
    p = tmp_path / "d.csv"
    with open(p, "w", encoding="utf-8") as fh:
        fh.write('title,text,label\nT1,"Body, one.",FAKE\nbroken,row\nT2,Body two.,REAL\n')
    c = ingest_csv(p)
    assert len(c) == 2
    assert c.ingest_report == {"rows_read": 3, "skipped": 1, "articles": 2}
    assert c.articles[1] == Article(1, "T2", "Body two.", "REAL")


def test_missing_label_column_named_in_error(tmp_path):
    p = _write(tmp_path / "d.csv", ["title", "text"], [["a", "b"]])
    with pytest.raises(SchemaError) as e:
        ingest_csv(p)
    assert e.value.column == "label"
    assert "label" in str(e.value)


def test_custom_columns_and_constant_label(tmp_path):
    p = _write(tmp_path / "fake.csv", ["headline", "body"], [["H", "Some body."]])
    c = ingest_csv(p, Schema(text="body", title="headline", label=None, label_constant="fake",
                             concat_title=True))
    assert c.articles[0].text == "H\n\nSome body."
    assert c.articles[0].label == "fake"


def test_concat_renumbers_ids():
    a = Corpus((Article(0, "", "x", 1),))
    b = Corpus((Article(0, "", "y", 0),))
    assert [x.id for x in concat_corpora([a, b])] == [0, 1]


def _corpus(*texts_labels):
    return Corpus(tuple(Article(i, "", t, l) for i, (t, l) in enumerate(texts_labels)))


def test_phase1_cleaning_steps():
    c = _corpus(
        ("Real story here.", "REAL"),
        ("Real story here.", "REAL"),  # duplicate
        ("Fake claim. Your ads will be inserted here. More claim.", "FAKE"),
        ("Sorry, page not found on this site.", "FAKE"),
        ("", "FAKE"),
    )
    out = phase1_clean(c)
    assert [a.text for a in out] == ["Real story here.", "Fake claim. More claim."]
    assert [a.label for a in out] == [0, 1]
    r = out.ingest_report
    assert (r["duplicates"], r["ad_sentences_removed"], r["not_found_dropped"], r["missing_dropped"]) == (1, 1, 1, 1)
    assert (r["input_articles"], r["output_articles"]) == (5, 2)


def test_unknown_label_rejected():
    with pytest.raises(LabelError) as e:
        phase1_clean(_corpus(("x", "satire")))
    assert e.value.values == ["satire"]


def test_custom_label_map():
    cfg = CleaningConfig((), (), {"bogus": 1, "legit": 0})
    assert [a.label for a in phase1_clean(_corpus(("a", "Bogus"), ("b", "legit")), cfg)] == [1, 0]


_docs = st.lists(
    st.tuples(
        st.lists(
            st.sampled_from(["a", "b", " ", ". ", "!", "\n", "your ads will be inserted here",
                             "404 error", "Page not found"]),
            max_size=12,
        ).map("".join),
        st.sampled_from(["FAKE", "REAL", "1", "0"]),
    ),
    max_size=12,
)


@settings(max_examples=100, deadline=None)
@given(_docs)
def test_phase1_idempotent(docs):
    once = phase1_clean(_corpus(*docs))
    twice = phase1_clean(once)
    assert [(a.text, a.label) for a in twice] == [(a.text, a.label) for a in once]
    assert twice.content_hash() == once.content_hash()


def test_jsonl_round_trip(tmp_path):
    c = phase1_clean(_corpus(("Ünïcode “quotes” text.", "FAKE"), ("plain", "REAL")))
    write_jsonl(c, tmp_path / "c.jsonl", {0: {"wv_tokens": ["a"]}})
    back, records = read_jsonl(tmp_path / "c.jsonl")
    assert back.content_hash() == c.content_hash()
    assert records[0]["wv_tokens"] == ["a"]
