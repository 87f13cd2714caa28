import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dacfake.corpus import Article, Corpus
from dacfake.lingfeat import (
    CATEGORY_BUDGET,
    DEFAULT_REGISTRY,
    TABLE4_FEATURES,
    LinguisticFeatures,
    MissingClassError,
    article_features,
    extract_lf,
    format_table4,
    table4_report,
)


def test_registry_has_eighty_unique_features_in_budget():
    ids = DEFAULT_REGISTRY.ids
    assert len(ids) == 80 == len(set(ids))
    counts = {k: len(v) for k, v in DEFAULT_REGISTRY.by_category().items()}
    assert counts == CATEGORY_BUDGET
    assert sum(CATEGORY_BUDGET.values()) == 80


def test_summary_feature_ids_exist():
    assert len(TABLE4_FEATURES) == 16
    assert {i for _, i in TABLE4_FEATURES} <= set(DEFAULT_REGISTRY.ids)


def test_hand_counted_punctuation_and_urls():
    f = article_features("Visit http://a.com now? Yes!")
    assert f["url_count"] == 1
    assert f["question_mark_freq"] == 1
    assert f["exclamation_freq"] == 1
    assert f["n_sentences"] == 2


def test_hand_counted_structure():
    text = 'Hello there, friend.\n\nShe said "we will win" and they laughed... I doubt it!'
    f = article_features(text)
    assert f["n_paragraphs"] == 2
    assert f["n_lines"] == 2
    assert f["quoted_content"] == 1
    assert f["double_quote_freq"] == 2
    assert f["ellipsis_freq"] == 1
    assert f["period_freq"] == 1  # only the one after "friend"
    assert f["comma_freq"] == 1
    assert f["greeting_words"] == 1  # hello
    assert f["first_person_pronouns"] == 2  # we, I
    assert f["third_person_pronouns"] == 3  # she, they, it
    assert f["second_person_pronouns"] == 0
    assert f["modal_verbs"] == 1  # will


def test_word_length_buckets_cap_at_fourteen():
    f = article_features("a bb incomprehensibilities.")
    assert f["word_len_1"] == 1
    assert f["word_len_2"] == 1
    assert f["word_len_14"] == 1  # 22 letters
    assert sum(f[f"word_len_{k}"] for k in range(1, 15)) == f["n_words"]


def test_single_character_text():
    f = article_features("x")
    assert f["n_chars"] == 1
    assert f["n_words"] == 1
    assert f["flesch_reading_ease"] == pytest.approx(121.22)


def test_empty_text_gives_zeros():
    assert set(article_features("   ").values()) == {0.0}


@settings(max_examples=60, deadline=None)
@given(st.text(max_size=300))
def test_features_always_finite_and_complete(text):
    f = article_features(text)
    assert list(f) == DEFAULT_REGISTRY.ids or set(f) == set(DEFAULT_REGISTRY.ids)
    assert all(np.isfinite(v) for v in f.values())


def _corpus():
    return Corpus((
        Article(0, "", 'He said "it is true". Officials confirmed it.', 0),
        Article(1, "", "SHOCKING!!! They lied? See http://x.io and www.y.com!", 1),
        Article(2, "", 'A "quoted" report. Another "one" here.', 0),
        Article(3, "", "They hide it! Why? Read https://z.net now!", 1),
    ))


def test_extract_lf_matrix_and_meta():
    c = _corpus()
    m = extract_lf(c)
    assert m.shape == (4, 80)
    assert m.provenance == "LF"
    assert m.corpus_hash == c.content_hash()
    assert m.meta["registry_version"] == DEFAULT_REGISTRY.version
    assert "dale_chall_familiar_words" in m.meta["lexicon_versions"]
    assert np.array_equal(m.values, extract_lf(c, n_jobs=2).values)


def test_transformer_matches_function():
    c = _corpus()
    X = LinguisticFeatures().fit_transform(c.texts)
    assert np.array_equal(X, extract_lf(c).values)


def test_table4_report_orders_by_class():
    c = _corpus()
    rows = {r["id"]: r for r in table4_report(c, extract_lf(c))}
    assert rows["url_count"]["fake"] == 1.5 and rows["url_count"]["true"] == 0.0
    assert rows["quoted_content"]["true"] == 1.5 and rows["quoted_content"]["fake"] == 0.0
    assert rows["exclamation_freq"]["fake"] > rows["exclamation_freq"]["true"]
    assert "Average #URLs" in format_table4(table4_report(c, extract_lf(c)))


def test_class_summary_requires_both_classes():
    c = Corpus(_corpus().articles[:1])
    with pytest.raises(MissingClassError):
        table4_report(c, extract_lf(c))
