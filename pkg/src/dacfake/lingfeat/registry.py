"""The 80 linguistic features, in matrix column order.

Each entry is ``(feature_id, category, extractor, description)``. The
extractor names the group function in :mod:`dacfake.lingfeat.extract` that
produces the value.
"""
from __future__ import annotations

from dataclasses import dataclass

REGISTRY_VERSION = "1.0"

MAX_WORD_LEN_BUCKET = 14

_ENTRIES: list[tuple[str, str, str, str]] = [
    # LF1 character
    ("n_chars", "LF1", "character", "characters in the cleaned text"),
    ("n_digits", "LF1", "character", "digit characters"),
    ("n_letters", "LF1", "character", "letter characters"),
    ("n_uppercase", "LF1", "character", "uppercase letters"),
    ("n_whitespace", "LF1", "character", "whitespace characters"),
    ("n_special_chars", "LF1", "character", "characters that are neither alphanumeric nor whitespace"),
    # LF2 word
    ("n_words", "LF2", "word", "word tokens (tokens holding a letter)"),
    ("n_short_words", "LF2", "word", "words shorter than 4 characters"),
    ("n_chars_in_words", "LF2", "word", "characters inside word tokens"),
    ("avg_sentence_len_chars", "LF2", "word", "mean sentence length in characters"),
    ("avg_sentence_len_words", "LF2", "word", "mean sentence length in words"),
    ("hapax_legomena", "LF2", "word", "word types occurring once"),
    ("dis_legomena", "LF2", "word", "word types occurring twice"),
    ("type_token_ratio", "LF2", "word", "distinct lowercase words / words"),
    ("n_types", "LF2", "word", "distinct lowercase words"),
    ("avg_word_length", "LF2", "word", "mean word length in characters"),
    *[
        (f"word_len_{k}", "LF2", "word_length",
         f"words of {k} characters" if k < MAX_WORD_LEN_BUCKET else f"words of {k} or more characters")
        for k in range(1, MAX_WORD_LEN_BUCKET + 1)
    ],
    # LF3 syntactic
    ("comma_freq", "LF3", "punctuation", "count of ,"),
    ("double_quote_freq", "LF3", "punctuation", 'count of "'),
    ("single_quote_freq", "LF3", "punctuation", "count of '"),
    ("hash_freq", "LF3", "punctuation", "count of #"),
    ("question_mark_freq", "LF3", "punctuation", "count of ?"),
    ("at_freq", "LF3", "punctuation", "count of @"),
    ("ellipsis_freq", "LF3", "punctuation", "count of ellipses (… or a run of 3+ periods)"),
    ("exclamation_freq", "LF3", "punctuation", "count of !"),
    ("period_freq", "LF3", "punctuation", "count of . outside ellipses"),
    ("colon_freq", "LF3", "punctuation", "count of :"),
    ("semicolon_freq", "LF3", "punctuation", "count of ;"),
    ("function_word_ratio", "LF3", "lexicon", "function words / words"),
    # LF4 structural
    ("n_lines", "LF4", "structure", "non-empty lines"),
    ("n_sentences", "LF4", "structure", "sentences"),
    ("n_paragraphs", "LF4", "structure", "paragraphs (blank-line separated)"),
    ("sentences_per_paragraph", "LF4", "structure", "sentences / paragraphs"),
    ("chars_per_paragraph", "LF4", "structure", "characters / paragraphs"),
    ("words_per_paragraph", "LF4", "structure", "words / paragraphs"),
    ("greeting_words", "LF4", "lexicon", "greeting words"),
    ("quoted_content", "LF4", "structure", "balanced double-quote spans"),
    ("url_count", "LF4", "structure", "URLs (scheme or www. prefix)"),
    # LF5 content
    ("content_word_count", "LF5", "content", "words that are neither stopwords nor function words"),
    ("content_word_ratio", "LF5", "content", "content words / words"),
    ("positive_sentences", "LF5", "content", "sentences with more positive than negative hits"),
    ("negative_sentences", "LF5", "content", "sentences with more negative than positive hits"),
    # LF6 readability
    ("flesch_reading_ease", "LF6", "readability", "Flesch reading ease"),
    ("flesch_kincaid_grade", "LF6", "readability", "Flesch-Kincaid grade level"),
    ("smog_index", "LF6", "readability", "SMOG index"),
    ("coleman_liau_index", "LF6", "readability", "Coleman-Liau index"),
    ("automated_readability_index", "LF6", "readability", "automated readability index"),
    ("dale_chall_score", "LF6", "readability", "Dale-Chall readability score"),
    ("linsear_write", "LF6", "readability", "Linsear Write formula"),
    ("gunning_fog", "LF6", "readability", "Gunning fog index"),
    ("lexicon_count", "LF6", "readability", "lexicon count (words)"),
    ("lexical_diversity", "LF6", "readability", "lexical diversity (types / tokens)"),
    ("avg_syllables_per_word", "LF6", "readability", "mean syllables per word"),
    ("polysyllable_count", "LF6", "readability", "words with 3+ syllables"),
    ("long_word_count", "LF6", "readability", "words longer than 6 characters"),
    ("monosyllable_count", "LF6", "readability", "one-syllable words"),
    # LF7 uncertainty
    ("certainty_words", "LF7", "lexicon", "certainty words"),
    ("tentative_words", "LF7", "lexicon", "tentative words"),
    ("modal_verbs", "LF7", "lexicon", "modal verbs"),
    # LF8 specificity
    ("adjectives", "LF8", "lexicon", "adjectives (word list)"),
    ("adverbs", "LF8", "lexicon", "adverbs (word list)"),
    ("affective_terms", "LF8", "lexicon", "affective terms"),
    # LF9 verbal non-immediacy
    ("self_references", "LF9", "lexicon", "self references"),
    ("group_references", "LF9", "lexicon", "group references"),
    ("first_person_pronouns", "LF9", "lexicon", "first person pronouns"),
    ("second_person_pronouns", "LF9", "lexicon", "second person pronouns"),
    ("third_person_pronouns", "LF9", "lexicon", "third person pronouns"),
]

CATEGORY_BUDGET = {
    "LF1": 6, "LF2": 24, "LF3": 12, "LF4": 9, "LF5": 4,
    "LF6": 14, "LF7": 3, "LF8": 3, "LF9": 5,
}

# per-class summary rows: (label, feature id)
TABLE4_FEATURES: tuple[tuple[str, str], ...] = (
    ("Average #Capital letters", "n_uppercase"),
    ("Average #Quoted content", "quoted_content"),
    ("Average #URLs", "url_count"),
    ("Average #tokens", "n_words"),
    ("Average #types", "n_types"),
    ("Average size of words", "avg_word_length"),
    ("Type-Token ratio", "type_token_ratio"),
    ("Average #sentences", "n_sentences"),
    ("Average size of sentence", "avg_sentence_len_words"),
    ("Average #content words", "content_word_count"),
    ("Average #first pronoun", "first_person_pronouns"),
    ("Average #second pronoun", "second_person_pronouns"),
    ("Average #third pronoun", "third_person_pronouns"),
    ("Average #Positive sentences", "positive_sentences"),
    ("Average number of question marks (?)", "question_mark_freq"),
    ("Average number of Exclamation marks (!)", "exclamation_freq"),
)


@dataclass(frozen=True)
class FeatureEntry:
    id: str
    category: str
    extractor: str
    description: str


@dataclass(frozen=True)
class FeatureRegistry:
    entries: tuple[FeatureEntry, ...]
    version: str = REGISTRY_VERSION

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def by_category(self) -> dict[str, list[FeatureEntry]]:
        out: dict[str, list[FeatureEntry]] = {}
        for e in self.entries:
            out.setdefault(e.category, []).append(e)
        return out

    def format_table(self) -> str:
        lines = [f"# linguistic feature registry v{self.version} ({len(self)} features)"]
        for i, e in enumerate(self.entries):
            lines.append(f"{i:3d}  {e.category}  {e.id:<28s} {e.description}")
        return "\n".join(lines)


DEFAULT_REGISTRY = FeatureRegistry(tuple(FeatureEntry(*e) for e in _ENTRIES))
