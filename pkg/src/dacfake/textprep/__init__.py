from .cleaning import PRESERVED_PUNCT, URL_RE, prep_lf, prep_wv
from .lemmatize import lemmatize
from .lexicons import DATA_DIR, LexiconSet, default_lexicons
from .porter import stem
from .segment import SegmentedText, Token, segment, split_sentences, tokenize
from .syllables import count_syllables

__all__ = [
    "PRESERVED_PUNCT",
    "URL_RE",
    "DATA_DIR",
    "LexiconSet",
    "SegmentedText",
    "Token",
    "count_syllables",
    "default_lexicons",
    "lemmatize",
    "prep_lf",
    "prep_wv",
    "segment",
    "split_sentences",
    "stem",
    "tokenize",
]
