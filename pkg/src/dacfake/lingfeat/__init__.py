from .extract import LinguisticFeatures, article_features, extract_lf
from .readability import (
    READABILITY_NAMES,
    automated_readability_index,
    coleman_liau_index,
    dale_chall_score,
    flesch_kincaid_grade,
    flesch_reading_ease,
    gunning_fog,
    linsear_write,
    readability_suite,
    smog_index,
)
from .registry import CATEGORY_BUDGET, DEFAULT_REGISTRY, TABLE4_FEATURES, FeatureRegistry
from .report import MissingClassError, format_table4, table4_report

__all__ = [
    "CATEGORY_BUDGET",
    "DEFAULT_REGISTRY",
    "READABILITY_NAMES",
    "TABLE4_FEATURES",
    "FeatureRegistry",
    "LinguisticFeatures",
    "MissingClassError",
    "article_features",
    "automated_readability_index",
    "coleman_liau_index",
    "dale_chall_score",
    "extract_lf",
    "flesch_kincaid_grade",
    "flesch_reading_ease",
    "format_table4",
    "gunning_fog",
    "linsear_write",
    "readability_suite",
    "smog_index",
    "table4_report",
]
