"""Fake-news classification from linguistic and word-vector features."""
from .corpus import Article, Corpus, Schema, ingest_csv, phase1_clean
from .matrix import FeatureMatrix

__version__ = "0.1.0"

__all__ = ["Article", "Corpus", "FeatureMatrix", "Schema", "ingest_csv", "phase1_clean", "__version__"]
