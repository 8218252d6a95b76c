"""Toolkit for curating code-mixed bilingual corpora from raw social-media text."""

from .features import FeatureConfig
from .labels import EN, HI, LABELS, OTHER
from .lid import LidClassifier, TrainParams, predict_sentence
from .metrics import cmi_corpus, cmi_sentence, corpus_stats, evaluate_lid
from .normalize import NormalizePolicy, normalize_sentence, script_class
from .selector import FilterConfig, classify_sentence, filter_corpus
from .tokenizer import Token, TokenizedSentence, tokenize

__version__ = "0.1.0"

__all__ = [
    "EN",
    "HI",
    "OTHER",
    "LABELS",
    "FeatureConfig",
    "FilterConfig",
    "LidClassifier",
    "NormalizePolicy",
    "Token",
    "TokenizedSentence",
    "TrainParams",
    "classify_sentence",
    "cmi_corpus",
    "cmi_sentence",
    "corpus_stats",
    "evaluate_lid",
    "filter_corpus",
    "normalize_sentence",
    "predict_sentence",
    "script_class",
    "tokenize",
]
