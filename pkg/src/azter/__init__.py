"""Linguistic complexity indicators over Universal Dependencies parses."""

__version__ = "0.1.0"

from .conllu import Document, Paragraph, Sentence, Word, parse_conllu, read_conllu, validate_document
from .features import CATALOG, compute_all
from .resources import LanguageProfile, load_language, load_profile

__all__ = [
    "CATALOG", "Document", "LanguageProfile", "Paragraph", "Sentence", "Word", "compute_all",
    "load_language", "load_profile", "parse_conllu", "read_conllu", "validate_document",
]
