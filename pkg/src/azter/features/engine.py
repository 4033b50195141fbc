"""Full indicator computation for one document."""

from __future__ import annotations

from ..conllu import Document
from ..resources import LanguageProfile
from .catalog import CATALOG
from .cohesion import connective_features, overlap_features
from .descriptive import descriptive_features
from .lexical import lexical_diversity_features
from .morphology import morphology_features
from .readability import readability_features
from .semantics import semantic_features, similarity_features
from .syntax import syntax_features
from .util import finite_or_none
from .vocabulary import frequency_features, vocabulary_features

GROUP_FUNCTIONS = {
    "descriptive": descriptive_features,
    "lexical_diversity": lexical_diversity_features,
    "readability": readability_features,
    "word_frequency": frequency_features,
    "vocabulary_knowledge": vocabulary_features,
    "word_information": morphology_features,
    "syntax": syntax_features,
    "semantic_information": semantic_features,
    "semantic_overlap": similarity_features,
    "referential_cohesion": overlap_features,
    "connectives": connective_features,
}

FeatureVector = dict[str, "float | None"]


def compute_all(d: Document, p: LanguageProfile, mode: str = "all", groups=None) -> FeatureVector:
    """Values for every selected id available under ``p``, in catalog order.

    Undefined values (empty denominators, no lexicon hits) are ``None``.
    """
    ids = CATALOG.select(p.available_features, mode, groups)
    wanted = {CATALOG[i].group for i in ids}
    raw: dict = {}
    for group, fn in GROUP_FUNCTIONS.items():
        if group in wanted:
            raw.update(fn(d, p))
    return {i: finite_or_none(raw.get(i)) for i in ids}
