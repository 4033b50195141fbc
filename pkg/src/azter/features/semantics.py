"""Lexical-semantic indicators and embedding-based semantic overlap."""

from __future__ import annotations

import itertools

import numpy as np

from ..conllu import Document
from ..resources import LanguageProfile, embedding, hypernym_depth, polysemy
from .util import mean, pstdev

POLYSEMY_POS = ("NOUN", "VERB", "ADJ", "ADV")


def semantic_features(d: Document, p: LanguageProfile) -> dict:
    if not p.has("lexnet"):
        return {}
    senses, nouns, verbs = [], [], []
    for w in d.words():
        if w.upos not in POLYSEMY_POS:
            continue
        n = polysemy(p, w.lemma_lower, w.upos)
        if n is not None:
            senses.append(n)
        if w.upos in ("NOUN", "VERB"):
            depth = hypernym_depth(p, w.lemma_lower, w.upos)
            if depth is not None:
                (nouns if w.upos == "NOUN" else verbs).append(depth)
    return {
        "polysemy_mean": mean(senses),
        "hypernymy_index": mean(nouns + verbs),
        "noun_hypernymy_mean": mean(nouns),
        "verb_hypernymy_mean": mean(verbs),
    }


def unit_vector(p: LanguageProfile, tokens) -> np.ndarray | None:
    """L2-normalised mean embedding of in-vocabulary non-stopword tokens."""
    vecs = []
    for w in tokens:
        if w.is_punct or w.lower in p.stopwords:
            continue
        v = embedding(p, w.form)
        if v is not None:
            vecs.append(v)
    if not vecs:
        return None
    m = np.mean(vecs, axis=0)
    norm = float(np.linalg.norm(m))
    if norm == 0.0 or not np.isfinite(norm):
        return None
    return m / norm


def cosine(a: np.ndarray | None, b: np.ndarray | None) -> float | None:
    if a is None or b is None:
        return None
    return float(np.clip(np.dot(a, b), -1.0, 1.0))


def _defined(values):
    return [v for v in values if v is not None]


def similarity_features(d: Document, p: LanguageProfile) -> dict:
    if not p.has("embeddings"):
        return {}
    per_par = [[unit_vector(p, s.words) for s in par.sentences] for par in d.paragraphs]
    sent_vecs = [v for par in per_par for v in par]
    par_vecs = [unit_vector(p, par.words()) for par in d.paragraphs]

    adjacent = _defined(cosine(a, b) for a, b in zip(sent_vecs, sent_vecs[1:]))
    paragraphs = _defined(cosine(a, b) for a, b in zip(par_vecs, par_vecs[1:]))
    within = _defined(cosine(a, b) for par in per_par for a, b in itertools.combinations(par, 2))
    return {
        "similarity_adjacent_sentences_mean": mean(adjacent),
        "similarity_adjacent_sentences_sd": pstdev(adjacent),
        "similarity_adjacent_paragraphs_mean": mean(paragraphs),
        "similarity_adjacent_paragraphs_sd": pstdev(paragraphs),
        "similarity_paragraph_pairs_mean": mean(within),
        "similarity_paragraph_pairs_sd": pstdev(within),
    }
