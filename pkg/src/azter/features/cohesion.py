"""Referential cohesion (lexical overlap between sentences) and connectives."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..conllu import Document, Sentence
from ..resources import CONNECTIVE_CATEGORIES, LanguageProfile, match_connectives
from .util import incidence, is_content, mean, pstdev, words

NOUNS = frozenset({"NOUN", "PROPN"})


@dataclass(frozen=True)
class _SentenceSets:
    nouns: frozenset[str]
    pronouns: frozenset[str]
    content_lemmas: frozenset[str]
    content_forms: frozenset[str]
    content_len: int


def _personal(w) -> bool:
    return w.upos == "PRON" and w.feats.get("PronType", "Prs") == "Prs"


def _sets(s: Sentence) -> _SentenceSets:
    ws = [w for w in s.words if not w.is_punct]
    content = [w for w in ws if is_content(w)]
    return _SentenceSets(
        nouns=frozenset(w.lemma_lower for w in ws if w.upos in NOUNS),
        pronouns=frozenset(w.lower for w in ws if _personal(w)),
        content_lemmas=frozenset(w.lemma_lower for w in content),
        content_forms=frozenset(w.lower for w in content),
        content_len=len(content),
    )


def noun_overlap(a: _SentenceSets, b: _SentenceSets) -> float:
    return float(bool(a.nouns & b.nouns))


def argument_overlap(a: _SentenceSets, b: _SentenceSets) -> float:
    return float(bool(a.nouns & b.nouns or a.pronouns & b.pronouns))


def stem_overlap(a: _SentenceSets, b: _SentenceSets) -> float:
    # lemma-based; either sentence may supply the noun
    return float(bool(a.nouns & b.content_lemmas or b.nouns & a.content_lemmas))


def content_overlap(a: _SentenceSets, b: _SentenceSets) -> float | None:
    size = (a.content_len + b.content_len) / 2
    if size == 0:
        return None
    return len(a.content_forms & b.content_forms) / size


def overlap_features(d: Document, p: LanguageProfile) -> dict:
    sets = [_sets(s) for s in d.sentences]
    scopes = {
        "adjacent": list(zip(sets, sets[1:])),
        "all": list(itertools.combinations(sets, 2)),
    }
    out = {}
    for scope, pairs in scopes.items():
        content = [v for v in (content_overlap(a, b) for a, b in pairs) if v is not None]
        out[f"noun_overlap_{scope}"] = mean([noun_overlap(a, b) for a, b in pairs])
        out[f"argument_overlap_{scope}"] = mean([argument_overlap(a, b) for a, b in pairs])
        out[f"stem_overlap_{scope}"] = mean([stem_overlap(a, b) for a, b in pairs])
        out[f"content_overlap_{scope}_mean"] = mean(content)
        out[f"content_overlap_{scope}_sd"] = pstdev(content)
    return out


def connective_features(d: Document, p: LanguageProfile) -> dict:
    if not p.has("connectives"):
        return {}
    n = len(words(d))
    counts = {c: 0 for c in CONNECTIVE_CATEGORIES}
    for s in d.sentences:
        for cat, _ in match_connectives(p, s):
            counts[cat] += 1
    counts["all"] = sum(counts.values())
    out = {}
    for cat, k in counts.items():
        out[f"num_{cat}_connectives"] = k
        out[f"{cat}_connectives_incidence"] = incidence(k, n)
    return out
