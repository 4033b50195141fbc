"""Lexical diversity: densities, type-token ratios, Honore, Maas and MTLD."""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from ..conllu import Document
from ..resources import LanguageProfile
from .util import POS_SHORT, is_content, ratio, words

MTLD_THRESHOLD = 0.72


def ttr(tokens: Sequence[str]) -> float | None:
    if not tokens:
        return None
    return len(set(tokens)) / len(tokens)


def honore(tokens: Sequence[str]) -> float | None:
    n = len(tokens)
    if n == 0:
        return None
    counts = Counter(tokens)
    v = len(counts)
    v1 = sum(1 for c in counts.values() if c == 1)
    if v1 == v:
        return None
    return 100.0 * math.log(n) / (1.0 - v1 / v)


def maas(tokens: Sequence[str]) -> float | None:
    n = len(tokens)
    if n < 2:
        return None
    v = len(set(tokens))
    ln_n = math.log(n)
    return (ln_n - math.log(v)) / (ln_n * ln_n)


def _mtld_pass(tokens: Sequence[str], threshold: float) -> float | None:
    factors = 0.0
    types: set[str] = set()
    count = 0
    for tok in tokens:
        count += 1
        types.add(tok)
        if len(types) / count < threshold:
            factors += 1.0
            types = set()
            count = 0
    if count:
        factors += (1.0 - len(types) / count) / (1.0 - threshold)
    if factors == 0:
        return None
    return len(tokens) / factors


def mtld(tokens: Sequence[str], threshold: float = MTLD_THRESHOLD) -> float | None:
    """Mean of the forward and backward MTLD passes (partial factor credited)."""
    if not tokens:
        return None
    fwd = _mtld_pass(tokens, threshold)
    bwd = _mtld_pass(list(reversed(tokens)), threshold)
    if fwd is None or bwd is None:
        return None
    return (fwd + bwd) / 2.0


def lexical_diversity_features(d: Document, p: LanguageProfile) -> dict:
    ws = words(d)
    n = len(ws)
    forms = [w.lower for w in ws]
    lemmas = [w.lemma_lower for w in ws]
    content = [w for w in ws if is_content(w)]
    out = {
        "lexical_density": ratio(len(content), n),
        "simple_ttr": ttr(forms),
        "content_ttr": ttr([w.lower for w in content]),
        "lemma_ttr": ttr(lemmas),
        "lemma_content_ttr": ttr([w.lemma_lower for w in content]),
        "honore": honore(forms),
        "maas": maas(forms),
        "mtld": mtld(forms),
    }
    for short, tag in POS_SHORT.items():
        tagged = [w for w in ws if w.upos == tag]
        out[f"{short}_density"] = ratio(len(tagged), n)
        out[f"{short}_ttr"] = ttr([w.lower for w in tagged])
        out[f"lemma_{short}_ttr"] = ttr([w.lemma_lower for w in tagged])
    return out
