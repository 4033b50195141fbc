from __future__ import annotations

import math

from ..conllu import Document
from ..resources import LanguageProfile
from .util import has_letter, words


def flesch_reading_ease(words_per_sentence: float, syllables_per_word: float) -> float:
    return 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word


def smog_grade(n_polysyllables: int, n_sentences: int) -> float:
    return 1.0430 * math.sqrt(30.0 * n_polysyllables / n_sentences) + 3.1291


def fernandez_huerta(words_per_sentence: float, syllables_per_word: float) -> float:
    return 206.84 - 0.60 * (100.0 * syllables_per_word) - 1.02 * words_per_sentence


def readability_features(d: Document, p: LanguageProfile) -> dict:
    if p.syllabifier is None:
        return {}
    n_sent = len(d.sentences)
    ws = words(d)
    syl = [p.syllabifier.count(w.form) for w in ws if has_letter(w.form)]
    if not syl or not n_sent:
        return {}
    # numbers and symbols count as words but carry no syllables
    wps = len(ws) / n_sent
    spw = sum(syl) / len(syl)
    out = {}
    if p.lang_code == "en":
        out["flesch_reading_ease"] = flesch_reading_ease(wps, spw)
        out["smog_grade"] = smog_grade(sum(1 for s in syl if s >= 3), n_sent)
    elif p.lang_code == "es":
        out["fernandez_huerta"] = fernandez_huerta(wps, spw)
    return out
