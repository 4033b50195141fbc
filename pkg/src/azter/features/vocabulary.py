"""Word frequency and CEFR vocabulary-knowledge indicators."""

from __future__ import annotations

from ..conllu import Document
from ..resources import CEFR_LEVELS, LanguageProfile, cefr_level, is_rare, word_log_frequency
from .util import POS_SHORT, has_letter, incidence, is_content, mean, ratio, words


def frequency_features(d: Document, p: LanguageProfile) -> dict:
    if not p.has("freq_table"):
        return {}
    ws = words(d)
    n = len(ws)
    out = {}

    minima = []
    for s in d.sentences:
        # out-of-table content words have no value and are left out of the minimum
        vals = [word_log_frequency(p, w.form) for w in s.words if is_content(w)]
        vals = [v for v in vals if v is not None]
        if vals:
            minima.append(min(vals))
    out["min_word_freq_mean"] = mean(minima)

    rare = [w for w in ws if has_letter(w.form) and is_rare(p, w.form)]
    out["num_rare_words"] = len(rare)
    out["rare_words_incidence"] = incidence(len(rare), n)
    for short, tag in POS_SHORT.items():
        k = sum(1 for w in rare if w.upos == tag)
        out[f"num_rare_{short}s"] = k
        out[f"rare_{short}s_incidence"] = incidence(k, n)

    content = [w for w in ws if is_content(w)]
    rare_content = [w for w in rare if is_content(w)]
    distinct_rare = {w.lower for w in rare_content}
    out["num_distinct_rare_content_words"] = len(distinct_rare)
    out["distinct_rare_content_words_incidence"] = incidence(len(distinct_rare), n)
    out["rare_content_words_mean"] = ratio(len(rare_content), len(content))
    out["distinct_rare_content_words_mean"] = ratio(len(distinct_rare), len({w.lower for w in content}))
    return out


def vocabulary_features(d: Document, p: LanguageProfile) -> dict:
    """CEFR level counts; entries are looked up by lemma, then by surface form."""
    if p.cefr is None:
        return {}
    ws = words(d)
    n = len(ws)
    counts = {lv: 0 for lv in CEFR_LEVELS}
    unlisted_content = 0
    for w in ws:
        level = cefr_level(p, w.lemma_lower, w.upos) or cefr_level(p, w.form, w.upos)
        if level is not None:
            counts[level] += 1
        elif is_content(w):
            unlisted_content += 1
    out = {}
    for lv in CEFR_LEVELS:
        out[f"num_{lv.lower()}_words"] = counts[lv]
        out[f"{lv.lower()}_words_incidence"] = incidence(counts[lv], n)
    out["num_content_words_not_a1_c1"] = unlisted_content
    out["content_words_not_a1_c1_incidence"] = incidence(unlisted_content, n)
    return out
