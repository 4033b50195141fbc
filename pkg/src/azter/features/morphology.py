from __future__ import annotations

from ..conllu import Document
from ..resources import LanguageProfile
from .util import incidence, is_content, ratio, words

POS_TAGS = ("NOUN", "PROPN", "VERB", "AUX", "ADJ", "ADV", "PRON", "DET", "ADP",
            "NUM", "CCONJ", "SCONJ", "PART", "INTJ")

VERBAL = frozenset({"VERB", "AUX"})
NOMINAL = frozenset({"NOUN", "PROPN", "PRON", "ADJ", "DET", "NUM"})

# feature id -> (FEATS key, value)
VERBAL_FEATS = {
    "verbform_fin_incidence": ("VerbForm", "Fin"),
    "verbform_inf_incidence": ("VerbForm", "Inf"),
    "verbform_part_incidence": ("VerbForm", "Part"),
    "mood_ind_incidence": ("Mood", "Ind"),
    "mood_imp_incidence": ("Mood", "Imp"),
    "tense_pres_incidence": ("Tense", "Pres"),
    "tense_past_incidence": ("Tense", "Past"),
    "person_1_incidence": ("Person", "1"),
    "person_2_incidence": ("Person", "2"),
    "person_3_incidence": ("Person", "3"),
}


def _has(w, key, value):
    # multi-valued FEATS use commas, e.g. Person=1,3
    return value in w.feats.get(key, "").split(",")


def morphology_features(d: Document, p: LanguageProfile) -> dict:
    ws = words(d)
    n = len(ws)
    out = {}
    for tag in POS_TAGS:
        k = sum(1 for w in ws if w.upos == tag)
        out[f"num_{tag.lower()}"] = k
        out[f"{tag.lower()}_incidence"] = incidence(k, n)
    content = sum(1 for w in ws if is_content(w))
    out["num_content_words"] = content
    out["content_words_incidence"] = incidence(content, n)
    propn = out["num_propn"]
    out["proper_noun_ratio"] = ratio(propn, propn + out["num_noun"])

    verbal = [w for w in ws if w.upos in VERBAL]
    for fid, (key, value) in VERBAL_FEATS.items():
        out[fid] = incidence(sum(1 for w in verbal if _has(w, key, value)), n)
    out["case_marked_incidence"] = incidence(
        sum(1 for w in ws if w.upos in NOMINAL and "Case" in w.feats), n)

    if p.has("irregular_verbs"):
        k = sum(1 for w in verbal if w.lemma_lower in p.irregular_verbs)
        out["num_irregular_verbs"] = k
        out["irregular_verbs_incidence"] = incidence(k, n)
    return out
