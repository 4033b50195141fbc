"""Dependency-based syntactic complexity indicators.

UD has no constituents, so phrases are read off heads: a noun phrase is the
subtree of a NOUN/PROPN/PRON token and a verb phrase is a finite clause
nucleus (a VERB/AUX not attached as aux/cop, or a copular predicate).
"""

from __future__ import annotations

from ..conllu import Document, Sentence, Word
from ..resources import LanguageProfile
from .util import incidence, mean, pstdev, words

NP_HEADS = frozenset({"NOUN", "PROPN", "PRON"})
VERBAL = frozenset({"VERB", "AUX"})
NP_MODIFIERS = frozenset({"amod", "nmod", "det", "nummod", "appos", "acl"})
SUBORDINATE = frozenset({"ccomp", "xcomp", "advcl", "acl", "csubj"})


def main_verb(s: Sentence) -> Word | None:
    root = s.root()
    if root is None:
        return None
    if root.upos in VERBAL:
        return root
    for w in s.words:
        if w.head == root.index and w.upos in VERBAL:
            return w
    return None


def left_embeddedness(s: Sentence) -> int | None:
    verb = main_verb(s)
    if verb is None:
        return None
    return sum(1 for w in s.words if w.index < verb.index and not w.is_punct)


def depths(s: Sentence) -> dict[int, int]:
    """Depth of every word, the root having depth 1."""
    heads = {w.index: w.head for w in s.words}
    out: dict[int, int] = {}
    for w in s.words:
        chain = []
        cur = w.index
        while cur not in out and cur != 0 and len(chain) <= len(heads):
            chain.append(cur)
            cur = heads.get(cur, 0)
        base = out.get(cur, 0)
        for node in reversed(chain):
            base += 1
            out[node] = base
    return out


def tree_depth(s: Sentence) -> int:
    d = depths(s)
    vals = [d[w.index] for w in s.words if not w.is_punct]
    return max(vals, default=0)


def subordinate_depth(s: Sentence) -> int:
    """Largest number of subordinate-clause relations on any path to the root."""
    by_index = {w.index: w for w in s.words}
    memo: dict[int, int] = {0: 0}

    def level(i, guard=0):
        if i in memo:
            return memo[i]
        w = by_index.get(i)
        if w is None or guard > len(by_index):
            return 0
        v = level(w.head, guard + 1) + (1 if w.base_deprel in SUBORDINATE else 0)
        memo[i] = v
        return v

    return max((level(w.index) for w in s.words), default=0)


def clausal_count(s: Sentence) -> int:
    by_index = {w.index: w for w in s.words}
    n = 0
    for w in s.words:
        rel = w.base_deprel
        if rel in SUBORDINATE:
            n += 1
        elif rel == "conj" and w.upos in VERBAL:
            head = by_index.get(w.head)
            if head is not None and head.upos in VERBAL:
                n += 1
    return n


def verb_phrases(s: Sentence) -> int:
    """Finite clause nuclei: a verb, or a copular predicate, whose verb group is finite."""
    kids = s.children()
    n = 0
    for w in s.words:
        group = [c for c in kids.get(w.index, []) if c.base_deprel in ("aux", "cop")]
        if w.upos in VERBAL and w.base_deprel not in ("aux", "cop"):
            group.append(w)
        elif not any(c.base_deprel == "cop" for c in group):
            continue
        forms = [x.feats.get("VerbForm") for x in group if x.upos in VERBAL]
        # treebanks that never annotate VerbForm count every nucleus
        if "Fin" in forms or all(f is None for f in forms):
            n += 1
    return n


def noun_phrases(s: Sentence) -> list[tuple[int, int]]:
    """(descendants, modifiers) for each noun phrase head."""
    kids = s.children()
    out = []
    for w in s.words:
        if w.upos not in NP_HEADS:
            continue
        size = 0
        stack = list(kids.get(w.index, []))
        seen = set()
        while stack:
            c = stack.pop()
            if c.index in seen:
                continue
            seen.add(c.index)
            if not c.is_punct:
                size += 1
            stack.extend(kids.get(c.index, []))
        mods = sum(1 for c in kids.get(w.index, []) if c.base_deprel in NP_MODIFIERS)
        out.append((size, mods))
    return out


def passive_clauses(s: Sentence) -> int:
    clauses = set()
    for w in s.words:
        if w.deprel.endswith(":pass") and w.head != 0:
            clauses.add(w.head)
        if w.feats.get("Voice") == "Pass":
            if w.upos == "AUX" and w.head != 0:
                clauses.add(w.head)
            elif w.upos == "VERB":
                clauses.add(w.index)
    heads = {w.index for w in s.words if not w.is_punct}
    return len(clauses & heads)


def negations(s: Sentence, negators) -> int:
    return sum(1 for w in s.words if not w.is_punct
               and (w.feats.get("Polarity") == "Neg" or w.lemma_lower in negators))


def syntax_features(d: Document, p: LanguageProfile) -> dict:
    sentences = d.sentences
    n = len(words(d))
    n_sent = len(sentences)

    embedded = [v for v in (left_embeddedness(s) for s in sentences) if v is not None]
    nps = [np for s in sentences for np in noun_phrases(s)]
    np_counts = [len(noun_phrases(s)) for s in sentences]
    vp_counts = [verb_phrases(s) for s in sentences]
    props = [1 + clausal_count(s) for s in sentences]
    ws = words(d)
    subordinate = sum(1 for w in ws if w.base_deprel in SUBORDINATE)
    relative = sum(1 for w in ws if w.deprel == "acl:relcl")
    sub_depth = [subordinate_depth(s) for s in sentences]
    passive = sum(passive_clauses(s) for s in sentences)
    neg = sum(negations(s, p.negators) for s in sentences)
    tree = [tree_depth(s) for s in sentences]

    return {
        "left_embeddedness": mean(embedded),
        "np_descendants_mean": mean([x[0] for x in nps]),
        "np_modifiers_mean": mean([x[1] for x in nps]),
        "num_noun_phrases": len(nps),
        "noun_phrases_per_sentence": mean(np_counts),
        "num_verb_phrases": sum(vp_counts),
        "verb_phrases_per_sentence": mean(vp_counts),
        "num_propositions": sum(props),
        "propositions_per_sentence": mean(props) if n_sent else None,
        "num_subordinate_clauses": subordinate,
        "subordinate_clauses_incidence": incidence(subordinate, n),
        "num_relative_clauses": relative,
        "relative_clauses_incidence": incidence(relative, n),
        "subordinate_depth_mean": mean(sub_depth),
        "subordinate_depth_sd": pstdev(sub_depth),
        "num_passives": passive,
        "passive_incidence": incidence(passive, n),
        "num_negations": neg,
        "negation_incidence": incidence(neg, n),
        "tree_depth_mean": mean(tree),
        "tree_depth_sd": pstdev(tree),
    }
