"""Regenerate the data-derived files of the shipped resource bundles.

    python tools/build_resources.py [--words 30000] [--dim 16]

Needs the optional ``build-resources`` extras (wordfreq, cmudict).  Writes
the English and Spanish frequency tables, the English syllable exceptions,
placeholder embeddings for every bundle and, when NLTK's WordNet data is
installed, the English lexnet.  Finally it rewrites each manifest.
"""

from __future__ import annotations

import argparse
import hashlib
from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parents[1] / "src" / "azter" / "data"
LANGS = ("en", "es", "eu")


def write_freq(lang: str, n_words: int) -> None:
    import wordfreq

    out = DATA / lang / "freq.tsv"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("# form<TAB>log10 frequency per 10^9 words (wordfreq Zipf scale)\n")
        for w in wordfreq.top_n_list(lang, n_words):
            if any(ch.isalpha() for ch in w) and "\t" not in w:
                fh.write(f"{w}\t{wordfreq.zipf_frequency(w, lang):.2f}\n")


def cmu_syllables(phones: list[str]) -> int:
    return sum(1 for ph in phones if ph[-1].isdigit())


def write_english_exceptions(n_words: int) -> None:
    """Keep only dictionary words the English rules miscount."""
    import cmudict
    import wordfreq

    from azter.syllables import Syllabifier

    rules = Syllabifier.from_files(DATA / "en" / "syllables.rules")
    pron = cmudict.dict()
    rows = []
    for w in wordfreq.top_n_list("en", n_words):
        if not w.isalpha() or w not in pron:
            continue
        expected = cmu_syllables(pron[w][0])
        if expected >= 1 and rules.count(w) != expected:
            rows.append((w, expected))
    with open(DATA / "en" / "syllable_exceptions.tsv", "w", encoding="utf-8") as fh:
        fh.write("# form<TAB>syllables (CMU Pronouncing Dictionary, where the rules disagree)\n")
        for w, n in sorted(rows):
            fh.write(f"{w}\t{n}\n")


def _vector(word: str, dim: int) -> np.ndarray:
    seed = int.from_bytes(hashlib.sha256(word.encode("utf-8")).digest()[:8], "little")
    return np.random.default_rng(seed).standard_normal(dim)


def write_embeddings(lang: str, n_words: int, dim: int) -> None:
    """Hash-seeded random vectors: a format-valid stand-in, not a semantic model."""
    vocab = []
    for line in (DATA / lang / "freq.tsv").read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            vocab.append(line.split("\t")[0])
    vocab = list(dict.fromkeys(vocab))[:n_words]
    with open(DATA / lang / "embeddings.vec", "w", encoding="utf-8") as fh:
        fh.write(f"{len(vocab)} {dim}\n")
        for w in vocab:
            fh.write(w + " " + " ".join(f"{x:.4f}" for x in _vector(w, dim)) + "\n")


def write_english_lexnet() -> bool:
    try:
        from nltk.corpus import wordnet as wn

        wn.ensure_loaded()
    except LookupError:
        return False
    tags = {"n": "NOUN", "v": "VERB", "a": "ADJ", "s": "ADJ", "r": "ADV"}
    rows = {}
    for syn in wn.all_synsets():
        for lemma in syn.lemma_names():
            if "_" in lemma:
                continue
            upos = tags[syn.pos()]
            key = (lemma.lower(), upos)
            if key in rows:
                continue
            senses = wn.synsets(lemma, pos=syn.pos())
            first = senses[0]
            depth = first.min_depth() if upos in ("NOUN", "VERB") else "_"
            rows[key] = (len(senses), depth)
    with open(DATA / "en" / "lexnet.tsv", "w", encoding="utf-8") as fh:
        fh.write("# lemma<TAB>upos<TAB>sense_count<TAB>hypernym_depth (WordNet, first sense)\n")
        for (lemma, upos), (n, depth) in sorted(rows.items()):
            fh.write(f"{lemma}\t{upos}\t{n}\t{depth}\n")
    return True


MANIFEST = """\
lang = {lang}
stopwords = stopwords.txt
connectives = connectives.tsv
irregular_verbs = irregular_verbs.txt
cefr = {cefr}
freq_table = freq.tsv
lexnet = lexnet.tsv
embeddings = embeddings.vec
syllabifier = syllables.rules
syllable_exceptions = syllable_exceptions.tsv
negators = negators.txt
"""


def write_manifest(lang: str) -> None:
    cefr = "cefr.tsv" if (DATA / lang / "cefr.tsv").exists() else "none"
    (DATA / lang / "manifest.txt").write_text(MANIFEST.format(lang=lang, cefr=cefr), encoding="utf-8")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=30000, help="frequency-table size")
    ap.add_argument("--vectors", type=int, default=5000, help="embedding vocabulary size")
    ap.add_argument("--dim", type=int, default=16)
    args = ap.parse_args()
    for lang in ("en", "es"):
        write_freq(lang, args.words)
    write_english_exceptions(args.words)
    for lang in LANGS:
        write_embeddings(lang, args.vectors, args.dim)
        write_manifest(lang)
    if not write_english_lexnet():
        print("WordNet data not installed; kept the existing English lexnet")


if __name__ == "__main__":
    main()
