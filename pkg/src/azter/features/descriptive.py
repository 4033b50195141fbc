from __future__ import annotations

from ..conllu import Document
from ..resources import LanguageProfile
from .util import has_letter, incidence, letters, mean, pstdev, words


def descriptive_features(d: Document, p: LanguageProfile) -> dict:
    ws = words(d)
    n = len(ws)
    sentences = d.sentences
    stop = p.stopwords
    out = {
        "num_paragraphs": len(d.paragraphs),
        "paragraphs_incidence": incidence(len(d.paragraphs), n),
        "num_sentences": len(sentences),
        "sentences_incidence": incidence(len(sentences), n),
        "num_words": n,
        "num_words_with_punct": d.word_count,
        "num_letters": sum(letters(w.form) for w in ws),
    }
    para_lengths = [len(par.sentences) for par in d.paragraphs]
    out["paragraph_length_mean"] = mean(para_lengths)
    out["paragraph_length_sd"] = pstdev(para_lengths)

    sent_lengths = [sum(1 for w in s.words if not w.is_punct) for s in sentences]
    out["sentence_length_mean"] = mean(sent_lengths)
    out["sentence_length_sd"] = pstdev(sent_lengths)

    word_lengths = [letters(w.form) for w in ws]
    out["word_length_mean"] = mean(word_lengths)
    out["word_length_sd"] = pstdev(word_lengths)
    lemma_lengths = [letters(w.lemma_lower) for w in ws]
    out["lemma_length_mean"] = mean(lemma_lengths)
    out["lemma_length_sd"] = pstdev(lemma_lengths)

    if p.has("stopwords"):
        content = [w for w in ws if w.lower not in stop]
        out["num_words_no_stopwords"] = len(content)
        out["words_no_stopwords_incidence"] = incidence(len(content), n)
        lens = [sum(1 for w in s.words if not w.is_punct and w.lower not in stop) for s in sentences]
        out["sentence_length_no_stopwords_mean"] = mean(lens)
        out["sentence_length_no_stopwords_sd"] = pstdev(lens)
        wl = [letters(w.form) for w in content]
        out["word_length_no_stopwords_mean"] = mean(wl)
        out["word_length_no_stopwords_sd"] = pstdev(wl)

    if p.syllabifier is not None:
        syl = [p.syllabifier.count(w.form) for w in ws if has_letter(w.form)]
        out["syllables_per_word_mean"] = mean(syl)
        out["syllables_per_word_sd"] = pstdev(syl)
    return out
