"""The registry of indicator definitions.

Catalog order is the column order of every CSV the tool writes.
"""

from __future__ import annotations

from dataclasses import dataclass

ABSOLUTE = "absolute"
INCIDENCE = "incidence"
RATIO = "ratio"
MEAN = "mean"
STDDEV = "stddev"
SCORE_KINDS = (ABSOLUTE, INCIDENCE, RATIO, MEAN, STDDEV)

GROUPS = (
    "descriptive",
    "lexical_diversity",
    "readability",
    "word_frequency",
    "vocabulary_knowledge",
    "word_information",
    "syntax",
    "semantic_information",
    "semantic_overlap",
    "referential_cohesion",
    "connectives",
)

GROUP_ALIASES = {
    "description": "descriptive",
    "lexical": "lexical_diversity",
    "frequency": "word_frequency",
    "word_frequencies": "word_frequency",
    "vocabulary": "vocabulary_knowledge",
    "cefr": "vocabulary_knowledge",
    "morphology": "word_information",
    "syntactic": "syntax",
    "syntactic_complexity": "syntax",
    "semantic": "semantic_information",
    "similarity": "semantic_overlap",
    "overlap": "referential_cohesion",
    "discourse_connectives": "connectives",
    "logical_cohesion": "connectives",
}

MODES = ("all", "ratios")


@dataclass(frozen=True)
class FeatureDef:
    id: str
    group: str
    score_kind: str
    description: str
    resource_deps: frozenset[str] = frozenset()
    languages: frozenset[str] | None = None  # None: any language
    # value unchanged when the document is concatenated with itself
    dup_invariant: bool = True

    def available(self, lang: str, present: frozenset[str] | set[str]) -> bool:
        if self.languages is not None and lang not in self.languages:
            return False
        return self.resource_deps <= set(present)


class FeatureCatalog:
    def __init__(self, defs: list[FeatureDef]):
        ids = [d.id for d in defs]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate feature ids: {dupes}")
        for d in defs:
            if d.group not in GROUPS:
                raise ValueError(f"{d.id}: unknown group {d.group!r}")
            if d.score_kind not in SCORE_KINDS:
                raise ValueError(f"{d.id}: unknown score kind {d.score_kind!r}")
        self.defs = list(defs)
        self._by_id = {d.id: d for d in defs}

    def __iter__(self):
        return iter(self.defs)

    def __len__(self):
        return len(self.defs)

    def __contains__(self, fid):
        return fid in self._by_id

    def __getitem__(self, fid) -> FeatureDef:
        return self._by_id[fid]

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.defs]

    def group_ids(self, group: str) -> list[str]:
        return [d.id for d in self.defs if d.group == group]

    def available_ids(self, lang: str, present) -> frozenset[str]:
        return frozenset(d.id for d in self.defs if d.available(lang, present))

    def select(self, available=None, mode: str = "all", groups=None) -> list[str]:
        """Ordered ids after availability, mode and group filtering."""
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
        groups = None if groups is None else {normalize_group(g) for g in groups}
        out = []
        for d in self.defs:
            if available is not None and d.id not in available:
                continue
            if mode == "ratios" and d.score_kind == ABSOLUTE:
                continue
            if groups is not None and d.group not in groups:
                continue
            out.append(d.id)
        return out

    def order(self, ids) -> list[str]:
        wanted = set(ids)
        return [i for i in self.ids if i in wanted]


def normalize_group(name: str) -> str:
    key = name.strip().lower().replace("-", "_").replace(" ", "_")
    key = GROUP_ALIASES.get(key, key)
    if key not in GROUPS:
        raise ValueError(f"unknown feature group {name!r}; choose from {', '.join(GROUPS)}")
    return key


def _build() -> list[FeatureDef]:
    defs: list[FeatureDef] = []

    def add(fid, group, kind, desc, deps=(), langs=None, inv=None):
        if inv is None:
            inv = kind != ABSOLUTE
        defs.append(FeatureDef(fid, group, kind, desc, frozenset(deps),
                               None if langs is None else frozenset(langs), inv))

    g = "descriptive"
    add("num_paragraphs", g, ABSOLUTE, "Number of paragraphs")
    add("paragraphs_incidence", g, INCIDENCE, "Number of paragraphs per 1000 words")
    add("num_sentences", g, ABSOLUTE, "Number of sentences")
    add("sentences_incidence", g, INCIDENCE, "Number of sentences per 1000 words")
    add("num_words", g, ABSOLUTE, "Number of words (without punctuation marks)")
    add("num_words_with_punct", g, ABSOLUTE, "Number of words with punctuation marks")
    add("num_words_no_stopwords", g, ABSOLUTE, "Number of words without stopwords", ["stopwords"])
    add("words_no_stopwords_incidence", g, INCIDENCE, "Words without stopwords per 1000 words", ["stopwords"])
    add("num_letters", g, ABSOLUTE, "Number of letters")
    add("paragraph_length_mean", g, MEAN, "Paragraph length in sentences (mean)")
    add("paragraph_length_sd", g, STDDEV, "Paragraph length in sentences (sd)")
    add("sentence_length_mean", g, MEAN, "Sentence length in words (mean)")
    add("sentence_length_sd", g, STDDEV, "Sentence length in words (sd)")
    add("sentence_length_no_stopwords_mean", g, MEAN, "Sentence length without stopwords (mean)", ["stopwords"])
    add("sentence_length_no_stopwords_sd", g, STDDEV, "Sentence length without stopwords (sd)", ["stopwords"])
    add("word_length_mean", g, MEAN, "Word length in letters (mean)")
    add("word_length_sd", g, STDDEV, "Word length in letters (sd)")
    add("word_length_no_stopwords_mean", g, MEAN, "Word length without stopwords (mean)", ["stopwords"])
    add("word_length_no_stopwords_sd", g, STDDEV, "Word length without stopwords (sd)", ["stopwords"])
    add("lemma_length_mean", g, MEAN, "Lemma length in letters (mean)")
    add("lemma_length_sd", g, STDDEV, "Lemma length in letters (sd)")
    add("syllables_per_word_mean", g, MEAN, "Number of syllables per word (mean)", ["syllabifier"])
    add("syllables_per_word_sd", g, STDDEV, "Number of syllables per word (sd)", ["syllabifier"])

    g = "lexical_diversity"
    add("lexical_density", g, RATIO, "Lexical (content) words / words")
    for pos, name in (("noun", "nouns"), ("verb", "verbs"), ("adj", "adjectives"), ("adv", "adverbs")):
        add(f"{pos}_density", g, RATIO, f"Density of {name}: {name} / words")
    add("simple_ttr", g, RATIO, "Simple type-token ratio on forms", inv=False)
    add("content_ttr", g, RATIO, "Content-word type-token ratio on forms", inv=False)
    for pos, name in (("noun", "nouns"), ("verb", "verbs"), ("adj", "adjectives"), ("adv", "adverbs")):
        add(f"{pos}_ttr", g, RATIO, f"Type-token ratio of {name}", inv=False)
    add("lemma_ttr", g, RATIO, "Lemma simple type-token ratio", inv=False)
    add("lemma_content_ttr", g, RATIO, "Lemma content-word type-token ratio", inv=False)
    for pos, name in (("noun", "nouns"), ("verb", "verbs"), ("adj", "adjectives"), ("adv", "adverbs")):
        add(f"lemma_{pos}_ttr", g, RATIO, f"Lemma type-token ratio of {name}", inv=False)
    add("honore", g, RATIO, "Honore lexical density R = 100 ln N / (1 - V1/V)", inv=False)
    add("maas", g, RATIO, "Maas lexical density a^2 = (ln N - ln V) / (ln N)^2", inv=False)
    add("mtld", g, RATIO, "Measure of textual lexical diversity (bidirectional, 0.72)", inv=False)

    g = "readability"
    add("flesch_reading_ease", g, RATIO, "Flesch reading ease", ["syllabifier"], ["en"])
    add("smog_grade", g, RATIO, "SMOG grade", ["syllabifier"], ["en"])
    add("fernandez_huerta", g, RATIO, "Flesch reading ease, Fernandez-Huerta adaptation", ["syllabifier"], ["es"])

    g = "word_frequency"
    f = ["freq_table"]
    add("min_word_freq_mean", g, MEAN, "Minimum content-word log10 frequency per sentence (mean)", f)
    add("num_rare_words", g, ABSOLUTE, "Number of rare words", f)
    add("rare_words_incidence", g, INCIDENCE, "Rare words per 1000 words", f)
    for pos, name in (("noun", "nouns"), ("verb", "verbs"), ("adj", "adjectives"), ("adv", "adverbs")):
        add(f"num_rare_{pos}s", g, ABSOLUTE, f"Number of rare {name}", f)
        add(f"rare_{pos}s_incidence", g, INCIDENCE, f"Rare {name} per 1000 words", f)
    add("num_distinct_rare_content_words", g, ABSOLUTE, "Number of different rare content words", f)
    add("distinct_rare_content_words_incidence", g, INCIDENCE,
        "Different rare content words per 1000 words", f, inv=False)
    add("rare_content_words_mean", g, MEAN, "Rare content words / content words", f)
    add("distinct_rare_content_words_mean", g, MEAN, "Different rare content words / different content words", f)

    g = "vocabulary_knowledge"
    c = ["cefr"]
    for level in ("A1", "A2", "B1", "B2", "C1"):
        lv = level.lower()
        add(f"num_{lv}_words", g, ABSOLUTE, f"Number of words at CEFR level {level}", c)
        add(f"{lv}_words_incidence", g, INCIDENCE, f"Words at CEFR level {level} per 1000 words", c)
    add("num_content_words_not_a1_c1", g, ABSOLUTE, "Number of content words not listed at A1 to C1", c)
    add("content_words_not_a1_c1_incidence", g, INCIDENCE, "Content words not listed at A1 to C1 per 1000 words", c)

    g = "word_information"
    for tag in ("NOUN", "PROPN", "VERB", "AUX", "ADJ", "ADV", "PRON", "DET", "ADP",
                "NUM", "CCONJ", "SCONJ", "PART", "INTJ"):
        t = tag.lower()
        add(f"num_{t}", g, ABSOLUTE, f"Number of {tag} tokens")
        add(f"{t}_incidence", g, INCIDENCE, f"{tag} tokens per 1000 words")
    add("num_content_words", g, ABSOLUTE, "Number of lexical (content) words")
    add("content_words_incidence", g, INCIDENCE, "Lexical (content) words per 1000 words")
    add("proper_noun_ratio", g, RATIO, "Proper nouns / (proper nouns + common nouns)")
    add("num_irregular_verbs", g, ABSOLUTE, "Number of irregular verbs", ["irregular_verbs"])
    add("irregular_verbs_incidence", g, INCIDENCE, "Irregular verbs per 1000 words", ["irregular_verbs"])
    for fid, desc in MORPH_FEATS:
        add(fid, g, INCIDENCE, desc)

    g = "syntax"
    add("left_embeddedness", g, MEAN, "Words before the main verb per sentence (mean)")
    add("np_descendants_mean", g, MEAN, "Descendants per noun phrase (mean)")
    add("np_modifiers_mean", g, MEAN, "Modifiers per noun phrase (mean)")
    add("num_noun_phrases", g, ABSOLUTE, "Number of noun phrases")
    add("noun_phrases_per_sentence", g, MEAN, "Noun phrases per sentence (mean)")
    add("num_verb_phrases", g, ABSOLUTE, "Number of verb phrases")
    add("verb_phrases_per_sentence", g, MEAN, "Verb phrases per sentence (mean)")
    add("num_propositions", g, ABSOLUTE, "Number of total propositions")
    add("propositions_per_sentence", g, MEAN, "Propositions per sentence (mean)")
    add("num_subordinate_clauses", g, ABSOLUTE, "Number of subordinate clauses")
    add("subordinate_clauses_incidence", g, INCIDENCE, "Subordinate clauses per 1000 words")
    add("num_relative_clauses", g, ABSOLUTE, "Number of relative clauses")
    add("relative_clauses_incidence", g, INCIDENCE, "Relative clauses per 1000 words")
    add("subordinate_depth_mean", g, MEAN, "Depth of the subordinates per sentence (mean)")
    add("subordinate_depth_sd", g, STDDEV, "Depth of the subordinates per sentence (sd)")
    add("num_passives", g, ABSOLUTE, "Number of passive clauses")
    add("passive_incidence", g, INCIDENCE, "Passive clauses per 1000 words")
    add("num_negations", g, ABSOLUTE, "Number of negations")
    add("negation_incidence", g, INCIDENCE, "Negations per 1000 words")
    add("tree_depth_mean", g, MEAN, "Dependency tree depth per sentence (mean)")
    add("tree_depth_sd", g, STDDEV, "Dependency tree depth per sentence (sd)")

    g = "semantic_information"
    add("polysemy_mean", g, MEAN, "Senses per lexicon word (mean)", ["lexnet"])
    add("hypernymy_index", g, MEAN, "Hypernym depth of nouns and verbs (mean)", ["lexnet"])
    add("noun_hypernymy_mean", g, MEAN, "Hypernym depth of nouns (mean)", ["lexnet"])
    add("verb_hypernymy_mean", g, MEAN, "Hypernym depth of verbs (mean)", ["lexnet"])

    g = "semantic_overlap"
    e = ["embeddings"]
    add("similarity_adjacent_sentences_mean", g, MEAN, "Similarity of adjacent sentences (mean)", e, inv=False)
    add("similarity_adjacent_sentences_sd", g, STDDEV, "Similarity of adjacent sentences (sd)", e, inv=False)
    add("similarity_adjacent_paragraphs_mean", g, MEAN, "Similarity of adjacent paragraphs (mean)", e, inv=False)
    add("similarity_adjacent_paragraphs_sd", g, STDDEV, "Similarity of adjacent paragraphs (sd)", e, inv=False)
    add("similarity_paragraph_pairs_mean", g, MEAN,
        "Similarity of all sentence pairs within a paragraph (mean)", e)
    add("similarity_paragraph_pairs_sd", g, STDDEV,
        "Similarity of all sentence pairs within a paragraph (sd)", e)

    g = "referential_cohesion"
    for scope in ("adjacent", "all"):
        pairs = "adjacent sentence pairs" if scope == "adjacent" else "all sentence pairs"
        add(f"noun_overlap_{scope}", g, MEAN, f"Noun overlap over {pairs} (mean)", inv=False)
        add(f"argument_overlap_{scope}", g, MEAN, f"Argument overlap over {pairs} (mean)", inv=False)
        add(f"stem_overlap_{scope}", g, MEAN, f"Stem overlap over {pairs} (mean)", inv=False)
        add(f"content_overlap_{scope}_mean", g, MEAN, f"Content-word overlap over {pairs} (mean)", inv=False)
        add(f"content_overlap_{scope}_sd", g, STDDEV, f"Content-word overlap over {pairs} (sd)", inv=False)

    g = "connectives"
    k = ["connectives"]
    for cat in ("causal", "logical", "adversative", "temporal", "conditional"):
        add(f"num_{cat}_connectives", g, ABSOLUTE, f"Number of {cat} connectives", k)
        add(f"{cat}_connectives_incidence", g, INCIDENCE, f"{cat.capitalize()} connectives per 1000 words", k)
    add("num_all_connectives", g, ABSOLUTE, "Number of connectives", k)
    add("all_connectives_incidence", g, INCIDENCE, "Connectives per 1000 words", k)
    return defs


# (feature id, description) for FEATS-keyed incidences over verbal tokens,
# limited to values every shipped treebank convention marks
MORPH_FEATS = (
    ("verbform_fin_incidence", "Finite verb forms per 1000 words"),
    ("verbform_inf_incidence", "Infinitives per 1000 words"),
    ("verbform_part_incidence", "Participles per 1000 words"),
    ("mood_ind_incidence", "Indicative verbs per 1000 words"),
    ("mood_imp_incidence", "Imperative verbs per 1000 words"),
    ("tense_pres_incidence", "Present-tense verbs per 1000 words"),
    ("tense_past_incidence", "Past-tense verbs per 1000 words"),
    ("person_1_incidence", "First-person verbs per 1000 words"),
    ("person_2_incidence", "Second-person verbs per 1000 words"),
    ("person_3_incidence", "Third-person verbs per 1000 words"),
    ("case_marked_incidence", "Case-marked nominals per 1000 words"),
)

CATALOG = FeatureCatalog(_build())
