"""Named feature families and the catalog ids that implement each one.

Families are the human-level measures a reader looks for ("type-token ratio
of verbs", "passive voice"); coverage reports list them against the ids.
"""

from __future__ import annotations

from .catalog import CATALOG

FAMILIES: list[tuple[str, str, tuple[str, ...]]] = [
    ("descriptive", "number of letters", ("num_letters", "word_length_mean", "word_length_sd")),
    ("descriptive", "syllables", ("syllables_per_word_mean", "syllables_per_word_sd")),
    ("descriptive", "lemmas", ("lemma_length_mean", "lemma_length_sd")),
    ("descriptive", "words", ("num_words", "num_words_with_punct", "num_words_no_stopwords",
                              "words_no_stopwords_incidence")),
    ("descriptive", "sentences", ("num_sentences", "sentences_incidence", "sentence_length_mean",
                                  "sentence_length_sd", "sentence_length_no_stopwords_mean")),
    ("descriptive", "paragraphs", ("num_paragraphs", "paragraphs_incidence", "paragraph_length_mean",
                                   "paragraph_length_sd")),
    ("lexical_diversity", "lexical density", ("lexical_density",)),
    ("lexical_diversity", "noun, verb, adjective and adverb densities",
     ("noun_density", "verb_density", "adj_density", "adv_density")),
    ("lexical_diversity", "simple type-token ratio", ("simple_ttr",)),
    ("lexical_diversity", "content type-token ratio", ("content_ttr",)),
    ("lexical_diversity", "per-POS type-token ratios", ("noun_ttr", "verb_ttr", "adj_ttr", "adv_ttr")),
    ("lexical_diversity", "lemma type-token ratio", ("lemma_ttr",)),
    ("lexical_diversity", "lemma content type-token ratio", ("lemma_content_ttr",)),
    ("lexical_diversity", "per-POS lemma type-token ratios",
     ("lemma_noun_ttr", "lemma_verb_ttr", "lemma_adj_ttr", "lemma_adv_ttr")),
    ("lexical_diversity", "Honore lexical density", ("honore",)),
    ("lexical_diversity", "Maas lexical density", ("maas",)),
    ("lexical_diversity", "MTLD", ("mtld",)),
    ("readability", "Flesch reading ease (English)", ("flesch_reading_ease",)),
    ("readability", "Fernandez-Huerta reading ease (Spanish)", ("fernandez_huerta",)),
    ("readability", "SMOG grade", ("smog_grade",)),
    ("word_frequency", "minimum word frequency per sentence", ("min_word_freq_mean",)),
    ("word_frequency", "rare words", ("num_rare_words", "rare_words_incidence")),
    ("word_frequency", "rare words by POS",
     ("num_rare_nouns", "rare_nouns_incidence", "num_rare_verbs", "rare_verbs_incidence",
      "num_rare_adjs", "rare_adjs_incidence", "num_rare_advs", "rare_advs_incidence")),
    ("word_frequency", "distinct rare content words",
     ("num_distinct_rare_content_words", "distinct_rare_content_words_incidence")),
    ("word_frequency", "mean rare content words", ("rare_content_words_mean",)),
    ("word_frequency", "mean distinct rare content words", ("distinct_rare_content_words_mean",)),
    ("vocabulary_knowledge", "words at each CEFR level",
     ("num_a1_words", "a1_words_incidence", "num_a2_words", "a2_words_incidence", "num_b1_words",
      "b1_words_incidence", "num_b2_words", "b2_words_incidence", "num_c1_words", "c1_words_incidence",
      "num_content_words_not_a1_c1", "content_words_not_a1_c1_incidence")),
    ("word_information", "number and incidence of each POS",
     ("num_noun", "noun_incidence", "num_verb", "verb_incidence", "num_adj", "adj_incidence",
      "num_adv", "adv_incidence", "num_pron", "pron_incidence")),
    ("word_information", "morphological features (tense, mood, person)",
     ("tense_pres_incidence", "tense_past_incidence", "mood_ind_incidence", "mood_imp_incidence",
      "person_1_incidence", "person_2_incidence", "person_3_incidence", "verbform_fin_incidence")),
    ("word_information", "content words", ("num_content_words", "content_words_incidence")),
    ("word_information", "proper nouns per noun", ("proper_noun_ratio",)),
    ("syntax", "left embeddedness", ("left_embeddedness",)),
    ("syntax", "descendants per noun phrase", ("np_descendants_mean",)),
    ("syntax", "modifiers per noun phrase", ("np_modifiers_mean",)),
    ("syntax", "propositions per sentence", ("num_propositions", "propositions_per_sentence")),
    ("syntax", "noun phrases per sentence", ("num_noun_phrases", "noun_phrases_per_sentence")),
    ("syntax", "verb phrases per sentence", ("num_verb_phrases", "verb_phrases_per_sentence")),
    ("syntax", "subordinate clauses", ("num_subordinate_clauses", "subordinate_clauses_incidence")),
    ("syntax", "passive voice", ("num_passives", "passive_incidence")),
    ("syntax", "negation", ("num_negations", "negation_incidence")),
    ("semantic_information", "polysemy", ("polysemy_mean",)),
    ("semantic_information", "hypernymy", ("hypernymy_index", "noun_hypernymy_mean", "verb_hypernymy_mean")),
    ("semantic_overlap", "similarity of adjacent sentences",
     ("similarity_adjacent_sentences_mean", "similarity_adjacent_sentences_sd")),
    ("semantic_overlap", "similarity of adjacent paragraphs",
     ("similarity_adjacent_paragraphs_mean", "similarity_adjacent_paragraphs_sd")),
    ("semantic_overlap", "similarity of sentence pairs within a paragraph",
     ("similarity_paragraph_pairs_mean", "similarity_paragraph_pairs_sd")),
    ("referential_cohesion", "noun overlap", ("noun_overlap_adjacent", "noun_overlap_all")),
    ("referential_cohesion", "stem overlap", ("stem_overlap_adjacent", "stem_overlap_all")),
    ("referential_cohesion", "argument overlap", ("argument_overlap_adjacent", "argument_overlap_all")),
    ("referential_cohesion", "content word overlap",
     ("content_overlap_adjacent_mean", "content_overlap_adjacent_sd", "content_overlap_all_mean",
      "content_overlap_all_sd")),
    ("connectives", "causal connectives", ("num_causal_connectives", "causal_connectives_incidence")),
    ("connectives", "logical connectives", ("num_logical_connectives", "logical_connectives_incidence")),
    ("connectives", "adversative connectives",
     ("num_adversative_connectives", "adversative_connectives_incidence")),
    ("connectives", "temporal connectives", ("num_temporal_connectives", "temporal_connectives_incidence")),
    ("connectives", "conditional connectives",
     ("num_conditional_connectives", "conditional_connectives_incidence")),
    ("connectives", "all connectives", ("num_all_connectives", "all_connectives_incidence")),
]


def check_families() -> list[str]:
    """Problems with the family table: unknown ids or ids filed under the wrong group."""
    problems = []
    for group, name, ids in FAMILIES:
        if not ids:
            problems.append(f"{name}: no ids")
        for i in ids:
            if i not in CATALOG:
                problems.append(f"{name}: unknown id {i}")
            elif CATALOG[i].group != group:
                problems.append(f"{name}: {i} belongs to {CATALOG[i].group}, not {group}")
    return problems
