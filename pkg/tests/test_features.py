import math

import pytest

from azter.conllu import parse_conllu
from azter.features import compute_all
from azter.features.cohesion import connective_features, overlap_features
from azter.features.descriptive import descriptive_features
from azter.features.lexical import honore, lexical_diversity_features, maas, mtld, ttr
from azter.features.morphology import morphology_features
from azter.features.readability import (fernandez_huerta, flesch_reading_ease, readability_features,
                                        smog_grade)
from azter.features.semantics import semantic_features, similarity_features
from azter.features.syntax import syntax_features, tree_depth
from azter.features.util import incidence, pstdev
from azter.features.vocabulary import frequency_features, vocabulary_features
from azter.resources import load_profile
from docgen import flat_sentence, sentence_block, write_bundle


def doc(*sentences):
    return parse_conllu("".join(sentences), "t")


def words(text):
    """'dog/NOUN barks/VERB' -> [(form, upos)]."""
    return [tuple(item.rsplit("/", 1)) for item in text.split()]


@pytest.fixture(scope="module")
def custom(tmp_path_factory):
    m = write_bundle(
        tmp_path_factory.mktemp("custom"), lang="xx",
        stopwords="the\na\n",
        connectives="causal\tbecause\ntemporal\tthen\nadversative\tbut\n",
        freq_table="dog\t5.1\ncat\t3.2\nthe\t7\nruns\t4.5\nsees\t4.4\n",
        cefr="dog\tNOUN\tA1\ncat\tNOUN\tB2\n",
        lexnet="dog\tNOUN\t1\t2\ncat\tNOUN\t1\t4\nrun\tVERB\t1\t1\nsee\tVERB\t3\t3\nred\tADJ\t1\t_\n",
        embeddings="4 2\nx 1 0\ny 0 1\nz 1 1\nthe 5 5\n",
        syllabifier="vowels = a e i o u\nsemivowels = y\n",
        negators="not\n",
    )
    return load_profile(m)


# ---------------------------------------------------------------- arithmetic helpers

def test_incidence_examples():
    assert incidence(5, 250) == 20.0
    assert incidence(0, 7) == 0.0
    assert incidence(9, 9) == 1000.0
    assert incidence(1, 0) is None


def test_population_sd():
    assert pstdev([4, 6]) == 1.0
    assert pstdev([3]) == 0.0
    assert pstdev([]) is None


# ---------------------------------------------------------------- descriptive

def test_sentence_length_mean_and_sd(en):
    d = doc(flat_sentence(words("a/DET b/NOUN c/VERB d/NOUN")),
            flat_sentence(words("a/DET b/NOUN c/VERB d/NOUN e/ADV f/ADJ")))
    f = descriptive_features(d, en)
    assert f["sentence_length_mean"] == 5.0
    assert f["sentence_length_sd"] == 1.0


def test_single_sentence_document(en):
    d = doc(flat_sentence(words("Dogs/NOUN bark/VERB loudly/ADV ./PUNCT")))
    f = descriptive_features(d, en)
    assert f["num_paragraphs"] == 1 and f["num_sentences"] == 1
    assert f["num_words"] == 3 and f["num_words_with_punct"] == 4
    assert f["sentences_incidence"] == pytest.approx(1000 / 3)
    assert f["num_letters"] == len("Dogsbarkloudly")


def test_stopword_and_length_features(custom):
    d = doc(flat_sentence(words("the/DET dog/NOUN runs/VERB")), flat_sentence(words("a/DET cat/NOUN")))
    f = descriptive_features(d, custom)
    assert f["num_words_no_stopwords"] == 3
    assert f["sentence_length_no_stopwords_mean"] == 1.5
    assert f["word_length_no_stopwords_mean"] == pytest.approx((3 + 4 + 3) / 3)
    assert f["paragraph_length_mean"] == 2.0


def test_syllable_features_need_syllabifier(tmp_path):
    p = load_profile(write_bundle(tmp_path, stopwords="the\n"))
    f = descriptive_features(doc(flat_sentence(words("dog/NOUN"))), p)
    assert "syllables_per_word_mean" not in f


# ---------------------------------------------------------------- lexical diversity

def test_ttr_example():
    assert ttr(["a", "a", "b"]) == pytest.approx(2 / 3)
    assert ttr([]) is None


def hapax_fixture():
    """N=100 tokens, V=50 types, V1=20 hapaxes."""
    tokens = [f"h{i}" for i in range(20)]
    tokens += [f"t{i}" for i in range(20) for _ in range(3)]
    tokens += [f"d{i}" for i in range(10) for _ in range(2)]
    assert len(tokens) == 100 and len(set(tokens)) == 50
    return tokens


def test_honore_and_maas_hand_arithmetic():
    tokens = hapax_fixture()
    assert honore(tokens) == pytest.approx(100 * math.log(100) / (1 - 20 / 50))
    assert honore(tokens) == pytest.approx(767.53, abs=0.01)
    assert maas(tokens) == pytest.approx(0.03268, abs=1e-4)
    assert honore(["a", "b"]) is None
    assert maas(["a"]) is None


def mtld_trace(tokens, threshold=0.72):
    """Independent oracle: write out the factor boundaries one token at a time."""
    def one_way(seq):
        factors, start = 0.0, 0
        for end in range(1, len(seq) + 1):
            window = seq[start:end]
            if len(set(window)) / len(window) < threshold:
                factors += 1
                start = end
        rest = seq[start:]
        if rest:
            factors += (1 - len(set(rest)) / len(rest)) / (1 - threshold)
        return len(seq) / factors
    return (one_way(tokens) + one_way(tokens[::-1])) / 2


def test_mtld_ab_fixture():
    tokens = ["a", "b"] * 50
    assert mtld(tokens) == pytest.approx(100 / 33)
    assert mtld(tokens) == pytest.approx(3.0303, abs=0.01)
    assert mtld(tokens) == pytest.approx(mtld_trace(tokens))


@pytest.mark.parametrize("tokens", [
    list("abcabcabcaaaab"), list("the cat sat on the mat with the hat".split()),
    list("aaaaaaaaaa"), list("abcdefgha") * 3,
])
def test_mtld_matches_trace_oracle(tokens):
    assert mtld(tokens) == pytest.approx(mtld_trace(tokens))


def test_mtld_all_distinct_is_undefined():
    assert mtld(list("abcde")) is None


def test_lexical_features_on_document(en):
    d = doc(flat_sentence(words("Dog/NOUN sees/VERB dog/NOUN ./PUNCT")))
    f = lexical_diversity_features(d, en)
    assert f["lexical_density"] == 1.0
    assert f["noun_density"] == pytest.approx(2 / 3)
    assert f["simple_ttr"] == pytest.approx(2 / 3)
    assert f["noun_ttr"] == 0.5
    assert f["adj_ttr"] is None


# ---------------------------------------------------------------- readability

def test_readability_formula_arithmetic():
    assert flesch_reading_ease(6, 1) == pytest.approx(116.145)
    assert smog_grade(30, 30) == pytest.approx(1.043 * math.sqrt(30) + 3.1291)
    assert smog_grade(30, 30) == pytest.approx(8.842, abs=1e-2)
    assert fernandez_huerta(10, 1.5) == pytest.approx(206.84 - 0.6 * 150 - 1.02 * 10)


def test_flesch_fixture_document(en):
    d = doc(flat_sentence(words("The/DET cat/NOUN sat/VERB on/ADP the/DET mat/NOUN ./PUNCT")))
    f = readability_features(d, en)
    assert f["flesch_reading_ease"] == pytest.approx(116.145, abs=1e-3)
    assert "fernandez_huerta" not in f


def test_smog_fixture_document(en):
    d = doc(*[flat_sentence(words("Beautiful/ADJ day/NOUN ./PUNCT")) for _ in range(30)])
    f = readability_features(d, en)
    assert f["smog_grade"] == pytest.approx(8.842, abs=1e-2)


def test_spanish_and_basque_readability(es, eu):
    d = doc(flat_sentence(words("El/DET perro/NOUN come/VERB ./PUNCT")))
    f = readability_features(d, es)
    assert set(f) == {"fernandez_huerta"}
    assert f["fernandez_huerta"] == pytest.approx(fernandez_huerta(3, 5 / 3))
    assert readability_features(d, eu) == {}


# ---------------------------------------------------------------- word frequency and CEFR

def test_rare_word_incidence(custom):
    common = flat_sentence([("dog", "NOUN")] * 99 + [("zyzzyva", "NOUN")])
    f = frequency_features(doc(common), custom)
    assert f["rare_words_incidence"] == pytest.approx(10.0)
    assert f["num_rare_nouns"] == 1
    f = frequency_features(doc(flat_sentence([("dog", "NOUN")] * 5)), custom)
    assert f["rare_words_incidence"] == 0.0


def test_sentence_minimum_frequency(custom):
    d = doc(flat_sentence(words("dog/NOUN cat/NOUN the/DET")), flat_sentence(words("the/DET")))
    f = frequency_features(d, custom)
    assert f["min_word_freq_mean"] == pytest.approx(3.2)


def test_distinct_rare_content(custom):
    d = doc(flat_sentence(words("cat/NOUN cat/NOUN Cat/NOUN dog/NOUN")))
    f = frequency_features(d, custom)
    assert f["num_distinct_rare_content_words"] == 1
    assert f["rare_content_words_mean"] == pytest.approx(3 / 4)
    assert f["distinct_rare_content_words_mean"] == pytest.approx(1 / 2)


def test_cefr_incidence(custom):
    d = doc(flat_sentence([("dog", "NOUN")] * 40 + [("zap", "VERB")] * 50 + [("of", "ADP")] * 10))
    f = vocabulary_features(d, custom)
    assert f["a1_words_incidence"] == pytest.approx(400.0)
    assert f["num_content_words_not_a1_c1"] == 50


def test_cefr_lowercased_once(custom):
    f = vocabulary_features(doc(flat_sentence(words("CAT/NOUN"))), custom)
    assert f["num_b2_words"] == 1 and f["num_a1_words"] == 0


def test_cefr_absent_for_spanish(es):
    d = doc(flat_sentence(words("perro/NOUN")))
    assert vocabulary_features(d, es) == {}
    assert not any(k.startswith("num_a1") for k in compute_all(d, es))


# ---------------------------------------------------------------- morphology

def test_pos_incidence_and_proper_noun_ratio(en):
    tokens = [("x", "NOUN")] * 7 + [("Y", "PROPN")] * 3 + [("z", "ADP")] * 190
    f = morphology_features(doc(flat_sentence(tokens)), en)
    assert f["noun_incidence"] == pytest.approx(35.0)
    assert f["proper_noun_ratio"] == pytest.approx(0.3)
    tokens = [("x", "NOUN")] * 10 + [("z", "ADP")] * 190
    assert morphology_features(doc(flat_sentence(tokens)), en)["noun_incidence"] == pytest.approx(50.0)


def test_verbal_feats_and_irregulars(en):
    block = sentence_block([
        ("went", "go", "VERB", 0, "root", "Mood=Ind|Tense=Past|VerbForm=Fin|Person=1,3"),
        ("home", "home", "NOUN", 1, "obj", "Case=Acc"),
    ])
    f = morphology_features(doc(block), en)
    assert f["tense_past_incidence"] == 500.0
    assert f["person_1_incidence"] == 500.0 and f["person_3_incidence"] == 500.0
    assert f["case_marked_incidence"] == 500.0
    assert f["num_irregular_verbs"] == 1


def test_no_voice_features(profiles):
    for p in profiles.values():
        assert not any("voice" in f for f in p.available_features)


# ---------------------------------------------------------------- syntax

OLD_DOG = sentence_block([
    ("The", "the", "DET", 3, "det"), ("old", "old", "ADJ", 3, "amod"), ("dog", "dog", "NOUN", 4, "nsubj"),
    ("barked", "bark", "VERB", 0, "root", "VerbForm=Fin"), ("loudly", "loudly", "ADV", 4, "advmod"),
    (".", ".", "PUNCT", 4, "punct"),
])


def test_left_embeddedness_fixture(en):
    f = syntax_features(doc(OLD_DOG), en)
    assert f["left_embeddedness"] == 3
    assert f["np_descendants_mean"] == 2 and f["np_modifiers_mean"] == 2
    assert f["num_verb_phrases"] == 1


def test_chain_tree_depth():
    d = doc(sentence_block([("a", "a", "X", 2, "dep"), ("b", "b", "X", 3, "dep"),
                            ("c", "c", "X", 4, "dep"), ("d", "d", "X", 0, "root")]))
    assert tree_depth(d.sentences[0]) == 4


def test_propositions_with_advcl_and_ccomp(en):
    d = doc(sentence_block([
        ("I", "i", "PRON", 2, "nsubj"), ("said", "say", "VERB", 0, "root"),
        ("you", "you", "PRON", 4, "nsubj"), ("left", "leave", "VERB", 2, "ccomp"),
        ("when", "when", "SCONJ", 6, "mark"), ("rained", "rain", "VERB", 2, "advcl"),
    ]))
    f = syntax_features(d, en)
    assert f["propositions_per_sentence"] == 3
    assert f["num_subordinate_clauses"] == 2
    assert f["subordinate_depth_mean"] == 1


def test_nested_subordination_depth(en):
    d = doc(sentence_block([
        ("a", "a", "VERB", 0, "root"), ("b", "b", "VERB", 1, "ccomp"), ("c", "c", "VERB", 2, "advcl"),
        ("d", "d", "NOUN", 3, "acl:relcl"),
    ]))
    f = syntax_features(d, en)
    assert f["subordinate_depth_mean"] == 3
    assert f["num_relative_clauses"] == 1


def test_passive_and_negation(en):
    d = doc(sentence_block([
        ("It", "it", "PRON", 4, "nsubj:pass"), ("was", "be", "AUX", 4, "aux:pass"),
        ("not", "not", "PART", 4, "advmod", "Polarity=Neg"),
        ("written", "write", "VERB", 0, "root", "VerbForm=Part|Voice=Pass"), ("never", "never", "ADV", 4, "advmod"),
    ]))
    f = syntax_features(d, en)
    assert f["num_passives"] == 1
    assert f["num_negations"] == 2


def test_conj_between_verbs_is_a_proposition(en):
    d = doc(sentence_block([("ran", "run", "VERB", 0, "root"), ("and", "and", "CCONJ", 3, "cc"),
                            ("hid", "hide", "VERB", 1, "conj"), ("cats", "cat", "NOUN", 1, "conj")]))
    assert syntax_features(d, en)["num_propositions"] == 2


def test_sentence_without_verb_skips_left_embeddedness(en):
    d = doc(flat_sentence(words("Hello/INTJ there/ADV")))
    assert syntax_features(d, en)["left_embeddedness"] is None


# ---------------------------------------------------------------- semantic information

def test_polysemy_and_hypernymy(custom):
    d = doc(flat_sentence(words("dog/NOUN cat/NOUN red/ADJ unknown/NOUN")))
    f = semantic_features(d, custom)
    assert f["polysemy_mean"] == 1.0
    assert f["noun_hypernymy_mean"] == 3.0
    assert f["verb_hypernymy_mean"] is None
    assert f["hypernymy_index"] == 3.0


def test_no_nouns_means_missing_noun_hypernymy(custom):
    d = parse_conllu(sentence_block([("sees", "see", "VERB", 0, "root")]))
    f = semantic_features(d, custom)
    assert f["noun_hypernymy_mean"] is None
    assert f["verb_hypernymy_mean"] == 3
    assert f["polysemy_mean"] == 3


# ---------------------------------------------------------------- referential cohesion

def test_noun_overlap_adjacent(en):
    d = doc(flat_sentence(words("dog/NOUN barks/VERB")), flat_sentence(words("dog/NOUN sleeps/VERB")))
    f = overlap_features(d, en)
    assert f["noun_overlap_adjacent"] == 1.0
    assert f["argument_overlap_adjacent"] == 1.0
    assert f["content_overlap_adjacent_mean"] == pytest.approx(1 / 2)


def test_disjoint_vocabularies(en):
    d = doc(flat_sentence(words("dog/NOUN barks/VERB")), flat_sentence(words("cat/NOUN sleeps/VERB")))
    f = overlap_features(d, en)
    assert all(f[k] == 0.0 for k in f if not k.endswith("_sd"))


def test_three_sentences_one_shared_pair(en):
    d = doc(flat_sentence(words("dog/NOUN")), flat_sentence(words("dog/NOUN")), flat_sentence(words("cat/NOUN")))
    f = overlap_features(d, en)
    assert f["noun_overlap_adjacent"] == 0.5
    assert f["noun_overlap_all"] == pytest.approx(1 / 3)


def test_stem_and_argument_overlap(en):
    a = sentence_block([("run", "run", "NOUN", 0, "root")])
    b = sentence_block([("running", "run", "VERB", 0, "root")])
    f = overlap_features(doc(a, b), en)
    assert f["stem_overlap_adjacent"] == 1.0 and f["noun_overlap_adjacent"] == 0.0
    a = sentence_block([("she", "she", "PRON", 0, "root", "PronType=Prs")])
    f = overlap_features(doc(a, a), en)
    assert f["argument_overlap_adjacent"] == 1.0 and f["noun_overlap_adjacent"] == 0.0


def test_single_sentence_overlap_missing(en):
    f = overlap_features(doc(flat_sentence(words("dog/NOUN"))), en)
    assert set(f.values()) == {None}


# ---------------------------------------------------------------- embedding similarity

def test_identical_adjacent_sentences(custom):
    s = flat_sentence(words("x/NOUN z/NOUN"))
    f = similarity_features(doc(s, s), custom)
    assert f["similarity_adjacent_sentences_mean"] == pytest.approx(1.0, abs=1e-9)
    assert f["similarity_adjacent_paragraphs_mean"] is None


def test_orthogonal_sentences_and_stopwords_ignored(custom):
    f = similarity_features(doc(flat_sentence(words("x/NOUN the/DET")), flat_sentence(words("y/NOUN"))), custom)
    assert f["similarity_adjacent_sentences_mean"] == pytest.approx(0.0, abs=1e-12)
    assert f["similarity_paragraph_pairs_mean"] == pytest.approx(0.0, abs=1e-12)


def test_paragraph_similarity_and_undefined_vectors(custom):
    d = doc(flat_sentence(words("x/NOUN"), newpar=True), flat_sentence(words("q/NOUN")),
            flat_sentence(words("x/NOUN"), newpar=True))
    f = similarity_features(d, custom)
    assert f["similarity_adjacent_paragraphs_mean"] == pytest.approx(1.0)
    # the sentence with no known word is skipped
    assert f["similarity_adjacent_sentences_mean"] is None
    assert f["similarity_paragraph_pairs_mean"] is None


# ---------------------------------------------------------------- connectives

def test_connective_counts(custom):
    tokens = [("because", "SCONJ")] + [("dog", "NOUN")] * 99
    f = connective_features(doc(flat_sentence(tokens)), custom)
    assert f["causal_connectives_incidence"] == pytest.approx(10.0)
    f = connective_features(doc(flat_sentence(words("dog/NOUN"))), custom)
    assert all(v == 0 for v in f.values())
    assert len([k for k in f if k.endswith("_incidence")]) == 6
    f = connective_features(doc(flat_sentence(words("because/SCONJ then/ADV dog/NOUN"))), custom)
    assert f["num_all_connectives"] == 2
