import random
from fractions import Fraction

import pytest

from gaelsem import resources as R
from gaelsem.corpus import CorpusDoc, Token
from gaelsem.distrib import (
    EvaluationError,
    SentenceMeaning,
    build_adjective_vector,
    build_verb_matrix,
    evaluate,
    score_string,
    similarity,
)

from tensor_oracle import meaning_matrix, oracle_meaning

MASTERMIND_EN = "Palpatine is a mastermind who turns Anakin to the dark side of the Force"
MASTERMIND_GA = "Is ceannmáistir a casann Anakin go taobh dorcha na Fórsa é Palpatine"

TABLE_SENTENCES = [
    ("Yoda is a powerful Jedi", "Is Jedi cumhachtach é Yoda"),
    ("Palpatine is an evil Emperor", "Is Impire olc é Palpatine"),
    ("A brave Padmé turns to Anakin", "Casann Padmé cróga chuig Anakin"),
    ("Obi Wan turns to the powerful Yoda", "Casann Obi-Wan go Yoda cumhachtach"),
    ("Padmé is a brave Jedi", "Is Jedi cróga é Padmé"),
    ("Anakin is a Sith Lord", "Is Tiarna Sith é Anakin"),
    ("The Jedi turn to the brave Mace Windu", "Casann na Jedi go Mace Windu cróga"),
]


def test_fixture_models_load_published_values(en, ga):
    assert en.model.nouns["Padmé"] == [5, 0, 0, 2, 0]
    assert en.model.nouns["dark side of the Force"] == [4, 2, 1, 1, 1]
    assert en.model.adjectives["powerful"] == [1, 2, 2, 1, 1]
    assert en.model.adjectives["brave"] == [7, 1, 2, 5, 0]
    assert en.model.pp_heads["to dark side of the Force"] == [3, 0, 1, 0, 0]
    assert en.model.verbs["is"].entries[1] == [5, 4, 1, 1, 3]
    assert en.model.verbs["turn"].entries[4] == [0, 0, 0, 0, 0]
    assert ga.model.verbs["is"].entries == [
        [6, 0, 1, 0, 1], [6, 4, 1, 0, 2], [2, 0, 2, 0, 2], [0, 0, 3, 0, 0], [3, 0, 0, 0, 2]]
    assert ga.model.nouns["taobh dorcha na Fórsa"] == [5, 4, 1, 1, 1]
    assert ga.model.adjectives["olc"] == [2, 5, 2, 1, 3]
    assert ga.model.adjectives["cróga"] == [7, 1, 2, 4, 0]


def test_object_subject_orientation_transposes(ga):
    casann = ga.model.verbs["casann"]
    assert casann.orientation == "object-subject"
    norm = casann.normalized()
    assert norm[0] == [11, 7, 4, 2, 2]
    assert [row[0] for row in casann.entries] == [11, 7, 4, 2, 2]


def test_mastermind_sentence_coefficients(en):
    meaning = R.meaning_of(MASTERMIND_EN, en)
    assert meaning.as_dict() == {(2, 1): 320, (2, 2): 32}


def test_irish_relative_clause_coefficients(ga):
    meaning = R.meaning_of(MASTERMIND_GA, ga)
    assert meaning.as_dict() == {(2, 1): 330, (2, 2): 40}


def test_evil_emperor_coefficients(en):
    meaning = R.meaning_of("Palpatine is an evil Emperor", en)
    assert meaning.as_dict() == {(2, 1): 10, (2, 2): 100, (2, 4): 1, (2, 5): 9}
    assert meaning.length() == 10182


def test_variant_scores(en):
    base = R.meaning_of(MASTERMIND_EN, en)
    mw = R.meaning_of(MASTERMIND_EN.replace("Palpatine", "Mace Windu", 1), en)
    emp = R.meaning_of(MASTERMIND_EN.replace("Palpatine", "The Emperor", 1), en)
    padme = R.meaning_of(MASTERMIND_EN.replace("Palpatine", "Padmé", 1), en)
    assert base.inner(mw) == 103424
    assert mw.length() == 365568
    assert score_string(base, mw) == "0.53"
    assert score_string(base, emp) == "0.99"
    assert base.inner(padme) == 0
    assert score_string(base, padme) == "0"


def test_cross_lingual_pair_numbers(en, ga):
    m_en = R.meaning_of("Palpatine is an evil Emperor", en)
    m_ga = R.meaning_of("Is Impire olc é Palpatine", ga)
    assert m_en.inner(m_ga) == 10174
    assert (m_en.length(), m_ga.length()) == (10182, 10180)
    assert score_string(m_en, m_ga) == "0.99"
    m_y = R.meaning_of("Yoda is a powerful Jedi", en)
    m_c = R.meaning_of("Is Jedi cróga é Palpatine", ga)
    assert m_y.inner(m_c) == 8
    assert (m_y.length(), m_c.length()) == (348, 4)
    assert score_string(m_y, m_c) == "0.21"


def test_appendix_cross_lingual_numbers(en, ga):
    m_en = R.meaning_of(MASTERMIND_EN, en)
    m_ga = R.meaning_of(MASTERMIND_GA, ga)
    assert m_en.inner(m_ga) == 106880
    assert (m_en.length(), m_ga.length()) == (103424, 110500)
    assert score_string(m_en, m_ga, places=3) == "0.999"
    m_emp = R.meaning_of(MASTERMIND_EN.replace("Palpatine", "The Emperor", 1), en)
    assert m_emp.inner(m_ga) == 534400
    assert m_emp.length() == 2593792
    assert score_string(m_emp, m_ga, places=3) == "0.998"


def test_similarity_table(en, ga):
    expected = ["0.94", "0.99", "1", "0.87", "0.94", "0.32", "0.99"]
    got = [score_string(R.meaning_of(e, en), R.meaning_of(g, ga))
           for e, g in TABLE_SENTENCES]
    assert got == expected


def test_similarity_basic_properties(en, ga):
    m1 = R.meaning_of("Yoda is a powerful Jedi", en)
    m2 = R.meaning_of("Is Jedi cróga é Padmé", ga)
    assert similarity(m1, m1) == pytest.approx(1.0)
    assert similarity(m1, m2) == pytest.approx(similarity(m2, m1))
    assert 0.0 <= similarity(m1, m2) <= 1.0
    assert similarity(SentenceMeaning({}), m1) == 0.0


def test_scale_covariance(en):
    base = R.meaning_of("Yoda is a powerful Jedi", en)
    scaled_model_res = R.load_language("en")
    scaled_model_res.model.adjectives["powerful"] = [
        3 * v for v in scaled_model_res.model.adjectives["powerful"]]
    scaled = R.meaning_of("Yoda is a powerful Jedi", scaled_model_res)
    assert scaled.as_dict() == base.scaled(3).as_dict()
    assert similarity(base, scaled) == pytest.approx(1.0)


def test_missing_word_fails_loudly(en):
    broken = R.load_language("en")
    del broken.model.nouns["Yoda"]
    with pytest.raises(EvaluationError) as err:
        R.meaning_of("Yoda is a powerful Jedi", broken)
    assert "Yoda" in str(err.value)


def test_oracle_equivalence_on_all_fixture_sentences(en, ga):
    """Rank-3 tensor contraction agrees with the structured evaluator exactly."""
    texts = [(MASTERMIND_EN, en), (MASTERMIND_GA, ga),
             (MASTERMIND_EN.replace("Palpatine", "Mace Windu", 1), en),
             (MASTERMIND_EN.replace("Palpatine", "The Emperor", 1), en),
             (MASTERMIND_EN.replace("Palpatine", "Padmé", 1), en),
             ("Is Jedi cróga é Palpatine", ga),
             ("Yoda turns to the powerful Jedi", en),
             ("Obi-Wan is a Sith Lord", en),
             ("Is Impire olc é Mace Windu", ga),
             ("Casann Ginearál Grievous go Mace Windu cróga", ga)]
    texts += [(e, en) for e, _ in TABLE_SENTENCES]
    texts += [(g, ga) for _, g in TABLE_SENTENCES]
    for text, res in texts:
        parsed = R.parse_text(text, res)
        structured = meaning_matrix(evaluate(parsed, res.model))
        literal = oracle_meaning(parsed, res.model)
        assert (structured == literal).all(), text


def _toy_doc(sentences):
    return CorpusDoc("en", [[Token(w, w) for w in s.split()] for s in sentences])


def test_single_occurrence_verb_matrix():
    doc = _toy_doc(["alpha grabs beta"])
    nouns = {"alpha": [1, 0, 0, 0, 0], "beta": [0, 1, 0, 0, 0]}
    mat = build_verb_matrix(doc, "grabs", nouns, argument_order="svo")
    expected = [[0] * 5 for _ in range(5)]
    expected[0][1] = 1
    assert mat.entries == expected


def test_verb_without_transitive_use_warns_and_zeroes():
    doc = _toy_doc(["alpha sleeps"])
    nouns = {"alpha": [1, 0, 0, 0, 0]}
    with pytest.warns(UserWarning):
        mat = build_verb_matrix(doc, "sleeps", nouns, argument_order="svo")
    assert all(all(v == 0 for v in row) for row in mat.entries)


def test_adjective_with_no_arguments_is_zero():
    doc = _toy_doc(["alpha grabs beta"])
    nouns = {"alpha": [1, 0, 0, 0, 0], "beta": [0, 1, 0, 0, 0]}
    assert build_adjective_vector(doc, "shiny", nouns) == [0, 0, 0, 0, 0]


def test_adjective_vector_sums_modified_nouns():
    doc = _toy_doc(["shiny alpha grabs beta", "shiny beta runs"])
    nouns = {"alpha": [1, 0, 0, 0, 0], "beta": [0, 1, 0, 0, 0]}
    assert build_adjective_vector(doc, "shiny", nouns) == [1, 1, 0, 0, 0]


def test_meaning_exact_arithmetic():
    m = SentenceMeaning({(1, 1): Fraction(1, 3), (2, 2): Fraction(2, 3)})
    assert m.length() == Fraction(5, 9)
    assert m.inner(SentenceMeaning({(1, 1): Fraction(3, 1)})) == 1


def test_score_string_saturates_below_one():
    # 0.9994... must print 0.99, never 1.00; exact identity still prints 1
    near = SentenceMeaning({(1, 1): 1})
    base = SentenceMeaning({(1, 1): 30, (1, 2): 1})
    assert 0.998 < (near.inner(base)) ** 2 / (near.length() * base.length()) < 1
    assert score_string(near, base) == "0.99"
    assert score_string(base, base) == "1"


def test_random_scale_covariance_property():
    rng = random.Random(11)
    for _ in range(50):
        coeffs = {(rng.randint(1, 5), rng.randint(1, 5)): rng.randint(1, 9)
                  for _ in range(rng.randint(1, 6))}
        m = SentenceMeaning(dict(coeffs))
        lam = rng.randint(2, 7)
        assert similarity(m, m.scaled(lam)) == pytest.approx(1.0)
