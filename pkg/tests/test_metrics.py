from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from twistkey.metrics import (
    FRIEDMAN_DEFAULT,
    FRIEDMAN_TEXTBOOK,
    EstimateUndefined,
    FriedmanConstants,
    KeyLengthReport,
    TwistSeries,
    argmax_estimate,
    friedman_estimate,
    friedman_from_ic,
    index_of_coincidence,
    remark_ceiling,
    round_value,
    sample_signature,
    twist_family,
    twist_index,
    twist_of_signature,
    twist_plus_plus_series,
    twist_plus_series,
    twist_series,
)
from twistkey.text_core import ALPHABET

from .oracle import ic_pairs, twist_index_exact

letters = st.text(alphabet=ALPHABET, min_size=1, max_size=200)

TABLE2_T = [50, 59, 58, 77, 63, 67, 64, 83, 73, 81, 78, 91, 82, 87, 89, 99, 90]
TABLE3_T = [40, 57, 52, 78, 58, 72, 66, 90]


def test_sample_signature_examples():
    assert sample_signature("AAB") == (0.0,) * 24 + (1 / 3, 2 / 3)
    assert sample_signature(ALPHABET) == (1 / 26,) * 26
    assert sample_signature("DYGA") == (0.0,) * 22 + (0.25,) * 4


def test_sample_signature_empty():
    with pytest.raises(ValueError):
        sample_signature("")


def test_twist_of_signature_examples(cipher_32):
    assert twist_of_signature(sample_signature(ALPHABET)) == pytest.approx(0, abs=1e-15)
    assert twist_of_signature(sample_signature("DYGA")) == 1
    assert round(100 * twist_of_signature(sample_signature(cipher_32))) == 50


def test_twist_index_examples(cipher_32, cipher_34):
    assert round(twist_index(cipher_32, 4)) == 77
    assert twist_index(cipher_32, 23) == 100
    assert round(twist_index(cipher_34, 3), 3) == 52.028


@pytest.mark.parametrize("m", [0, 351])
def test_twist_index_domain(cipher_32, m):
    with pytest.raises(ValueError):
        twist_index(cipher_32, m)


def test_twist_series_examples(cipher_32, cipher_34):
    assert [round(v) for v in twist_series(cipher_32, 17).values] == TABLE2_T
    assert [round(v) for v in twist_series(cipher_34, 8).values] == TABLE3_T
    assert twist_series(ALPHABET, 1).values == (0.0,)


def test_twist_series_beyond_ceiling_is_100(cipher_32):
    # N = 350 = 12 * 29 + 2, and already 100 from m = 23 on this text
    s = twist_series(cipher_32, 40)
    assert s.q == 29
    assert all(s[m] == 100 for m in range(23, 41))


def test_twist_plus_examples(cipher_32, cipher_34):
    tp = twist_plus_series(twist_series(cipher_32, 17))
    assert round(tp[4]) == 21 and round(tp[16]) == 26
    assert 1 not in tp
    assert round(twist_plus_series(twist_series(cipher_34, 8))[8], 3) == 29.582
    assert all(v == 0 for v in twist_plus_series(TwistSeries(100, (7.5,) * 6)).values())
    with pytest.raises(ValueError):
        twist_plus_series(TwistSeries(100, (1.0,)))


def test_twist_plus_plus_examples(cipher_32, cipher_34):
    assert round(twist_plus_plus_series(twist_series(cipher_32, 18))[4]) == 17
    tpp = twist_plus_plus_series(twist_series(cipher_34, 9))
    assert round(tpp[4], 3) == 22.986
    assert round(tpp[8], 3) == 15.006
    arith = twist_plus_plus_series(TwistSeries(100, tuple(3.0 + 2.5 * i for i in range(10))))
    assert all(v == 0 for v in arith.values())
    assert sorted(arith) == list(range(2, 10))
    with pytest.raises(ValueError):
        twist_plus_plus_series(TwistSeries(100, (1.0, 2.0)))


def test_argmax_examples(cipher_32):
    s = twist_series(cipher_32, 26)
    dom = range(2, 26)
    assert argmax_estimate(twist_plus_plus_series(s), dom, "twist_plus_plus").estimate == 4
    assert argmax_estimate(twist_plus_series(s), dom, "twist_plus").estimate == 16
    r = argmax_estimate({2: 5, 3: 9, 4: 9}, [2, 3, 4])
    assert r.estimate == 3
    assert r.estimate in r.domain
    with pytest.raises(ValueError):
        argmax_estimate({2: 1.0}, [])
    with pytest.raises(ValueError):
        argmax_estimate({2: 1.0}, [2, 3])


def test_report_rejects_unknown_method():
    with pytest.raises(ValueError):
        KeyLengthReport("chi2", 3)


def test_twist_family_domain(cipher_32):
    reports = twist_family(cipher_32, range(2, 12))
    assert reports["twist_plus"].estimate == 4
    with pytest.raises(ValueError):
        twist_family(cipher_32, range(1, 5))


def test_index_of_coincidence_examples(cipher_32):
    assert index_of_coincidence("AAAA") == 1
    assert index_of_coincidence("AB") == 0
    assert index_of_coincidence(cipher_32) == pytest.approx(0.0503, abs=5e-5)
    with pytest.raises(ValueError):
        index_of_coincidence("A")


def test_ic_matches_pair_enumeration(cipher_34):
    assert index_of_coincidence(cipher_34) == pytest.approx(float(ic_pairs(cipher_34)), abs=1e-15)


@pytest.mark.parametrize("consts", [FRIEDMAN_DEFAULT, FRIEDMAN_TEXTBOOK])
def test_friedman_anchors(consts):
    for n in (2, 57, 350):
        assert friedman_from_ic(consts.kappa_plain, n, consts) == pytest.approx(1.0, rel=1e-12)
        assert friedman_from_ic(consts.kappa_random, n, consts) == pytest.approx(n, rel=1e-12)


def test_friedman_textbook_constants_example_32(cipher_32):
    # formula evaluated on the IC obtained by pair enumeration: 2.2349...
    ic = float(ic_pairs(cipher_32))
    expected = 0.0265 * 350 / ((0.065 - ic) + 350 * (ic - 0.0385))
    assert expected == pytest.approx(2.2349, abs=1e-4)
    assert friedman_estimate(cipher_32, FRIEDMAN_TEXTBOOK) == pytest.approx(expected, rel=1e-12)
    assert abs(expected - 2.265) <= 0.5


def test_friedman_default_constants_match_quoted_estimates(cipher_32, cipher_34):
    assert friedman_estimate(cipher_32) == pytest.approx(2.265, abs=1e-3)
    assert friedman_estimate(cipher_34) == pytest.approx(6.7797, abs=1e-3)


def test_friedman_undefined_for_uniform_text():
    with pytest.raises(EstimateUndefined):
        friedman_estimate(ALPHABET * 4)
    with pytest.raises(EstimateUndefined):
        friedman_from_ic(0.03, 500, FriedmanConstants(0.066, 0.038))


def test_round_value():
    assert round_value(-10.593, "int") == -11
    assert round_value(52.02774, "3dp") == 52.028
    assert round_value(1.5, "none") == 1.5
    with pytest.raises(ValueError):
        round_value(1.0, "2dp")


@given(st.text(alphabet=ALPHABET, min_size=1, max_size=80))
def test_twist_bounds(text):
    assert 0 <= twist_of_signature(sample_signature(text)) <= 1 + 1e-12
    for m in range(1, len(text) + 1):
        assert 0 <= twist_index(text, m) <= 100 + 1e-9


@given(st.text(alphabet=ALPHABET, min_size=12, max_size=400), st.data())
def test_twist_is_100_above_ceiling(text, data):
    q = remark_ceiling(len(text))
    m = data.draw(st.integers(q + 1, len(text)))
    assert twist_index(text, m) == 100


@given(letters, st.permutations(list(ALPHABET)))
def test_substitution_invariance(text, perm):
    table = str.maketrans(ALPHABET, "".join(perm))
    other = text.translate(table)
    m_max = min(len(text), 12)
    assert twist_series(text, m_max) == twist_series(other, m_max)
    assert sample_signature(text) == sample_signature(other)


@given(st.text(alphabet=ALPHABET, min_size=5, max_size=200))
def test_plus_series_agree_with_definitions(text):
    s = twist_series(text, min(len(text), 15))
    t = s.as_dict()
    for m, v in twist_plus_series(s).items():
        assert v == pytest.approx(t[m] - sum(t[u] for u in range(1, m)) / (m - 1), abs=1e-9)
    for m, v in twist_plus_plus_series(s).items():
        assert v == pytest.approx(t[m] - 0.5 * (t[m - 1] + t[m + 1]), abs=1e-9)


@given(st.text(alphabet=ALPHABET, min_size=1, max_size=60))
@settings(max_examples=150)
def test_twist_matches_exact_oracle(text):
    for m in range(1, len(text) + 1):
        assert abs(twist_index(text, m) - float(twist_index_exact(text, m))) <= 1e-12


def test_twist_matches_oracle_on_examples(cipher_34):
    rng = random.Random(3)
    for m in rng.sample(range(1, 201), 25):
        assert abs(twist_index(cipher_34, m) - float(twist_index_exact(cipher_34, m))) <= 1e-12
