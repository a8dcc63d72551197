from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qsupercong import padic
from qsupercong.padic import (
    ConjectureCounterexample,
    PadicRational,
    central_binomial,
    central_binomials,
    conjecture_evidence,
    congruent_mod_prime_power,
    cor1_sum,
    cor2_sum,
    cor4_sum,
    primes_upto,
    valuation,
)
from qsupercong.qseries import S1, S2, term, truncated_sum


def direct_double_sum(p, weight, u):
    """Oracle: the double sum written out with explicit binomials."""
    return sum(Fraction(weight) ** k * sum(u(j) * u(k - j) for j in range(k + 1)) for k in range(p))


def u16(j):
    return comb(2 * j, j) * (6 * j + 1)


def u4(j):
    return comb(2 * j, j) ** 2 * comb(4 * j, 2 * j) * (8 * j + 1)


def test_central_binomial_examples():
    assert central_binomial(0) == 1
    assert central_binomial(1) == 2
    assert central_binomial(5) == 252 == factorial(10) // factorial(5) ** 2
    with pytest.raises(ValueError):
        central_binomial(-1)


def test_recurrence_matches_comb():
    assert central_binomials(80) == [comb(2 * k, k) for k in range(80)]


def test_sum_examples():
    assert cor1_sum(3).value == 3 == 1 - Fraction(7, 2) + Fraction(11, 2)
    assert cor2_sum(3).value == 30
    v5, v7 = cor4_sum(5), cor4_sum(7)
    assert v5.residue(3) == 25 and v7.residue(3) == 49
    assert cor1_sum(3).congruent(0, 1) and cor1_sum(3).congruent(Fraction(-3, 2), 2)
    assert cor2_sum(3).congruent(0, 1) and cor2_sum(3).congruent(3, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_sums_match_direct_oracle(p):
    assert cor1_sum(p).value == direct_double_sum(p, Fraction(-1, 8), u16)
    assert cor2_sum(p).value == direct_double_sum(p, Fraction(1, 4), u16)
    if p > 3:
        assert cor4_sum(p).value == direct_double_sum(p, Fraction(1, 2304), u4)


def test_cor4_k0_term():
    assert u4(0) == 1


def test_sums_need_an_odd_prime():
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            cor1_sum(bad)
    with pytest.raises(ValueError):
        cor4_sum(3)


def test_congruent_examples():
    assert congruent_mod_prime_power(3, Fraction(-3, 2), 3, 2)
    assert congruent_mod_prime_power(Fraction(5, 7), Fraction(5, 7), 3, 40)
    assert not congruent_mod_prime_power(1, 0, 5, 1)
    with pytest.raises(ValueError):
        congruent_mod_prime_power(Fraction(1, 3), 0, 3, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6).filter(bool), st.sampled_from([3, 5, 7, 11]))
def test_valuation_matches_sympy(x, p):
    assert valuation(x, p) == sympy.multiplicity(p, x)
    assert valuation(Fraction(1, x), p) == -sympy.multiplicity(p, x)


def test_valuation_zero_and_residue_errors():
    assert valuation(0, 5) == float("inf")
    with pytest.raises(ValueError):
        PadicRational(Fraction(1, 5), 5).residue(1)
    with pytest.raises(ValueError):
        PadicRational(1, 2)


def test_primes_upto_matches_sympy():
    assert primes_upto(500) == list(sympy.primerange(2, 501))
    assert primes_upto(1) == []


@pytest.mark.parametrize("k", range(7))
def test_q_equals_one_terms(k):
    # at q = 1 the summands reduce to central binomials
    one = Fraction(1)
    assert term(S1, k)(one) == Fraction(-1, 8) ** k * comb(2 * k, k) * (6 * k + 1)
    assert term(S2, k)(one) == Fraction(1, 4) ** k * comb(2 * k, k) * (6 * k + 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_squared_sums_at_q_equal_one(p):
    assert truncated_sum(S1, "squared", p)(Fraction(1)) == cor1_sum(p).value
    assert truncated_sum(S2, "squared", p)(Fraction(1)) == cor2_sum(p).value


@pytest.mark.parametrize("p", [p for p in primes_upto(60) if p > 2])
def test_conjecture_implies_corollary(p):
    for x, target in ((cor1_sum(p), Fraction(-p, 2)), (cor2_sum(p), Fraction(p))):
        if x.congruent(target, 2):
            assert x.congruent(target, 1) and x.congruent(0, 1)


def test_conjecture_evidence_small():
    rows = conjecture_evidence(1, [3])
    assert rows[0].holds and rows[0].residue == rows[0].target_residue == 3
    assert conjecture_evidence(2, [5, 3])[0].p == 3
    with pytest.raises(ValueError):
        conjecture_evidence(3, [3])


def test_counterexample_is_loud(monkeypatch):
    monkeypatch.setattr(padic, "cor2_sum", lambda p: PadicRational(Fraction(p + 1), p))
    with pytest.raises(ConjectureCounterexample) as info:
        conjecture_evidence(2, [3, 5])
    assert [row.holds for row in info.value.table] == [False, False]


@pytest.mark.parametrize("fn", [padic.verify_cor1, padic.verify_cor2, padic.verify_conj1, padic.verify_conj2])
def test_verifiers_report(fn):
    rep = fn(11)
    assert rep.ok and rep.parameters == {"p": 11}
