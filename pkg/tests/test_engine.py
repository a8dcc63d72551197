import time

import pytest

from qsupercong import engine
from qsupercong.bigpoly import Polynomial
from qsupercong.cyclotomic import CycloProduct, cyclotomic_poly, jacobi_symbol, q_integer
from qsupercong.qseries import S4, truncated_sum
from qsupercong.ratfunc import RationalFunction, rf_congruent
from qsupercong.report import Outcome

ZERO_RF = RationalFunction(Polynomial(0))


@pytest.mark.parametrize("fn", [engine.verify_eq1, engine.verify_eq2,
                                engine.verify_thm1, engine.verify_thm2])
def test_trivial_modulus(fn):
    rep = fn(1)
    assert rep.verdict is Outcome.HOLDS
    assert rep.note == "trivial modulus"
    assert rep.modulus_description == "1"


@pytest.mark.parametrize("fn,n", [(engine.verify_eq1, 3), (engine.verify_eq1, 15),
                                  (engine.verify_eq2, 3), (engine.verify_eq2, 15),
                                  (engine.verify_thm1, 3), (engine.verify_thm1, 9),
                                  (engine.verify_thm2, 3), (engine.verify_thm2, 9)])
def test_zero_mod_qint_examples(fn, n):
    rep = fn(n)
    assert rep.verdict is Outcome.HOLDS and rep.witness is None


def test_even_n_rejected():
    with pytest.raises(ValueError):
        engine.verify_eq1(4)
    with pytest.raises(ValueError):
        engine.verify_thm4(9)
    with pytest.raises(ValueError):
        engine.verify_s5_closed_form(5, 2)


@pytest.mark.parametrize("n", [5, 7])
def test_thm4_examples(n):
    assert engine.verify_thm4(n).verdict is Outcome.HOLDS


def test_thm4_zero_right_side_fails():
    rep = engine.verify_thm4(5, rhs_override=ZERO_RF)
    assert rep.verdict is Outcome.FAILS
    assert rep.witness.digest and not rep.witness.remainder.is_zero
    assert rep.witness.offending == ("Phi_5^3",)  # [5] Phi_5^2 = Phi_5^3


def test_thm4_sign_is_determined():
    assert engine.determine_thm4_sign([5, 7, 11]) == engine.THM4_EXPONENT_SIGN == -1
    assert engine.verify_thm4(5, exponent_sign=1).verdict is Outcome.FAILS


def test_thm4_modulus_canonicalization():
    n = 7
    lhs = truncated_sum(S4, "squared", n)
    rhs = RationalFunction.from_product(CycloProduct.qpow(-(n - 1)) * CycloProduct.q_int(n) ** 2)
    orderings = [
        q_integer(n) * cyclotomic_poly(n) ** 2,
        cyclotomic_poly(n) * q_integer(n) * cyclotomic_poly(n),
        -(cyclotomic_poly(n) ** 2 * q_integer(n)),
    ]
    assert len({rf_congruent(lhs, rhs, P).verdict for P in orderings}) == 1
    assert rf_congruent(lhs, rhs, orderings[0])
    # units -q^e of the modulus are stripped before deciding
    P = CycloProduct(-1, 3, {n: 3})
    rep = engine._decide("thm4", {"n": n}, lhs, rhs, P, time.perf_counter())
    assert rep.verdict is Outcome.HOLDS and rep.modulus_description == "Phi_7^3"


@pytest.mark.parametrize("fn,n", [(engine.verify_eq1, 15), (engine.verify_thm2, 9)])
def test_factor_diagnostic_agrees(fn, n):
    rep = fn(n)
    from qsupercong.qseries import S1, S2
    series, mode = {"verify_eq1": (S1, "plain"), "verify_thm2": (S2, "squared")}[fn.__name__]
    lhs = truncated_sum(series, mode, n)
    parts = engine.factor_diagnostic(lhs, ZERO_RF, CycloProduct.q_int(n))
    assert all(c for _, c in parts) == rep.ok


@pytest.mark.parametrize("fn,n", [(engine.verify_eq1, 7), (engine.verify_eq2, 9),
                                  (engine.verify_thm1, 5), (engine.verify_thm2, 7)])
@pytest.mark.parametrize("perturb", [(0, 1), (3, -2), (17, 1)])
def test_perturbation_fails(fn, n, perturb):
    rep = fn(n, perturb=perturb)
    assert rep.verdict is Outcome.FAILS
    assert rep.witness.offending and rep.parameters["perturb"] == list(perturb)


def test_perturb_sum_changes_one_coefficient():
    r = truncated_sum(S4, "plain", 5)
    p = engine.perturb_sum(r, 2, 3)
    assert (p - r) * RationalFunction(r.den) == RationalFunction(Polynomial([0, 0, 3]))


# -- a = q^m ---------------------------------------------------------------


def test_eq3_trivial_modulus():
    assert engine.verify_eq3_specialized(1, 2).verdict is Outcome.HOLDS


def test_eq3_degenerate_and_vanishing_modulus():
    with pytest.raises(ValueError):
        engine.verify_eq3_specialized(5, 5)
    with pytest.raises(ValueError):
        engine.verify_eq3_specialized(5, 6)


@pytest.mark.parametrize("n,m,part", [(5, 2, "Phi_3"), (7, 2, "Phi_3*Phi_9"), (5, 3, "1"), (7, 3, "1")])
def test_eq3_collisions_reported(n, m, part):
    rep = engine.verify_eq3_specialized(n, m)
    # Phi_1 divides the modulus and the specialized denominators, so the
    # full-modulus test is not meaningful; the collision-free part must hold
    assert rep.verdict is Outcome.UNDEFINED_GCD
    assert rep.details["colliding"][0].startswith("Phi_1")
    assert rep.details["coprime_part"] == part
    assert rep.details["coprime_part_verdict"] == ("empty" if part == "1" else "holds")
    assert 1 in engine.eq3_collisions(n, m)


def test_eq3_perturbed_coprime_part_fails():
    rep = engine.verify_eq3_specialized(7, 2, perturb=(0, 1))
    assert rep.verdict is Outcome.FAILS


@pytest.mark.parametrize("n", [5, 7, 11, 13])
@pytest.mark.parametrize("sign", [1, -1])
def test_s5_closed_form(n, sign):
    rep = engine.verify_s5_closed_form(n, sign)
    assert rep.verdict is Outcome.HOLDS
    assert rep.details["matched_exponents"] == [-(n - 1) // 2]
    assert rep.details["vanishing"] and rep.details["square_identity"]


def test_s5_trivial_and_jacobi_examples():
    assert engine.verify_s5_closed_form(1, 1).ok
    assert jacobi_symbol(-3, 5) == -1 and jacobi_symbol(-3, 7) == 1


@pytest.mark.parametrize("series", ["S1", "S2"])
def test_lemma1_on_root_of_unity_values(series):
    assert engine.verify_lemma1(series, 5, lmax=3).ok


# -- scanning ---------------------------------------------------------------


def test_scan_thm1_range():
    reps = engine.scan("thm1", [{"n": n} for n in range(1, 22, 2)])
    assert len(reps) == 11 and all(r.ok for r in reps)
    assert [r.parameters["n"] for r in reps] == list(range(1, 22, 2))


def test_scan_thm4():
    reps = engine.scan(engine.verify_thm4, [{"n": n} for n in (5, 7, 11, 13)])
    assert [r.verdict for r in reps] == [Outcome.HOLDS] * 4


def test_scan_empty():
    assert engine.scan("eq1", []) == []


def test_scan_parallel_matches_sequential():
    points = [{"n": n} for n in (9, 3, 7, 1, 5)]
    seq = engine.scan("eq2", points)
    par = engine.scan("eq2", points, jobs=2)
    strip = lambda r: {k: v for k, v in r.to_record().items() if k != "ms"}
    assert [strip(r) for r in par] == [strip(r) for r in seq]
    assert [r.parameters["n"] for r in par] == [9, 3, 7, 1, 5]
