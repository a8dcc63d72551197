"""Acceptance suite: one test and one PASS/FAIL line per criterion."""

import random

from qsupercong import engine
from qsupercong.numeric import (
    IDENTITY_POINTS,
    central_limit_check,
    root_limit_check,
    root_limit_exact,
    verify_identity,
    zeta_pochhammer_check,
)
from qsupercong.padic import (
    ConjectureCounterexample,
    conjecture_evidence,
    cor1_sum,
    cor2_sum,
    primes_upto,
    verify_cor1,
    verify_cor2,
    verify_cor4,
)
from qsupercong.qseries import (
    S1,
    S2,
    HypothesisViolation,
    lemma1_convolution_check,
    synthetic_lemma_sequence,
)
from qsupercong.reproduce import negative_controls
from qsupercong.report import Outcome

ODD_PRIMES_200 = [p for p in primes_upto(199) if p > 2]


def _summary(reports):
    held = sum(r.ok for r in reports)
    bad = [f"{r.statement_id}{r.parameters}" for r in reports if not r.ok]
    return held, bad


def _bad(bad):
    return f"; not holding: {bad}" if bad else ""


def test_criterion_01_truncated_series_mod_qint(acceptance):
    ns = range(1, 26, 2)
    reports = [engine.verify_eq1(n) for n in ns] + [engine.verify_eq2(n) for n in ns]
    held, bad = _summary(reports)
    acceptance(1, not bad, f"eq1/eq2 == 0 mod [n], odd n <= 25: {held}/{len(reports)} hold{_bad(bad)}")


def test_criterion_02_squared_series_mod_qint(acceptance):
    ns = range(1, 22, 2)
    reports = [engine.verify_thm1(n) for n in ns] + [engine.verify_thm2(n) for n in ns]
    held, bad = _summary(reports)
    acceptance(2, not bad, f"thm1/thm2 == 0 mod [n], odd n <= 21: {held}/{len(reports)} hold{_bad(bad)}")


def test_criterion_03_thm4(acceptance):
    ns = [5, 7, 11, 13]
    try:
        sign = engine.determine_thm4_sign(ns)
    except RuntimeError as exc:
        acceptance(3, False, f"no consistent exponent sign: {exc}")
        return
    reports = [engine.verify_thm4(n, sign) for n in ns]
    held, bad = _summary(reports)
    ok = not bad and sign == engine.THM4_EXPONENT_SIGN
    acceptance(3, ok, f"thm4 mod [n] Phi_n^2, n in {ns}: {held}/4 hold; "
                      f"exactly one exponent sign works: q^({'-' if sign < 0 else '+'}(n-1))")


def test_criterion_04_eq3_specialized(acceptance):
    pairs = [(n, m) for n in (5, 7) for m in (2, 3)]
    reports = [engine.verify_eq3_specialized(n, m) for n, m in pairs]
    valid = [r for r in reports if r.ok]
    fails = [r for r in reports if r.verdict is Outcome.FAILS]
    undefined = [r for r in reports if r.verdict is Outcome.UNDEFINED_GCD]
    partial = [r for r in undefined if r.details.get("coprime_part_verdict") == "holds"]
    empty = [r for r in undefined if r.details.get("coprime_part_verdict") == "empty"]
    # a pair that is not gcd-valid says nothing about the theorem; what can be
    # checked (the collision-free part of the modulus) must hold
    ok = not fails and len(valid) + len(partial) > 0 and len(valid) + len(partial) + len(empty) == 4
    acceptance(4, ok, f"eq3 at a = q^m: {len(valid)}/4 gcd-valid; {len(partial)} hold on the "
                      f"collision-free part, {len(empty)} have none (Phi_1 always collides); {len(fails)} fail")


def test_criterion_05_closed_form(acceptance):
    reports = [engine.verify_s5_closed_form(n, s) for n in (5, 7, 11, 13) for s in (1, -1)]
    held, bad = _summary(reports)
    signs = {"-" if r.details["matched_exponents"][0] < 0 else "+"
             for r in reports if r.details["matched_exponents"]}
    vanish = all(r.details["vanishing"] for r in reports)
    square = all(r.details["square_identity"] for r in reports)
    ok = not bad and len(signs) == 1 and vanish and square
    acceptance(5, ok, f"closed form at a = q^(+-n): {held}/8 exact, exponent q^({'/'.join(sorted(signs))}(n-1)/2), "
                      f"vanishing={vanish}, square identity={square}")


def test_criterion_06_corollaries(acceptance):
    reports = [verify_cor1(p) for p in ODD_PRIMES_200] + [verify_cor2(p) for p in ODD_PRIMES_200]
    reports += [verify_cor4(p) for p in primes_upto(99) if p > 3]
    held, bad = _summary(reports)
    anchors = cor1_sum(3).value == 3 and cor2_sum(3).value == 30
    acceptance(6, not bad and anchors, f"cor1/cor2 mod p (p < 200), cor4 == p^2 mod p^3 (3 < p < 100): "
                                       f"{held}/{len(reports)} hold; anchors 3, 30 ok={anchors}")


def test_criterion_07_conjectures(acceptance):
    try:
        rows = conjecture_evidence(1, ODD_PRIMES_200) + conjecture_evidence(2, ODD_PRIMES_200)
    except ConjectureCounterexample as exc:
        acceptance(7, False, str(exc))
        return
    acceptance(7, all(r.holds for r in rows), f"conj1 == -p/2, conj2 == p mod p^2 for odd p < 200: "
                                              f"{sum(r.holds for r in rows)}/{len(rows)} hold")


def test_criterion_08_identities(acceptance):
    reports = [verify_identity("identity4", q, dps=50, tol=1e-25) for q in IDENTITY_POINTS]
    reports += [verify_identity("identity5", q, dps=50, tol=1e-25) for q in IDENTITY_POINTS]
    reports += [verify_identity("identity6", q, m, dps=50, tol=1e-25) for m in (1, 2) for q in IDENTITY_POINTS]
    held, bad = _summary(reports)
    worst = max(float(r.details["abs_diff"]) for r in reports)
    acceptance(8, not bad, f"series = product at q in {IDENTITY_POINTS}, 50 digits, tol 1e-25: "
                           f"{held}/{len(reports)} hold, worst diff {worst:.1e}")


def test_criterion_09_roots_of_unity(acceptance):
    zeta = [zeta_pochhammer_check(d, tol=1e-30) for d in (3, 5, 7, 9)]
    limits = [root_limit_check(s, d, l, tol=1e-10) for s in (S1, S2) for d in (3, 5) for l in range(5)]
    exact = all(root_limit_exact(s, d, l) for s in (S1, S2) for d in (3, 5) for l in range(5))
    central = central_limit_check(terms=60, tol=1e-8)
    held, bad = _summary(zeta + limits)
    ok = not bad and exact and central.ok
    acceptance(9, ok, f"zeta products = 2 (tol 1e-30) and c(ld) limits (tol 1e-10): {held}/{len(zeta + limits)}; "
                      f"exact in Q(zeta)={exact}; alternating sum err {float(central.alternating_error):.1e}, "
                      f"1/4^l growth exponent {central.growth_exponent:.3f}")


def test_criterion_10_convolution_lemma(acceptance):
    reports = [engine.verify_lemma1(s, d, lmax=4) for s in ("S1", "S2") for d in (3, 5, 7)]
    held, bad = _summary(reports)
    rng = random.Random(10)
    synthetic_ok = 0
    for trial in range(100):
        d = (3, 5, 7)[trial % 3]
        c = synthetic_lemma_sequence(d, 5, rng)
        synthetic_ok += all(lemma1_convolution_check(c, d, l, k) for l in range(5) for k in range(d))
    rejected = 0
    for d in (3, 5, 7):
        c = synthetic_lemma_sequence(d, 2, rng)
        c[d - 1] += 1  # breaks c(k) = 0 for (d-1)/2 < k <= d-1
        try:
            lemma1_convolution_check(c, d, 1, 0)
        except HypothesisViolation:
            rejected += 1
    ok = not bad and synthetic_ok == 100 and rejected == 3
    acceptance(10, ok, f"lemma on root-of-unity data {held}/6, synthetic {synthetic_ok}/100, "
                       f"violations rejected {rejected}/3")


def test_criterion_11_negative_controls(acceptance):
    reports, ok, note = negative_controls(trials=20, seed=2024)
    held = sum(r.ok for r in reports)
    acceptance(11, ok and held == 0, f"{note} (20 per class, 6 classes); {held} wrongly hold")
