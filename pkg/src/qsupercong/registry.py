"""Statement ids, their verifiers and default parameter ranges."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import gcd
from typing import Callable

from . import engine, numeric, padic
from .qseries import HypothesisViolation, lemma1_convolution_check, synthetic_lemma_sequence
from .report import CongruenceReport, Outcome, Witness

__all__ = ["Statement", "STATEMENTS", "lookup", "UnknownStatement"]


class UnknownStatement(KeyError):
    pass


@dataclass(frozen=True)
class Statement:
    id: str
    fn: Callable[..., CongruenceReport]
    kind: str  # how CLI ranges map to parameter points
    title: str
    exact: bool = True  # q-family statements accept a ``perturb`` argument


def _limits(series: str, d: int = 0, l: int = 0, dps: int = numeric.DEFAULT_DPS) -> CongruenceReport:
    if series == "central":
        start = time.perf_counter()
        res = numeric.central_limit_check(dps=dps)
        details = {"alternating_error": float(res.alternating_error),
                   "growth_exponent": round(res.growth_exponent, 4), "increasing": res.increasing}
        ms = (time.perf_counter() - start) * 1000.0
        desc = "sqrt(6)/3 within 1e-8; 1/4^l series grows like sqrt(l)"
        if res.ok:
            return CongruenceReport("limits", {"series": "central"}, desc, Outcome.HOLDS, ms=ms, details=details)
        return CongruenceReport("limits", {"series": "central"}, desc, Outcome.FAILS,
                                Witness(None, ("central limit",)), ms=ms, details=details)
    sid = numeric.S1 if series == "S1" else numeric.S2
    return numeric.root_limit_check(sid, d, l, dps=dps)


def _lemma1(series: str, d: int, lmax: int = 4, trials: int = 100, seed: int = 0) -> CongruenceReport:
    if series != "synthetic":
        return engine.verify_lemma1(series, d, lmax)
    start = time.perf_counter()
    rng = random.Random(seed)
    bad = []
    for t in range(trials):
        c = synthetic_lemma_sequence(d, lmax + 1, rng)
        if not all(lemma1_convolution_check(c, d, l, k) for l in range(lmax + 1) for k in range(d)):
            bad.append(f"trial {t}")
    # the checker must refuse a sequence that breaks the block structure
    c = synthetic_lemma_sequence(d, 2, rng)
    c[d + d - 1] += 1
    try:
        lemma1_convolution_check(c, d, 1, d - 1)
        bad.append("violating input accepted")
    except HypothesisViolation:
        pass
    params = {"series": "synthetic", "d": d, "trials": trials, "seed": seed}
    ms = (time.perf_counter() - start) * 1000.0
    if not bad:
        return CongruenceReport("lemma1", params, "exact over Q", Outcome.HOLDS, ms=ms)
    return CongruenceReport("lemma1", params, "exact over Q", Outcome.FAILS, Witness(None, tuple(bad)), ms=ms)


def _zeta(d: int, dps: int = numeric.DEFAULT_DPS) -> CongruenceReport:
    return numeric.zeta_pochhammer_check(d, dps=dps, tol=1e-30)


def _identity4(q: float, dps: int = numeric.DEFAULT_DPS) -> CongruenceReport:
    return numeric.verify_identity("identity4", q, dps=dps)


def _identity5(q: float, dps: int = numeric.DEFAULT_DPS) -> CongruenceReport:
    return numeric.verify_identity("identity5", q, dps=dps)


def _identity6(q: float, m: int, dps: int = numeric.DEFAULT_DPS) -> CongruenceReport:
    return numeric.verify_identity("identity6", q, m, dps=dps)


STATEMENTS: dict[str, Statement] = {s.id: s for s in [
    Statement("eq1", engine.verify_eq1, "n_odd", "first truncated series == 0 mod [n]"),
    Statement("eq2", engine.verify_eq2, "n_odd", "second truncated series == 0 mod [n]"),
    Statement("eq3", engine.verify_eq3_specialized, "n_m", "a = q^m family mod [n](1-q^(n+m))(q^m-q^n)"),
    Statement("thm1", engine.verify_thm1, "n_odd", "squared first series == 0 mod [n]"),
    Statement("thm2", engine.verify_thm2, "n_odd", "squared second series == 0 mod [n]"),
    Statement("thm4", engine.verify_thm4, "n_coprime6", "squared a = 1 series mod [n] Phi_n^2"),
    Statement("s5", engine.verify_s5_closed_form, "n_sign", "closed form at a = q^(+-n)"),
    Statement("cor1", padic.verify_cor1, "prime", "q = 1 first double sum == 0 mod p", False),
    Statement("cor2", padic.verify_cor2, "prime", "q = 1 second double sum == 0 mod p", False),
    Statement("cor4", padic.verify_cor4, "prime5", "q = 1 a = 1 double sum == p^2 mod p^3", False),
    Statement("conj1", padic.verify_conj1, "prime", "first double sum == -p/2 mod p^2", False),
    Statement("conj2", padic.verify_conj2, "prime", "second double sum == p mod p^2", False),
    Statement("identity4", _identity4, "q", "first series = product", False),
    Statement("identity5", _identity5, "q", "second series = product", False),
    Statement("identity6", _identity6, "q_m", "a = q^m series = product", False),
    Statement("zeta", _zeta, "d", "Pochhammer products at roots of unity = 2", False),
    Statement("limits", _limits, "limits", "c_zeta(ld) central-binomial limits", False),
    Statement("lemma1", _lemma1, "lemma", "convolution lemma", False),
]}


def lookup(statement: str) -> Statement:
    try:
        return STATEMENTS[statement]
    except KeyError:
        raise UnknownStatement(statement) from None


def coprime6(n: int) -> bool:
    return n > 1 and gcd(n, 6) == 1
