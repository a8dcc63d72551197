"""High-precision floating checks with mpmath.

Series are summed term by term from the defining Pochhammer quotients
(independently of the exact machinery); products are truncated once the
factors are within ``10^-(dps+5)`` of 1.  Root-of-unity limits are the one
place where exact and floating arithmetic meet: the summand is normalized
exactly first, then evaluated at ``zeta``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp

from .cyclotomic import CyclotomicNumber
from .qseries import S1, S2, S3, SeriesId, term, term_factors
from .report import CongruenceReport, Outcome, Witness

__all__ = [
    "DEFAULT_DPS",
    "SeriesDivergenceError",
    "term_numeric",
    "eval_series",
    "eval_product",
    "series_terms_needed",
    "verify_identity",
    "zeta_pochhammer_values",
    "zeta_pochhammer_check",
    "root_limit_value",
    "root_limit_exact",
    "root_limit_check",
    "central_limit_check",
    "IDENTITY_POINTS",
]

DEFAULT_DPS = 50
MAX_TERMS = 5000
IDENTITY_POINTS = (0.05, 0.1, 0.2, 0.3)


class SeriesDivergenceError(ArithmeticError):
    pass


def _qp(a, q, n):
    return mpmath.qp(a, q, n)


def _cplx(x):
    return mpmath.mpmathify(x)


def _qint(n, q):
    if q == 1:
        return mpmath.mpf(n)
    return (1 - q ** n) / (1 - q)


def term_numeric(series: SeriesId, k: int, q):
    """Summand ``c_q(k)`` from its Pochhammer quotient at a numeric ``q``."""
    q = _cplx(q)
    if series.kind in ("S1", "S2"):
        num = _qp(-q, q ** 2, k) ** 2
        num *= _qp(q, q ** 2, k) if series.kind == "S1" else _qp(q ** 2, q ** 4, k)
        den = _qp(q ** 4, q ** 4, k) * _qp(-q ** 4, q ** 4, k) ** 2
        e = 3 * k * k if series.kind == "S1" else k * k
        sign = -1 if series.kind == "S1" and k % 2 else 1
        return sign * num / den * _qint(6 * k + 1, q) * q ** e
    m = 0 if series.kind == "S4" else series.m
    num = _qp(q ** (m + 1), q ** 2, k) * _qp(q ** (1 - m), q ** 2, k) * _qp(q, q ** 2, 2 * k)
    den = _qp(q ** (m + 6), q ** 6, k) * _qp(q ** (6 - m), q ** 6, k) * _qp(q ** 2, q ** 2, 2 * k)
    return num / den * _qint(8 * k + 1, q) * q ** (2 * k * k)


def eval_series(series: SeriesId, q, N: int | None = None, dps: int = DEFAULT_DPS):
    """Partial sum of ``N`` terms, or (``N=None``) summed until the next term
    drops below ``10^-(dps+5)``.  Raises :class:`SeriesDivergenceError` when
    the terms grow instead of decaying."""
    if N is not None and N < 1:
        raise ValueError("N must be positive")
    with mp.workdps(dps + 10):
        q = _cplx(q)
        if abs(q) >= 1:
            raise ValueError("|q| must be < 1")
        eps = mpmath.mpf(10) ** -(dps + 5)
        total, prev = mpmath.mpf(0), None
        limit = N if N is not None else MAX_TERMS
        for k in range(limit):
            t = term_numeric(series, k, q)
            total += t
            if N is None and abs(t) < eps and k > 0:
                break
            if prev is not None and k > 8 and abs(t) > 1 and abs(t) > 2 * abs(prev):
                raise SeriesDivergenceError(f"{series}: terms grow at k={k}")
            prev = t
        else:
            if N is None:
                raise SeriesDivergenceError(f"{series}: no convergence in {MAX_TERMS} terms")
        return +total


def series_terms_needed(series: SeriesId, q, dps: int = DEFAULT_DPS) -> int:
    """Number of terms the tail rule uses at ``q``."""
    with mp.workdps(dps + 10):
        eps = mpmath.mpf(10) ** -(dps + 5)
        for k in range(1, MAX_TERMS):
            if abs(term_numeric(series, k, q)) < eps:
                return k
    raise SeriesDivergenceError(str(series))


def _factors_needed(q, step: int, dps: int) -> int:
    # |q|^(step * N) < 10^-(dps+5)
    lq = -mpmath.log10(abs(q))
    return int(mpmath.ceil((dps + 5) / (step * lq))) + 2


def _inf(a, q, dps: int, N: int | None):
    step_n = N if N is not None else _factors_needed(q, 1, dps) + 1
    return _qp(a, q, step_n)


def eval_product(series: SeriesId, q, N: int | None = None, dps: int = DEFAULT_DPS,
                 product_form: str = "squared"):
    """Infinite-product side truncated to ``N`` factors per Pochhammer symbol
    (``N=None``: enough factors for ``dps`` digits).

    For ``S1`` the default is ``(q^3;q^2) / (-q^4;q^4)^2``; ``product_form=
    "single"`` gives the variant with the first power of ``(-q^4;q^4)``, which
    does not match the series (kept as a control).
    """
    if product_form not in ("squared", "single"):
        raise ValueError("product_form must be 'squared' or 'single'")
    with mp.workdps(dps + 10):
        q = _cplx(q)
        if abs(q) >= 1:
            raise ValueError("|q| must be < 1")
        if q == 0:
            return mpmath.mpf(1)

        def P(a, b):
            return _inf(a, b, dps, N)

        if series.kind == "S1":
            power = 2 if product_form == "squared" else 1
            val = P(q ** 3, q ** 2) / P(-q ** 4, q ** 4) ** power
        elif series.kind == "S2":
            val = P(-q ** 2, q ** 4) ** 2 / ((1 - q) * P(-q ** 4, q ** 4) ** 2)
        else:
            m = 0 if series.kind == "S4" else series.m
            num = P(q, q ** 2) * P(q ** 6, q ** 6) * P(q ** (m + 3), q ** 6) * P(q ** (3 - m), q ** 6)
            den = ((1 - q) * P(q ** 2, q ** 2) * P(q ** 3, q ** 6)
                   * P(q ** (m + 6), q ** 6) * P(q ** (6 - m), q ** 6))
            val = num / den
        return +val


_IDENTITY_SERIES = {"identity4": "S1", "identity5": "S2", "identity6": "S3"}


def verify_identity(statement: str, q: float, m: int | None = None,
                    dps: int = DEFAULT_DPS, tol: float = 1e-25) -> CongruenceReport:
    """Series vs product at one sample point."""
    start = time.perf_counter()
    kind = _IDENTITY_SERIES[statement]
    if kind == "S3":
        if m is None:
            raise ValueError("identity6 needs m")
        series = S3(m)
    else:
        series = S1 if kind == "S1" else S2
    params = {"q": q} if m is None else {"q": q, "m": m}
    with mp.workdps(dps):
        diff = abs(eval_series(series, q, dps=dps) - eval_product(series, q, dps=dps))
    details = {"abs_diff": mpmath.nstr(diff, 5), "dps": dps}
    ms = (time.perf_counter() - start) * 1000.0
    desc = f"|series - product| < {tol:g}"
    if diff < tol:
        return CongruenceReport(statement, params, desc, Outcome.HOLDS, ms=ms, details=details)
    return CongruenceReport(statement, params, desc, Outcome.FAILS,
                            Witness(None, (f"diff={details['abs_diff']}",)), ms=ms, details=details)


# -- roots of unity ---------------------------------------------------------


def zeta_pochhammer_values(d: int, dps: int = DEFAULT_DPS) -> list:
    """``(-z;z)_d, (-z^2;z^2)_d, (-z;z^2)_d, (-z^4;z^4)_d`` at ``z = e^(2 pi i/d)``."""
    with mp.workdps(dps + 10):
        z = mpmath.expjpi(mpmath.mpf(2) / d)
        return [_qp(-z, z, d), _qp(-z ** 2, z ** 2, d), _qp(-z, z ** 2, d), _qp(-z ** 4, z ** 4, d)]


def zeta_pochhammer_check(d: int, dps: int = DEFAULT_DPS, tol: float | None = None) -> CongruenceReport:
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and >= 3")
    start = time.perf_counter()
    tol = tol if tol is not None else 10.0 ** -(dps - 10)
    vals = zeta_pochhammer_values(d, dps)
    with mp.workdps(dps):
        errs = [abs(v - 2) for v in vals]
    worst = max(errs)
    details = {"max_error": mpmath.nstr(worst, 5)}
    ms = (time.perf_counter() - start) * 1000.0
    desc = f"all four = 2 within {tol:g}"
    if worst < tol:
        return CongruenceReport("zeta", {"d": d}, desc, Outcome.HOLDS, ms=ms, details=details)
    labels = ("(-z;z)", "(-z^2;z^2)", "(-z;z^2)", "(-z^4;z^4)")
    bad = tuple(lbl for lbl, e in zip(labels, errs) if e >= tol)
    return CongruenceReport("zeta", {"d": d}, desc, Outcome.FAILS, Witness(None, bad),
                            ms=ms, details=details)


def _binomial_limit(series: SeriesId, l: int) -> Fraction:
    ratio = Fraction(-1, 8) if series.kind == "S1" else Fraction(1, 4)
    return ratio ** l * comb(2 * l, l)


def root_limit_value(series: SeriesId, d: int, l: int, dps: int = DEFAULT_DPS):
    """``c_q(ld)`` at ``q = e^(2 pi i/d)``: exact normalization, then numeric
    substitution with precision raised to cover the coefficient sizes."""
    cp = term_factors(series, l * d)
    if cp is None:
        return mpmath.mpc(0)
    if cp.exps.get(d, 0) < 0:
        raise ZeroDivisionError(f"{series}: c_q({l * d}) has a pole at primitive {d}-th roots")
    r = term(series, l * d)
    size = max(len(str(abs(c))) for c in r.num.coeffs + r.den.coeffs)
    with mp.workdps(dps + size + 10):
        z = mpmath.expjpi(mpmath.mpf(2) / d)
        val = mpmath.polyval(list(reversed(r.num.coeffs)), z) / mpmath.polyval(list(reversed(r.den.coeffs)), z)
    with mp.workdps(dps):
        return +val


def root_limit_exact(series: SeriesId, d: int, l: int) -> bool:
    """Same comparison done exactly in ``Q(zeta_d)``."""
    cp = term_factors(series, l * d)
    val = CyclotomicNumber.from_rational(d, 0) if cp is None else cp.at_root_of_unity(d)
    return val == CyclotomicNumber.from_rational(d, _binomial_limit(series, l))


def root_limit_check(series: SeriesId, d: int, l: int, dps: int = DEFAULT_DPS,
                     tol: float = 1e-10) -> CongruenceReport:
    if series.kind not in ("S1", "S2"):
        raise ValueError("root limits are stated for S1 and S2")
    if d < 3 or d % 2 == 0 or l < 0:
        raise ValueError("need odd d >= 3 and l >= 0")
    start = time.perf_counter()
    target = _binomial_limit(series, l)
    val = root_limit_value(series, d, l, dps)
    with mp.workdps(dps):
        err = abs(val - mpmath.mpf(target.numerator) / target.denominator)
    params = {"series": str(series), "d": d, "l": l}
    details = {"target": str(target), "error": mpmath.nstr(err, 5)}
    ms = (time.perf_counter() - start) * 1000.0
    desc = f"|c(ld) - limit| < {tol:g}"
    if err < tol:
        return CongruenceReport("limits", params, desc, Outcome.HOLDS, ms=ms, details=details)
    return CongruenceReport("limits", params, desc, Outcome.FAILS,
                            Witness(None, (f"value {mpmath.nstr(val, 12)}",)), ms=ms, details=details)


@dataclass(frozen=True)
class CentralLimitResult:
    alternating_sum: object
    alternating_error: object
    growth_exponent: float
    increasing: bool
    ok: bool


def central_limit_check(terms: int = 60, growth_terms: int = 10_000,
                        dps: int = DEFAULT_DPS, tol: float = 1e-8) -> CentralLimitResult:
    """``sum (-1/8)^l C(2l,l) -> sqrt(6)/3``, and the ``1/4^l`` series diverges.

    Divergence is checked through the growth law: partial sums are strictly
    increasing and ``log S_L`` grows with slope ~1/2 in ``log L`` (the terms
    behave like ``1/sqrt(pi l)``), so ``S_L`` passes every fixed bound.
    """
    with mp.workdps(dps):
        alt, c = mpmath.mpf(0), mpmath.mpf(1)
        for l in range(terms):
            alt += c
            c *= mpmath.mpf(-2 * (2 * l + 1)) / (8 * (l + 1))
        err = abs(alt - mpmath.sqrt(6) / 3)
    # 1/4^l C(2l,l) in floats is fine: terms are in (0, 1]
    s, t, prev, increasing = 0.0, 1.0, -1.0, True
    marks = {}
    for l in range(growth_terms):
        s += t
        increasing &= s > prev
        prev = s
        t *= (2 * l + 1) / (2 * l + 2)
        if l + 1 in (growth_terms // 10, growth_terms):
            marks[l + 1] = s
    lo, hi = sorted(marks)
    slope = (mpmath.log(marks[hi]) - mpmath.log(marks[lo])) / (mpmath.log(hi) - mpmath.log(lo))
    slope = float(slope)
    ok = err < tol and increasing and abs(slope - 0.5) < 0.02
    return CentralLimitResult(alt, err, slope, increasing, ok)
