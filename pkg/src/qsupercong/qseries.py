"""q-Pochhammer symbols and the summands of the four studied series.

Series identifiers:

* ``S1`` -- sum (-1)^k (q;q^2)_k (-q;q^2)_k^2 / ((q^4;q^4)_k (-q^4;q^4)_k^2) [6k+1] q^(3k^2)
* ``S2`` -- sum (q^2;q^4)_k (-q;q^2)_k^2 / ((q^4;q^4)_k (-q^4;q^4)_k^2) [6k+1] q^(k^2)
* ``S3(m)`` -- sum (aq;q^2)_k (q/a;q^2)_k (q;q^2)_2k
  / ((aq^6;q^6)_k (q^6/a;q^6)_k (q^2;q^2)_2k) [8k+1] q^(2k^2) at ``a = q^m``
* ``S4`` -- the ``a = 1`` member of that family.

Each summand ``c_q(k)`` is a :class:`~qsupercong.cyclotomic.CycloProduct`
(or exactly zero), so terms are built by exponent bookkeeping and expanded
once.  ``a_q(k)`` denotes the convolution ``sum_j c_q(j) c_q(k-j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .bigpoly import Polynomial
from .cyclotomic import CycloProduct
from .ratfunc import FactoredSum, RationalFunction

__all__ = [
    "SeriesId",
    "S1",
    "S2",
    "S3",
    "S4",
    "PochhammerSpec",
    "DegenerateSpecializationError",
    "HypothesisViolation",
    "pochhammer",
    "pochhammer_product",
    "term_factors",
    "term",
    "term_s1",
    "term_s2",
    "term_s3",
    "term_s4",
    "convolution",
    "truncated_sum",
    "lemma1_convolution_check",
    "root_of_unity_sequence",
    "synthetic_lemma_sequence",
]


class DegenerateSpecializationError(ValueError):
    """A denominator factor of a specialized summand is identically zero."""


class HypothesisViolation(ValueError):
    """A sequence handed to the convolution lemma fails its hypotheses."""


@dataclass(frozen=True)
class SeriesId:
    kind: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("S1", "S2", "S3", "S4"):
            raise ValueError(f"unknown series {self.kind!r}")
        if (self.kind == "S3") != (self.m is not None):
            raise ValueError("S3 and only S3 carries the parameter m")

    def __str__(self) -> str:
        return f"S3(m={self.m})" if self.kind == "S3" else self.kind


S1 = SeriesId("S1")
S2 = SeriesId("S2")
S4 = SeriesId("S4")


def S3(m: int) -> SeriesId:
    return SeriesId("S3", m)


@dataclass(frozen=True)
class PochhammerSpec:
    """``(sign * q^r; q^s)_k`` with ``sign`` in ``{+1, -1}``."""

    r: int
    s: int
    k: int
    sign: int = 1

    def __post_init__(self):
        if self.s < 1 or self.k < 0 or self.sign not in (1, -1):
            raise ValueError("PochhammerSpec needs s >= 1, k >= 0, sign = +-1")


def pochhammer_product(spec: PochhammerSpec) -> Optional[CycloProduct]:
    """Factored ``prod_i (1 - sign q^(r + s i))``; ``None`` when a factor is 0."""
    out = CycloProduct.one()
    for i in range(spec.k):
        e = spec.r + spec.s * i
        if spec.sign > 0:
            if e == 0:
                return None
            out = out * CycloProduct.one_minus_qpow(e)
        else:
            if e == 0:
                raise ValueError("(-1; q^s)_k has the non-cyclotomic factor 2")
            out = out * CycloProduct.one_plus_qpow(e)
    return out


def pochhammer(spec: PochhammerSpec):
    """Expanded ``(+-q^r; q^s)_k``: a Polynomial, or a RationalFunction when
    negative exponents occur."""
    cp = pochhammer_product(spec)
    if cp is None:
        return Polynomial(0)
    if cp.is_polynomial():
        return cp.expand()
    return RationalFunction.from_product(cp)


def _poch(r: int, s: int, k: int, sign: int = 1) -> Optional[CycloProduct]:
    return pochhammer_product(PochhammerSpec(r, s, k, sign))


@lru_cache(maxsize=4096)
def term_factors(series: SeriesId, k: int) -> Optional[CycloProduct]:
    """Summand ``c_q(k)`` as a factored product; ``None`` if it vanishes."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    kind = series.kind
    if kind in ("S1", "S2"):
        num = [_poch(1, 2, k, -1), _poch(1, 2, k, -1)]
        num.append(_poch(1, 2, k) if kind == "S1" else _poch(2, 4, k))
        den = [_poch(4, 4, k), _poch(4, 4, k, -1), _poch(4, 4, k, -1)]
        extra = CycloProduct.q_int(6 * k + 1)
        extra = extra * CycloProduct.qpow(3 * k * k if kind == "S1" else k * k)
        if kind == "S1" and k % 2:
            extra = -extra
    else:
        m = 0 if kind == "S4" else series.m
        num = [_poch(m + 1, 2, k), _poch(1 - m, 2, k), _poch(1, 2, 2 * k)]
        den = [_poch(m + 6, 6, k), _poch(6 - m, 6, k), _poch(2, 2, 2 * k)]
        extra = CycloProduct.q_int(8 * k + 1) * CycloProduct.qpow(2 * k * k)
    if any(f is None for f in den):
        raise DegenerateSpecializationError(
            f"{series}: denominator of c_q({k}) contains the factor 1 - q^0")
    if any(f is None for f in num):
        return None
    out = extra
    for f in num:
        out = out * f
    for f in den:
        out = out / f
    return out


def term(series: SeriesId, k: int) -> RationalFunction:
    """Exact summand ``c_q(k)``."""
    cp = term_factors(series, k)
    if cp is None:
        return RationalFunction.from_polynomial(Polynomial(0))
    return RationalFunction.from_product(cp)


def term_s1(k: int) -> RationalFunction:
    return term(S1, k)


def term_s2(k: int) -> RationalFunction:
    return term(S2, k)


def term_s3(k: int, m: int) -> RationalFunction:
    return term(S3(m), k)


def term_s4(k: int) -> RationalFunction:
    return term(S4, k)


def convolution(series: SeriesId, k: int) -> RationalFunction:
    """``a_q(k) = sum_{j=0}^k c_q(j) c_q(k-j)``."""
    acc = FactoredSum()
    for j in range(k + 1):
        a, b = term_factors(series, j), term_factors(series, k - j)
        if a is not None and b is not None:
            acc.add_product(a * b)
    return acc.result()


def truncated_sum(series: SeriesId, mode: str, n: int, reduce_every: int = 4) -> RationalFunction:
    """``sum_{k<n} c_q(k)`` (``mode="plain"``) or ``sum_{k<n} a_q(k)``
    (``mode="squared"``) as one normalized rational function."""
    if n < 1:
        raise ValueError("truncated_sum needs n >= 1")
    if mode == "plain":
        acc = FactoredSum(reduce_every)
        for k in range(n):
            cp = term_factors(series, k)
            if cp is not None:
                acc.add_product(cp)
        return acc.result()
    if mode != "squared":
        raise ValueError(f"unknown mode {mode!r}")
    # sum_{i+j<n} c_i c_j = sum_i c_i * S_{n-1-i}, S_m the plain partial sums
    partial = []
    acc = FactoredSum(reduce_every)
    for k in range(n):
        cp = term_factors(series, k)
        if cp is not None:
            acc.add_product(cp)
        acc.reduce()
        partial.append(RationalFunction._trusted(
            Polynomial.from_array(acc.num), acc.den.expand(), acc.den))
    total = FactoredSum(reduce_every)
    for i in range(n):
        cp = term_factors(series, i)
        if cp is None or partial[n - 1 - i].is_zero:
            continue
        total.add_rf(partial[n - 1 - i], cp)
    return total.result()


# -- convolution lemma -----------------------------------------------------


def _check_hypotheses(c: Sequence, d: int) -> None:
    n = len(c)
    for k in range(min(n, d)):
        if (d - 1) / 2 < k and c[k] != 0:
            raise HypothesisViolation(f"c({k}) must vanish for (d-1)/2 < k <= d-1")
    for idx in range(d, n):
        base, k = divmod(idx, d)
        if c[idx] != c[base * d] * c[k]:
            raise HypothesisViolation(
                f"c({idx}) != c({base * d}) c({k}): ratio condition fails")


def lemma1_convolution_check(c: Sequence, d: int, l: int, k: int) -> bool:
    """Check both convolution identities for the finite sequence ``c``.

    Part (a): ``(sum_{j<d} c(j))^2 == sum_{i<d} sum_{j<=i} c(j) c(i-j)``.
    Part (b): ``sum_{j<=ld+k} c(j) c(ld+k-j)
    == sum_{i<=l} c(id) c((l-i)d) * sum_{j<=k} c(j) c(k-j)``.

    Hypotheses, enforced on every index of ``c``: ``c(k) = 0`` for
    ``(d-1)/2 < k <= d-1`` and ``c(ld+k) = c(ld) c(k)`` for ``0 <= k <= d-1``.
    Entries may be any exact field elements supporting ``+``, ``*`` and ``==``.
    """
    if d < 1 or l < 0 or not 0 <= k < d:
        raise ValueError("need d >= 1, l >= 0, 0 <= k < d")
    if len(c) < max(d, l * d + k + 1):
        raise ValueError("sequence too short for the requested indices")
    _check_hypotheses(c, d)
    zero = c[0] - c[0]
    head = sum((c[j] for j in range(d)), zero)
    part_a = head * head == sum((c[j] * c[i - j] for i in range(d) for j in range(i + 1)), zero)
    idx = l * d + k
    lhs = sum((c[j] * c[idx - j] for j in range(idx + 1)), zero)
    outer = sum((c[i * d] * c[(l - i) * d] for i in range(l + 1)), zero)
    inner = sum((c[j] * c[k - j] for j in range(k + 1)), zero)
    return part_a and lhs == outer * inner


def root_of_unity_sequence(series: SeriesId, d: int, length: int) -> list:
    """``[c_zeta(0), ..., c_zeta(length-1)]`` exactly in ``Q(zeta_d)``."""
    from .cyclotomic import CyclotomicNumber

    out = []
    for k in range(length):
        cp = term_factors(series, k)
        out.append(CyclotomicNumber.from_rational(d, 0) if cp is None else cp.at_root_of_unity(d))
    return out


def synthetic_lemma_sequence(d: int, blocks: int, rng, bound: int = 9) -> list[Fraction]:
    """Random rational sequence of length ``blocks * d`` meeting the lemma's
    hypotheses: ``c(0) = 1``, free ``c(k)`` for ``k <= (d-1)/2``, zeros up to
    ``d-1``, free block heads ``c(ld)`` and ``c(ld+k) = c(ld) c(k)``."""
    def rand():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    head = [Fraction(1)] + [rand() if k <= (d - 1) / 2 else Fraction(0) for k in range(1, d)]
    out = list(head)
    for _ in range(1, blocks):
        lead = rand()
        out.extend(lead * h for h in head)
    return out
