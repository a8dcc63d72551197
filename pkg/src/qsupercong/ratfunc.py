"""Normalized rational functions in Z(q) and congruences modulo polynomials.

A :class:`RationalFunction` is always kept in lowest terms with a
denominator of positive leading coefficient and jointly stripped integer
content.  When the denominator is known to be a product of ``q`` and
cyclotomic polynomials (true for every object the engine builds), its
factorization rides along in ``den_factors`` and normalization reduces to
testing the numerator against each ``Phi_d``.  Otherwise the subresultant gcd
does the work.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .bigpoly import (
    ONE,
    ZERO,
    Polynomial,
    poly_content,
    poly_divrem,
    poly_exact_div,
    poly_gcd,
)
from .cyclotomic import (
    CycloProduct,
    apply_product,
    cyclotomic_poly,
    euler_phi,
    phi_valuation,
)

__all__ = [
    "RationalFunction",
    "FactoredSum",
    "Verdict",
    "CongruenceCheck",
    "rf_normalize",
    "rf_add",
    "rf_sub",
    "rf_mul",
    "rf_div",
    "rf_congruent",
    "rf_congruent_by_factors",
    "cyclotomic_factors",
]


def _arr(p: Polynomial) -> np.ndarray:
    return p.to_array()


def _add_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    return out


def _scale(a: np.ndarray, cp: CycloProduct) -> np.ndarray:
    # multiply coefficient array by a polynomial CycloProduct
    if not len(a):
        return a
    a = apply_product(a, cp.exps)
    if cp.sign < 0:
        a = -a
    if cp.qexp:
        a = np.concatenate([np.zeros(cp.qexp, dtype=object), a])
    return a


class RationalFunction:
    """Element of Z(q) in canonical lowest terms."""

    __slots__ = ("num", "den", "den_factors")

    def __init__(self, num, den=ONE):
        r = rf_normalize(_as_poly(num), _as_poly(den))
        self.num, self.den, self.den_factors = r.num, r.den, r.den_factors

    @classmethod
    def _trusted(cls, num: Polynomial, den: Polynomial,
                 den_factors: CycloProduct | None) -> "RationalFunction":
        r = object.__new__(cls)
        r.num, r.den, r.den_factors = num, den, den_factors
        return r

    @classmethod
    def from_polynomial(cls, p: Polynomial, qshift: int = 0) -> "RationalFunction":
        """``p * q**qshift`` (``qshift`` may be negative)."""
        if qshift >= 0:
            return cls._trusted(p.shift(qshift), ONE, CycloProduct.one())
        return _reduce(_arr(p), CycloProduct.qpow(-qshift))

    @classmethod
    def from_product(cls, cp: CycloProduct) -> "RationalFunction":
        """Expand a factored product; lowest terms hold by construction."""
        den = cp.denominator()
        return cls._trusted(cp.numerator().expand(), den.expand(), den)

    @property
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Polynomial)):
            other = RationalFunction.from_polynomial(_as_poly(other))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        return rf_add(self, _as_rf(other))

    __radd__ = __add__

    def __sub__(self, other):
        return rf_sub(self, _as_rf(other))

    def __rsub__(self, other):
        return rf_sub(_as_rf(other), self)

    def __mul__(self, other):
        return rf_mul(self, _as_rf(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_div(self, _as_rf(other))

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den, self.den_factors)

    def __pow__(self, k: int):
        if k < 0:
            return rf_div(RationalFunction.from_polynomial(ONE), self ** (-k))
        result = RationalFunction.from_polynomial(ONE)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Exact evaluation at an int or Fraction."""
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return Fraction(self.num(x)) / Fraction(d)

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial(x)
    return Polynomial(x)


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, CycloProduct):
        return RationalFunction.from_product(x)
    return RationalFunction.from_polynomial(_as_poly(x))


# -- normalization ---------------------------------------------------------


def rf_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Lowest terms: coprime parts, content stripped jointly, ``lc(den) > 0``."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RationalFunction._trusted(ZERO, ONE, CycloProduct.one())
    g = poly_gcd(num, den)
    if g != ONE:
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
    c = gcd(poly_content(num), poly_content(den))
    if den.lc < 0:
        c = -c
    if c != 1:
        num = Polynomial._raw(tuple(x // c for x in num.coeffs))
        den = Polynomial._raw(tuple(x // c for x in den.coeffs))
    factors = None
    if den == ONE:
        factors = CycloProduct.one()
    elif den.coeffs[-1] == 1 and not any(den.coeffs[:-1]):
        factors = CycloProduct.qpow(den.degree)
    return RationalFunction._trusted(num, den, factors)


def _reduce(num: np.ndarray, den: CycloProduct) -> RationalFunction:
    """Lowest terms of ``num / den`` where ``den`` is a factored monic product."""
    n = len(num)
    while n and not num[n - 1]:
        n -= 1
    num = num[:n]
    if not n:
        return RationalFunction._trusted(ZERO, ONE, CycloProduct.one())
    exps = dict(den.exps)
    for d in sorted(exps):
        v, num = phi_valuation(num, d, cap=exps[d])
        exps[d] -= v
    low = 0
    while low < den.qexp and not num[low]:
        low += 1
    num = num[low:]
    reduced = CycloProduct(1, den.qexp - low, exps)
    return RationalFunction._trusted(Polynomial.from_array(num), reduced.expand(), reduced)


def _common(a: RationalFunction, b: RationalFunction):
    lcm = a.den_factors.lcm(b.den_factors)
    return lcm, lcm / a.den_factors, lcm / b.den_factors


# -- field operations ------------------------------------------------------


def rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.den_factors is not None and b.den_factors is not None:
        lcm, fa, fb = _common(a, b)
        num = _add_arrays(_scale(_arr(a.num), fa), _scale(_arr(b.num), fb))
        return _reduce(num, lcm)
    return rf_normalize(a.num * b.den + b.num * a.den, a.den * b.den)


def rf_sub(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return rf_add(a, -b)


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.is_zero or b.is_zero:
        return RationalFunction._trusted(ZERO, ONE, CycloProduct.one())
    if a.den_factors is not None and b.den_factors is not None:
        num = _arr(a.num * b.num)
        return _reduce(num, a.den_factors * b.den_factors)
    return rf_normalize(a.num * b.num, a.den * b.den)


def rf_div(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if b.is_zero:
        raise ZeroDivisionError("division by the zero rational function")
    return rf_normalize(a.num * b.den, a.den * b.num)


class FactoredSum:
    """Accumulator for sums whose terms have cyclotomic denominators.

    Terms are brought to a running common denominator without reducing;
    :meth:`reduce` cancels common factors and is called every
    ``reduce_every`` additions (0 disables periodic reduction).
    """

    def __init__(self, reduce_every: int = 4):
        self.num = np.zeros(0, dtype=object)
        self.den = CycloProduct.one()
        self.reduce_every = reduce_every
        self._pending = 0

    def add(self, num: np.ndarray, den: CycloProduct) -> None:
        lcm = self.den.lcm(den)
        self.num = _add_arrays(_scale(self.num, lcm / self.den), _scale(num, lcm / den))
        self.den = lcm
        self._pending += 1
        if self.reduce_every and self._pending >= self.reduce_every:
            self.reduce()

    def add_product(self, cp: CycloProduct) -> None:
        start = np.empty(1, dtype=object)
        start[0] = 1
        self.add(_scale(start, cp.numerator()), cp.denominator())

    def add_rf(self, r: RationalFunction, times: CycloProduct | None = None) -> None:
        """Add ``r * times`` (``r`` must carry a factored denominator)."""
        if r.den_factors is None:
            raise ValueError("FactoredSum needs factored denominators")
        num, den = _arr(r.num), r.den_factors
        if times is not None:
            num = _scale(num, times.numerator())
            den = den * times.denominator()
        self.add(num, den)

    def reduce(self) -> None:
        r = _reduce(self.num, self.den)
        self.num, self.den = _arr(r.num), r.den_factors
        self._pending = 0

    def result(self) -> RationalFunction:
        return _reduce(self.num, self.den)


# -- congruences -----------------------------------------------------------


class Verdict(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class CongruenceCheck:
    """Outcome of ``A == B (mod P)``.

    ``remainder`` is the remainder of the reduced numerator of ``A - B``
    modulo ``P``; ``common_factor`` is ``gcd(P, den(A - B))`` when that is not
    a unit.
    """

    verdict: Verdict
    remainder: Polynomial = field(default=ZERO)
    common_factor: Polynomial | None = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.TRUE


def rf_congruent(A: RationalFunction, B: RationalFunction, P: Polynomial) -> CongruenceCheck:
    """Decide ``A == B (mod P)`` in Z(q).

    Holds iff, with ``A - B = A1/A2`` in lowest terms, ``P`` divides ``A1`` in
    Z[q] and ``gcd(P, A2) = 1``.  A failed gcd condition yields
    ``Verdict.UNDEFINED`` rather than ``FALSE``.
    """
    if P.is_constant():
        raise ValueError("modulus must be a nonconstant polynomial")
    diff = rf_sub(_as_rf(A), _as_rf(B))
    if diff.is_zero:
        return CongruenceCheck(Verdict.TRUE)
    g = poly_gcd(P, diff.den)
    quo, rem = poly_divrem(diff.num, P)
    divides = not rem and quo.is_integral()
    if g != ONE:
        return CongruenceCheck(Verdict.UNDEFINED, rem, g)
    return CongruenceCheck(Verdict.TRUE if divides else Verdict.FALSE, rem)


def cyclotomic_factors(P: Polynomial, max_index: int | None = None) -> list[tuple[int, int]]:
    """Factor a product of cyclotomic polynomials (and ``+-q^k``) as
    ``[(d, e), ...]``; raises ValueError when ``P`` has another factor."""
    arr = _arr(P.shift(-P.low_order()))
    if arr[-1] < 0:
        arr = -arr
    out = []
    deg = len(arr) - 1
    limit = max_index if max_index is not None else max(2, 2 * deg * deg + 2)
    d = 1
    while len(arr) > 1 and d <= limit:
        if euler_phi(d) > len(arr) - 1:
            d += 1
            continue
        v, arr = phi_valuation(arr, d)
        if v:
            out.append((d, v))
        d += 1
    if len(arr) != 1 or abs(arr[0]) != 1:
        raise ValueError("modulus is not a product of cyclotomic polynomials")
    return out


def rf_congruent_by_factors(A: RationalFunction, B: RationalFunction,
                            factors: Sequence[tuple[int, int]]) -> list[tuple[str, CongruenceCheck]]:
    """Per-factor diagnostic: ``A == B (mod Phi_d**e)`` for each ``(d, e)``."""
    out = []
    for d, e in factors:
        P = cyclotomic_poly(d) ** e
        label = f"Phi_{d}" + (f"^{e}" if e > 1 else "")
        out.append((label, rf_congruent(A, B, P)))
    return out
