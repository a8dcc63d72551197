"""Cyclotomic polynomials, q-integers and the arithmetic built on them.

Besides the number-theoretic helpers this module provides two carriers used
throughout the package:

* :class:`CycloProduct` -- an element ``sign * q**e * prod_d Phi_d(q)**e_d``
  of the multiplicative group generated by ``-1``, ``q`` and the cyclotomic
  polynomials.  Every q-Pochhammer quotient of the form ``(+-q^r; q^s)_k`` is
  such a product, so products and quotients reduce to exponent arithmetic.
* :class:`CyclotomicNumber` -- exact elements of the field Q(zeta_d).

The array kernels (``mul_one_minus``, ``div_one_minus``, ...) act on numpy
object arrays of Python ints and are the hot path of the engine.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping

import numpy as np

from .bigpoly import (
    ONE,
    ExactDivisionError,
    Polynomial,
    _divrem_unit,
    _trim,
    poly_exact_div,
)

__all__ = [
    "q_integer",
    "cyclotomic_poly",
    "divisors",
    "factorize",
    "euler_phi",
    "mobius",
    "jacobi_symbol",
    "CycloProduct",
    "CyclotomicNumber",
    "phi_divides",
    "phi_valuation",
    "mul_one_minus",
    "div_one_minus",
    "apply_product",
    "divide_phi",
]


def q_integer(n: int) -> Polynomial:
    """``[n] = 1 + q + ... + q^(n-1)``; ``[0] = 0``."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return Polynomial._raw((1,) * n)


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors needs n >= 1")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as ``((p, e), ...)`` by trial division."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r -= r // p
    return r


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol ``(a/n)`` for odd ``n >= 1`` via quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi_symbol needs a positive odd modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_phi_cache: dict[int, Polynomial] = {}
_phi_lock = threading.Lock()


def cyclotomic_poly(n: int) -> Polynomial:
    """``Phi_n(q)`` via ``(q^n - 1) / prod_{d | n, d < n} Phi_d``, memoized."""
    if n < 1:
        raise ValueError("cyclotomic_poly needs n >= 1")
    hit = _phi_cache.get(n)
    if hit is not None:
        return hit
    num = Polynomial._raw((-1,) + (0,) * (n - 1) + (1,))
    den = ONE
    for d in divisors(n)[:-1]:
        den = den * cyclotomic_poly(d)
    phi = poly_exact_div(num, den)
    with _phi_lock:
        _phi_cache.setdefault(n, phi)
    return phi


# -- array kernels ---------------------------------------------------------


def _obj(values) -> np.ndarray:
    a = np.empty(len(values), dtype=object)
    a[:] = list(values)
    return a


def mul_one_minus(a: np.ndarray, j: int, times: int = 1) -> np.ndarray:
    """``a * (1 - q^j)**times`` for ``j >= 1``."""
    for _ in range(times):
        out = np.zeros(len(a) + j, dtype=object)
        out[: len(a)] = a
        out[j:] -= a
        a = out
    return a


def div_one_minus(a: np.ndarray, j: int, times: int = 1) -> np.ndarray:
    """Exact quotient ``a / (1 - q^j)**times``; raises ExactDivisionError."""
    for _ in range(times):
        n = len(a)
        if n <= j:
            if n and any(a):
                raise ExactDivisionError(f"not divisible by 1 - q^{j}")
            return np.zeros(0, dtype=object)
        rows = -(-n // j)
        pad = np.zeros(rows * j, dtype=object)
        pad[:n] = a
        run = np.cumsum(pad.reshape(rows, j), axis=0).reshape(-1)
        if any(run[n - j:n]):
            raise ExactDivisionError(f"not divisible by 1 - q^{j}")
        a = run[: n - j]
    return a


@lru_cache(maxsize=None)
def _binomial_exponents(d: int) -> tuple[tuple[int, int], ...]:
    # Psi_d = prod_{j | d} (1 - q^j)^mu(d/j), where Psi_1 = 1 - q = -Phi_1
    return tuple((j, mobius(d // j)) for j in divisors(d) if mobius(d // j))


def phi_divides(a: np.ndarray, d: int) -> bool:
    """Whether ``Phi_d`` divides the polynomial with coefficient array ``a``."""
    n = len(a)
    if n == 0:
        return True
    rows = -(-n // d)
    pad = np.zeros(rows * d, dtype=object)
    pad[:n] = a
    folded = _trim(list(pad.reshape(rows, d).sum(axis=0)))
    if not folded:
        return True
    phi = cyclotomic_poly(d).coeffs
    if len(folded) < len(phi):
        return False
    _, rem = _divrem_unit(tuple(folded), phi)
    return not any(rem)


def divide_phi(a: np.ndarray, d: int, times: int = 1) -> np.ndarray:
    """Exact quotient by ``Phi_d**times``."""
    ups = [(j, -e) for j, e in _binomial_exponents(d) if e < 0]
    downs = [(j, e) for j, e in _binomial_exponents(d) if e > 0]
    for _ in range(times):
        for j, e in ups:
            a = mul_one_minus(a, j, e)
        for j, e in downs:
            a = div_one_minus(a, j, e)
        if d == 1:
            a = -a
    return _trim_array(a)


def phi_valuation(a: np.ndarray, d: int, cap: int | None = None) -> tuple[int, np.ndarray]:
    """Largest ``v`` (at most ``cap``) with ``Phi_d**v | a``; returns ``(v, a / Phi_d**v)``."""
    v = 0
    while (cap is None or v < cap) and len(a) and phi_divides(a, d):
        a = divide_phi(a, d)
        v += 1
    return v, a


def _trim_array(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def apply_product(a: np.ndarray, exps: Mapping[int, int]) -> np.ndarray:
    """Multiply ``a`` by ``prod Phi_d**e_d`` (all ``e_d >= 0``)."""
    g: dict[int, int] = {}
    sign = 1
    for d, e in exps.items():
        if e < 0:
            raise ValueError("apply_product needs nonnegative exponents")
        if d == 1 and e % 2:
            sign = -sign
        for j, mu in _binomial_exponents(d):
            g[j] = g.get(j, 0) + mu * e
    for j in sorted(g):
        if g[j] > 0:
            a = mul_one_minus(a, j, g[j])
    for j in sorted(g):
        if g[j] < 0:
            a = div_one_minus(a, j, -g[j])
    if sign < 0:
        a = -a
    return a


# -- factored products -----------------------------------------------------


class CycloProduct:
    """``sign * q**qexp * prod_d Phi_d(q)**exps[d]`` with integer exponents.

    The representation is canonical: zero exponents are dropped, so equality
    of instances is equality of the rational functions they denote.
    """

    __slots__ = ("sign", "qexp", "exps", "_key")

    def __init__(self, sign: int = 1, qexp: int = 0, exps: Mapping[int, int] | None = None):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign
        self.qexp = qexp
        self.exps = {d: e for d, e in (exps or {}).items() if e}
        self._key = (sign, qexp, tuple(sorted(self.exps.items())))

    # constructors
    @classmethod
    def one(cls) -> "CycloProduct":
        return cls()

    @classmethod
    def qpow(cls, e: int) -> "CycloProduct":
        return cls(1, e)

    @classmethod
    def phi(cls, d: int, e: int = 1) -> "CycloProduct":
        return cls(1, 0, {d: e})

    @classmethod
    def one_minus_qpow(cls, j: int) -> "CycloProduct":
        """``1 - q^j`` for ``j != 0``."""
        if j == 0:
            raise ValueError("1 - q^0 is zero")
        if j < 0:
            # 1 - q^-s = -q^-s (1 - q^s)
            inner = cls.one_minus_qpow(-j)
            return cls(-inner.sign, inner.qexp + j, inner.exps)
        exps = {d: 1 for d in divisors(j)}
        return cls(-1, 0, exps)  # 1 - q^j = -(q^j - 1)

    @classmethod
    def one_plus_qpow(cls, j: int) -> "CycloProduct":
        """``1 + q^j`` for any integer ``j``."""
        if j == 0:
            raise ValueError("1 + q^0 = 2 is not a cyclotomic product")
        return cls.one_minus_qpow(2 * j) / cls.one_minus_qpow(j)

    @classmethod
    def q_int(cls, n: int) -> "CycloProduct":
        if n < 1:
            raise ValueError("q_int needs n >= 1")
        return cls(1, 0, {d: 1 for d in divisors(n)[1:]})

    # algebra
    def __mul__(self, other: "CycloProduct") -> "CycloProduct":
        exps = dict(self.exps)
        for d, e in other.exps.items():
            exps[d] = exps.get(d, 0) + e
        return CycloProduct(self.sign * other.sign, self.qexp + other.qexp, exps)

    def inverse(self) -> "CycloProduct":
        return CycloProduct(self.sign, -self.qexp, {d: -e for d, e in self.exps.items()})

    def __truediv__(self, other: "CycloProduct") -> "CycloProduct":
        return self * other.inverse()

    def __pow__(self, k: int) -> "CycloProduct":
        sign = self.sign if k % 2 else 1
        return CycloProduct(sign, self.qexp * k, {d: e * k for d, e in self.exps.items()})

    def __neg__(self) -> "CycloProduct":
        return CycloProduct(-self.sign, self.qexp, self.exps)

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloProduct) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        body = " * ".join(f"Phi{d}^{e}" for d, e in sorted(self.exps.items()))
        return f"CycloProduct({'-' if self.sign < 0 else '+'}q^{self.qexp} {body})"

    # parts
    def numerator(self) -> "CycloProduct":
        """Polynomial part (carries the sign)."""
        return CycloProduct(self.sign, max(self.qexp, 0),
                            {d: e for d, e in self.exps.items() if e > 0})

    def denominator(self) -> "CycloProduct":
        return CycloProduct(1, max(-self.qexp, 0),
                            {d: -e for d, e in self.exps.items() if e < 0})

    def is_polynomial(self) -> bool:
        return self.qexp >= 0 and all(e > 0 for e in self.exps.values())

    def degree(self) -> int:
        """Degree of numerator minus degree of denominator."""
        return self.qexp + sum(e * euler_phi(d) for d, e in self.exps.items())

    def expand(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("expand needs a polynomial product")
        a = apply_product(_obj([self.sign]), self.exps)
        return Polynomial.from_array(a).shift(self.qexp)

    def lcm(self, other: "CycloProduct") -> "CycloProduct":
        """Least common multiple of two polynomial products (sign +1)."""
        exps = dict(self.exps)
        for d, e in other.exps.items():
            exps[d] = max(exps.get(d, 0), e)
        return CycloProduct(1, max(self.qexp, other.qexp), exps)

    def at_root_of_unity(self, d: int) -> "CyclotomicNumber":
        """Exact value at a primitive ``d``-th root of unity.

        Raises ZeroDivisionError when ``Phi_d`` occurs with negative exponent.
        """
        e = self.exps.get(d, 0)
        if e < 0:
            raise ZeroDivisionError(f"pole of order {-e} at primitive {d}-th roots of unity")
        if e > 0:
            return CyclotomicNumber.from_rational(d, 0)
        num = CyclotomicNumber.from_rational(d, self.sign)
        den = CyclotomicNumber.from_rational(d, 1)
        for f, x in self.exps.items():
            val = CyclotomicNumber.from_poly(d, cyclotomic_poly(f))
            if x > 0:
                num = num * val ** x
            else:
                den = den * val ** (-x)
        z = CyclotomicNumber.zeta(d) ** (self.qexp % d)
        return num * z / den


# -- exact arithmetic in Q(zeta_d) ----------------------------------------


def _fpoly_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fpoly_divrem(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    quo = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        quo[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return quo, _fpoly_trim(a[:db])


def _fpoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _fpoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _fpoly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                        for i in range(n)])


class CyclotomicNumber:
    """Element of Q(zeta) for ``zeta`` a primitive ``d``-th root of unity.

    Stored as a reduced polynomial in ``zeta`` of degree below ``phi(d)``
    with Fraction coefficients.
    """

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: Iterable):
        self.d = d
        c = [Fraction(x) for x in coeffs]
        modulus = [Fraction(x) for x in cyclotomic_poly(d).coeffs]
        if len(c) >= len(modulus):
            _, c = _fpoly_divrem(c, modulus)
        self.coeffs = tuple(_fpoly_trim(c))

    @classmethod
    def from_rational(cls, d: int, x) -> "CyclotomicNumber":
        return cls(d, [x])

    @classmethod
    def zeta(cls, d: int) -> "CyclotomicNumber":
        return cls(d, [0, 1])

    @classmethod
    def from_poly(cls, d: int, p: Polynomial) -> "CyclotomicNumber":
        # reduce modulo q^d - 1 first: p(zeta) only depends on exponents mod d
        folded = [0] * d
        for i, c in enumerate(p.coeffs):
            folded[i % d] += c
        return cls(d, folded)

    def _lift(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.d != self.d:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.d, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return CyclotomicNumber(self.d, [
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.d, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.d, _fpoly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        # extended Euclid: find s with s*self = 1 mod Phi_d
        r0 = [Fraction(x) for x in cyclotomic_poly(self.d).coeffs]
        r1 = list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = _fpoly_divrem(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(quo, s1))
        c = r1[0]
        return CyclotomicNumber(self.d, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber(self.d, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.d, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def to_complex(self, dps: int = 50):
        """Numerical value at ``exp(2 pi i / d)`` using mpmath."""
        import mpmath

        with mpmath.workdps(dps):
            z = mpmath.expjpi(mpmath.mpf(2) / self.d)
            return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * z ** i
                               for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicNumber(d={self.d}, {[str(c) for c in self.coeffs]})"
