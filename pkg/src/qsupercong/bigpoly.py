"""Dense univariate polynomials over the integers.

A polynomial a_0 + a_1 q + ... + a_n q^n is stored as the tuple
``(a_0, a_1, ..., a_n)`` of Python ints with ``a_n != 0``; the zero
polynomial is the empty tuple.  Python ints already give sign-magnitude
arbitrary precision with a canonical zero, so no separate bigint type exists.

Division works over the rationals.  A quotient or remainder whose
coefficients are not all integral carries :class:`fractions.Fraction`
coefficients; :func:`poly_exact_div` is the checked wrapper for callers that
need an exact integer quotient.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Polynomial",
    "ZERO",
    "ONE",
    "Q",
    "ExactDivisionError",
    "KARATSUBA_THRESHOLD",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_mul_schoolbook",
    "poly_divrem",
    "poly_exact_div",
    "poly_gcd",
    "poly_eval_exact",
    "poly_content",
    "poly_primitive",
]

# From benchmarks/bench_mul.py (CPython 3.10, 60- and 300-digit coefficients):
# Karatsuba beats schoolbook 2-5x at degree 256-1024 for any threshold in
# 8..48, with differences inside timing noise; 64 is measurably slower.
KARATSUBA_THRESHOLD = 32


class ExactDivisionError(ArithmeticError):
    """Raised when a division expected to be exact leaves a remainder or a
    non-integral quotient."""


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _norm_coeff(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class Polynomial:
    """Immutable dense polynomial in ``q``.

    Coefficients are in ascending degree order.  Instances are hashable and
    compare by value.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = [_norm_coeff(x if isinstance(x, Fraction) else int(x)) for x in coeffs]
        self.coeffs = tuple(_trim(c))
        self._hash = None

    @classmethod
    def _raw(cls, coeffs) -> "Polynomial":
        # trusted: already a trimmed sequence of ints/Fractions
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        if c == 0:
            return ZERO
        return cls._raw((0,) * k + (c,))

    @classmethod
    def from_array(cls, arr) -> "Polynomial":
        c = [int(x) for x in arr]
        return cls._raw(_trim(c))

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def low_order(self) -> int:
        """Multiplicity of ``q`` as a factor (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``q**k``; negative ``k`` drops that many low zeros."""
        if not self.coeffs or k == 0:
            return self
        if k > 0:
            return Polynomial._raw((0,) * k + self.coeffs)
        if any(self.coeffs[: -k]):
            raise ExactDivisionError(f"polynomial not divisible by q^{-k}")
        return Polynomial._raw(self.coeffs[-k:])

    def to_array(self) -> np.ndarray:
        a = np.empty(len(self.coeffs), dtype=object)
        a[:] = self.coeffs
        return a

    def digest(self, length: int = 16) -> str:
        """Short stable hash of the coefficient vector."""
        h = hashlib.sha256(",".join(map(str, self.coeffs)).encode()).hexdigest()
        return h[:length]

    # -- dunder ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError("negative index")
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Polynomial", self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_sub(other, self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Polynomial._raw(tuple(_norm_coeff(c * other) for c in self.coeffs))
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        return poly_divrem(self, _coerce(other))

    def __floordiv__(self, other):
        return poly_divrem(self, _coerce(other))[0]

    def __mod__(self, other):
        return poly_divrem(self, _coerce(other))[1]

    def __call__(self, x):
        return poly_eval_exact(self, x)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s0, b0 = parts[0]
        out = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial((x,)) if x else ZERO
    return NotImplemented


ZERO = Polynomial._raw(())
ONE = Polynomial._raw((1,))
Q = Polynomial._raw((0, 1))


# -- ring operations -----------------------------------------------------


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    x, y = a.coeffs, b.coeffs
    if len(x) < len(y):
        x, y = y, x
    c = list(x)
    for i, v in enumerate(y):
        c[i] = _norm_coeff(c[i] + v)
    return Polynomial._raw(_trim(c))


def poly_sub(a: Polynomial, b: Polynomial) -> Polynomial:
    return poly_add(a, -b)


def _school(x: Sequence, y: Sequence) -> list:
    if not x or not y:
        return []
    out = [0] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                out[i + j] += xi * yj
    return out


def _add_into(dst: list, src: Sequence, offset: int) -> None:
    for i, v in enumerate(src):
        dst[offset + i] += v


def _addvec(x: Sequence, y: Sequence) -> list:
    if len(x) < len(y):
        x, y = y, x
    out = list(x)
    for i, v in enumerate(y):
        out[i] += v
    return out


def _karatsuba(x: Sequence, y: Sequence) -> list:
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        return []
    if min(n, m) <= KARATSUBA_THRESHOLD:
        return _school(x, y)
    if n < m:
        x, y, n, m = y, x, m, n
    if 2 * m <= n:
        # unbalanced: split the long operand into chunks of the short length
        out = [0] * (n + m - 1)
        for start in range(0, n, m):
            _add_into(out, _karatsuba(x[start:start + m], y), start)
        return out
    h = n // 2
    x0, x1 = x[:h], x[h:]
    y0, y1 = y[:h], y[h:]
    z0 = _karatsuba(x0, y0)
    z2 = _karatsuba(x1, y1)
    sx = _addvec(x0, x1)
    sy = _addvec(y0, y1)
    z1 = _karatsuba(sx, sy)
    for i, v in enumerate(z0):
        z1[i] -= v
    for i, v in enumerate(z2):
        z1[i] -= v
    out = [0] * (n + m - 1)
    _add_into(out, z0, 0)
    _add_into(out, z1, h)
    _add_into(out, z2, 2 * h)
    return out


def poly_mul_schoolbook(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quadratic reference multiplication."""
    return Polynomial._raw(_trim([_norm_coeff(c) for c in _school(a.coeffs, b.coeffs)]))


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact product; schoolbook for short operands, Karatsuba above
    :data:`KARATSUBA_THRESHOLD`."""
    if not a.coeffs or not b.coeffs:
        return ZERO
    if len(a.coeffs) == 1:
        return b * a.coeffs[0]
    if len(b.coeffs) == 1:
        return a * b.coeffs[0]
    out = _karatsuba(a.coeffs, b.coeffs)
    return Polynomial._raw(_trim([_norm_coeff(c) for c in out]))


# -- division ------------------------------------------------------------


def _divrem_unit(a: tuple, b: tuple) -> tuple[list, list]:
    # b has leading coefficient +-1: integer long division, vectorized
    db = len(b) - 1
    r = np.empty(len(a), dtype=object)
    r[:] = a
    bb = np.empty(db, dtype=object)
    bb[:] = b[:-1]
    lead = b[-1]
    qlen = len(a) - db
    quo = [0] * qlen
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        if lead == -1:
            c = -c
        quo[i - db] = c
        if db:
            r[i - db:i] -= c * bb
    rem = list(r[:db]) if db else []
    return quo, rem


def poly_divrem(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Return ``(quot, rem)`` with ``a == quot*b + rem`` and ``deg rem < deg b``.

    Division is over the rationals; results carry Fraction coefficients only
    when the leading coefficient of ``b`` forces them.
    """
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(a.coeffs) < len(b.coeffs):
        return ZERO, a
    if b.coeffs[-1] in (1, -1) and a.is_integral() and b.is_integral():
        quo, rem = _divrem_unit(a.coeffs, b.coeffs)
        return Polynomial._raw(_trim(quo)), Polynomial._raw(_trim(rem))
    db = len(b.coeffs) - 1
    lead = Fraction(b.coeffs[-1])
    r = [Fraction(c) for c in a.coeffs]
    quo = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lead
        if not c:
            continue
        quo[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b.coeffs[j]
    qn = [_norm_coeff(c) for c in quo]
    rn = [_norm_coeff(c) for c in r[:db]]
    return Polynomial._raw(_trim(qn)), Polynomial._raw(_trim(rn))


def poly_exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises :class:`ExactDivisionError` unless the
    remainder is zero and the quotient has integer coefficients."""
    quo, rem = poly_divrem(a, b)
    if rem:
        raise ExactDivisionError("nonzero remainder")
    if not quo.is_integral():
        raise ExactDivisionError("quotient has non-integral coefficients")
    return quo


# -- content and gcd -----------------------------------------------------


def poly_content(a: Polynomial) -> int:
    """Nonnegative gcd of the (integer) coefficients; 0 for zero."""
    return reduce(gcd, a.coeffs, 0)


def poly_primitive(a: Polynomial) -> Polynomial:
    """Primitive part with positive leading coefficient."""
    if not a.coeffs:
        return ZERO
    c = poly_content(a)
    if a.coeffs[-1] < 0:
        c = -c
    if c == 1:
        return a
    return Polynomial._raw(tuple(x // c for x in a.coeffs))


def _prem(a: tuple, b: tuple) -> list:
    # pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b
    lead = b[-1]
    e = len(a) - len(b) + 1
    if lead in (1, -1):
        _, rem = _divrem_unit(a, b)
        f = lead ** e
    else:
        _, r = poly_divrem(Polynomial._raw(a), Polynomial._raw(b))
        f = lead ** e
        rem = [Fraction(c) * f for c in r.coeffs]
        assert all(x.denominator == 1 for x in rem)
        return _trim([int(x) for x in rem])
    return _trim([x * f for x in rem])


def _subresultant_gcd(a: tuple, b: tuple) -> list:
    # primitive inputs, deg a >= deg b >= 0; Brown-Collins subresultant PRS
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return list(b)
        if len(r) == 1:
            return [1]
        a, b = b, tuple(x // (g * h ** delta) for x in r)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd with positive leading coefficient.

    Uses the subresultant polynomial remainder sequence, which keeps
    coefficient growth polynomial.  Integer content is ignored:
    ``poly_gcd(2q+2, 4q+4) == q+1``.
    """
    if not a.coeffs and not b.coeffs:
        raise ValueError("gcd of two zero polynomials")
    if not a.coeffs:
        return poly_primitive(b)
    if not b.coeffs:
        return poly_primitive(a)
    if len(a.coeffs) == 1 or len(b.coeffs) == 1:
        return ONE
    # pull out common powers of q first: cheap and common in this workload
    k = min(a.low_order(), b.low_order())
    pa = poly_primitive(a.shift(-a.low_order()))
    pb = poly_primitive(b.shift(-b.low_order()))
    if len(pa.coeffs) < len(pb.coeffs):
        pa, pb = pb, pa
    if len(pb.coeffs) == 1:
        g = ONE
    else:
        g = poly_primitive(Polynomial._raw(_subresultant_gcd(pa.coeffs, pb.coeffs)))
    return g.shift(k)


def poly_eval_exact(a: Polynomial, x):
    """Horner evaluation; exact for int and Fraction arguments."""
    acc = 0
    for c in reversed(a.coeffs):
        acc = acc * x + c
    if isinstance(acc, Fraction) and acc.denominator == 1:
        return int(acc.numerator)
    return acc
