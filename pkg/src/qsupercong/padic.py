"""Exact rational sums at q = 1 and their congruences modulo prime powers.

A rational ``x`` is congruent to ``y`` modulo ``p^r`` when ``v_p(x - y) >= r``;
this only makes sense when neither denominator is divisible by ``p``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Iterable, Sequence

from .report import CongruenceReport, Outcome, Witness

__all__ = [
    "PadicRational",
    "ConjectureCounterexample",
    "EvidenceRow",
    "central_binomial",
    "central_binomials",
    "valuation",
    "primes_upto",
    "cor1_sum",
    "cor2_sum",
    "cor4_sum",
    "congruent_mod_prime_power",
    "conjecture_evidence",
    "verify_cor1",
    "verify_cor2",
    "verify_cor4",
    "verify_conj1",
    "verify_conj2",
]

log = logging.getLogger(__name__)


class ConjectureCounterexample(RuntimeError):
    """Raised when an evidence scan finds a prime violating a conjecture."""

    def __init__(self, message: str, table: list):
        super().__init__(message)
        self.table = table


def valuation(x: int | Fraction, p: int) -> int | float:
    """``v_p(x)``; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PadicRational:
    value: Fraction
    p: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError("context prime must be an odd prime")
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def valuation(self) -> int | float:
        return valuation(self.value, self.p)

    def congruent(self, target, r: int) -> bool:
        return congruent_mod_prime_power(self, target, self.p, r)

    def residue(self, r: int) -> int:
        """Representative in ``[0, p^r)``; needs a p-integral value."""
        mod = self.p ** r
        if self.value.denominator % self.p == 0:
            raise ValueError("value is not p-integral")
        return self.value.numerator * pow(self.value.denominator, -1, mod) % mod


def central_binomial(k: int) -> int:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return comb(2 * k, k)


def central_binomials(n: int) -> list[int]:
    """``[C(0,0), C(2,1), ..., C(2n-2, n-1)]`` by the multiplicative recurrence."""
    out, c = [], 1
    for k in range(n):
        out.append(c)
        c = c * 2 * (2 * k + 1) // (k + 1)
    return out


def primes_upto(n: int) -> list[int]:
    """Primes ``<= n`` (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _self_convolution(u: Sequence[int]) -> list[int]:
    n = len(u)
    return [sum(u[j] * u[k - j] for j in range(k + 1)) for k in range(n)]


def _weighted_sum(conv: Sequence[int], ratio: Fraction) -> Fraction:
    total, w = Fraction(0), Fraction(1)
    for a in conv:
        total += w * a
        w *= ratio
    return total


def _require_odd_prime(p: int, minimum: int = 3) -> None:
    if p < minimum or p not in set(primes_upto(p)):
        raise ValueError(f"expected a prime >= {minimum}, got {p}")


def cor1_sum(p: int) -> PadicRational:
    """``sum_{k<p} (-1/8)^k sum_j C(2j,j) C(2k-2j,k-j) (6j+1)(6k-6j+1)``."""
    _require_odd_prime(p)
    u = [c * (6 * j + 1) for j, c in enumerate(central_binomials(p))]
    return PadicRational(_weighted_sum(_self_convolution(u), Fraction(-1, 8)), p)


def cor2_sum(p: int) -> PadicRational:
    """Same double sum with weights ``1/4^k``."""
    _require_odd_prime(p)
    u = [c * (6 * j + 1) for j, c in enumerate(central_binomials(p))]
    return PadicRational(_weighted_sum(_self_convolution(u), Fraction(1, 4)), p)


def cor4_sum(p: int) -> PadicRational:
    """``sum_{k<p} 2304^-k sum_j u_j u_{k-j}`` with
    ``u_j = C(2j,j)^2 C(4j,2j) (8j+1)``."""
    _require_odd_prime(p, 5)
    cb = central_binomials(2 * p)
    u = [cb[j] ** 2 * cb[2 * j] * (8 * j + 1) for j in range(p)]
    return PadicRational(_weighted_sum(_self_convolution(u), Fraction(1, 2 ** 8 * 3 ** 2)), p)


def congruent_mod_prime_power(x, target, p: int, r: int) -> bool:
    """``v_p(x - target) >= r``; both sides must be p-integral."""
    xv = x.value if isinstance(x, PadicRational) else Fraction(x)
    tv = target.value if isinstance(target, PadicRational) else Fraction(target)
    if xv.denominator % p == 0 or tv.denominator % p == 0:
        raise ValueError(f"{p} divides a denominator; congruence mod {p}^{r} undefined")
    return valuation(xv - tv, p) >= r


# -- report-producing verifiers -------------------------------------------


def _report(statement: str, p: int, x: PadicRational, target: Fraction, r: int,
            start: float, desc: str) -> CongruenceReport:
    params = {"p": p}
    modulus = f"{p}^{r}" if r > 1 else str(p)
    details = {"residue": x.residue(r), "target_residue": PadicRational(target, p).residue(r),
               "v_p(diff)": _v_str(valuation(x.value - target, p)), "target": desc}
    ms = (time.perf_counter() - start) * 1000.0
    if congruent_mod_prime_power(x, target, p, r):
        return CongruenceReport(statement, params, modulus, Outcome.HOLDS, ms=ms, details=details)
    witness = Witness(None, (f"residue {details['residue']} != {details['target_residue']}",))
    return CongruenceReport(statement, params, modulus, Outcome.FAILS, witness, ms=ms, details=details)


def _v_str(v) -> str:
    return "inf" if v == float("inf") else str(v)


def verify_cor1(p: int) -> CongruenceReport:
    start = time.perf_counter()
    return _report("cor1", p, cor1_sum(p), Fraction(0), 1, start, "0")


def verify_cor2(p: int) -> CongruenceReport:
    start = time.perf_counter()
    return _report("cor2", p, cor2_sum(p), Fraction(0), 1, start, "0")


def verify_cor4(p: int) -> CongruenceReport:
    start = time.perf_counter()
    return _report("cor4", p, cor4_sum(p), Fraction(p * p), 3, start, "p^2")


def verify_conj1(p: int) -> CongruenceReport:
    start = time.perf_counter()
    return _report("conj1", p, cor1_sum(p), Fraction(-p, 2), 2, start, "-p/2")


def verify_conj2(p: int) -> CongruenceReport:
    start = time.perf_counter()
    return _report("conj2", p, cor2_sum(p), Fraction(p), 2, start, "p")


@dataclass(frozen=True)
class EvidenceRow:
    p: int
    residue: int
    target_residue: int
    holds: bool


def conjecture_evidence(which: int, primes: Iterable[int]) -> list[EvidenceRow]:
    """Per-prime table for conjecture 1 (``-p/2 mod p^2``) or 2 (``p mod p^2``).

    A failing prime is a counterexample: it is logged and
    :class:`ConjectureCounterexample` is raised with the full table.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    verify = verify_conj1 if which == 1 else verify_conj2
    table = []
    for p in sorted(primes):
        rep = verify(p)
        table.append(EvidenceRow(p, rep.details["residue"], rep.details["target_residue"], rep.ok))
    bad = [row.p for row in table if not row.holds]
    if bad:
        msg = f"COUNTEREXAMPLE to conjecture {which} at p = {bad}"
        log.error(msg)
        raise ConjectureCounterexample(msg, table)
    return table
