import threading
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qsupercong.bigpoly import ONE, Polynomial
from qsupercong.cyclotomic import (
    CycloProduct,
    CyclotomicNumber,
    cyclotomic_poly,
    divide_phi,
    divisors,
    euler_phi,
    jacobi_symbol,
    mobius,
    phi_divides,
    phi_valuation,
    q_integer,
)

q = sympy.Symbol("q")


def P(*c):
    return Polynomial(list(c))


def test_q_integer_examples():
    assert q_integer(1) == ONE
    assert q_integer(3) == P(1, 1, 1)
    assert q_integer(0) == P()


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == P(-1, 1)
    assert cyclotomic_poly(6) == P(1, -1, 1)
    assert cyclotomic_poly(5) == P(1, 1, 1, 1, 1)


def test_divisors_examples():
    assert divisors(1) == [1]
    assert divisors(15) == [1, 3, 5, 15]
    assert divisors(9) == [1, 3, 9]


def test_jacobi_examples():
    assert jacobi_symbol(-3, 1) == 1
    assert jacobi_symbol(-3, 5) == -1
    assert jacobi_symbol(-3, 7) == 1


def test_jacobi_rejects_even_modulus():
    with pytest.raises(ValueError):
        jacobi_symbol(3, 4)
    with pytest.raises(ValueError):
        jacobi_symbol(3, -5)


@pytest.mark.parametrize("n", range(1, 51))
def test_cyclotomic_factorizations(n):
    prod = ONE
    for d in divisors(n)[1:]:
        prod = prod * cyclotomic_poly(d)
    assert prod == q_integer(n)
    assert prod * cyclotomic_poly(1) == Polynomial([-1] + [0] * (n - 1) + [1])
    assert cyclotomic_poly(n).degree == int(sympy.totient(n)) == euler_phi(n)
    assert list(reversed(cyclotomic_poly(n).coeffs)) == sympy.Poly(sympy.cyclotomic_poly(n, q), q).all_coeffs()


@pytest.mark.parametrize("n", range(1, 60))
def test_divisors_and_mobius_against_sympy(n):
    assert divisors(n) == sympy.divisors(n)
    assert mobius(n) == sympy.mobius(n)


def _legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


@pytest.mark.parametrize("p", [p for p in sympy.primerange(3, 100)])
def test_jacobi_matches_legendre(p):
    for a in range(-10, 30):
        assert jacobi_symbol(a, p) == _legendre_by_squares(a, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(-200, 200), st.integers(-200, 200), st.integers(0, 60), st.integers(0, 60))
def test_jacobi_multiplicative(a, b, i, j):
    m, n = 2 * i + 1, 2 * j + 1
    assert jacobi_symbol(a * b, m) == jacobi_symbol(a, m) * jacobi_symbol(b, m)
    assert jacobi_symbol(a, m * n) == jacobi_symbol(a, m) * jacobi_symbol(a, n)
    if m > 1:
        assert jacobi_symbol(a, m) == sympy.jacobi_symbol(a % m, m)


def test_cyclotomic_cache_concurrent_reads():
    results = {}

    def work(k):
        results[k] = [cyclotomic_poly(n) for n in range(1, 120)]

    threads = [threading.Thread(target=work, args=(k,)) for k in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    first = results[0]
    assert all(r == first for r in results.values())


# -- factored products ------------------------------------------------------


def test_one_minus_qpow_expands():
    for j in range(1, 20):
        assert CycloProduct.one_minus_qpow(j).expand() == Polynomial([1] + [0] * (j - 1) + [-1])
    with pytest.raises(ValueError):
        CycloProduct.one_minus_qpow(0)


def test_one_plus_qpow_expands():
    for j in range(1, 12):
        assert CycloProduct.one_plus_qpow(j).expand() == Polynomial([1] + [0] * (j - 1) + [1])
    with pytest.raises(ValueError):
        CycloProduct.one_plus_qpow(0)


def test_negative_exponent_factor():
    # 1 - q^-3 = -q^-3 (1 - q^3)
    cp = CycloProduct.one_minus_qpow(-3)
    assert cp == -(CycloProduct.qpow(-3) * CycloProduct.one_minus_qpow(3))


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.integers(1, 24), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.integers(1, 24), st.integers(-3, 3), max_size=5))
def test_cycloproduct_group_laws(e1, e2):
    a, b = CycloProduct(1, 2, e1), CycloProduct(-1, -1, e2)
    assert a * b == b * a
    assert (a / b) * b == a
    assert a * a.inverse() == CycloProduct.one()
    assert a.numerator() / a.denominator() == a


def test_phi_divides_and_valuation():
    a = (cyclotomic_poly(5) ** 3 * cyclotomic_poly(3) * P(2, 0, 7)).to_array()
    assert phi_divides(a, 5) and phi_divides(a, 3)
    assert not phi_divides(a, 7)
    v, rest = phi_valuation(a, 5)
    assert v == 3
    assert Polynomial.from_array(rest) == cyclotomic_poly(3) * P(2, 0, 7)
    assert Polynomial.from_array(divide_phi(a, 3)) == cyclotomic_poly(5) ** 3 * P(2, 0, 7)


@pytest.mark.parametrize("d", range(1, 40))
def test_phi_divides_matches_remainder(d):
    rng = np.random.default_rng(d)
    for _ in range(5):
        base = Polynomial([int(x) for x in rng.integers(-9, 10, size=rng.integers(1, 30))])
        for test in (base, base * cyclotomic_poly(d)):
            if test.is_zero:
                continue
            assert phi_divides(test.to_array(), d) == (test % cyclotomic_poly(d)).is_zero


# -- exact values at roots of unity ---------------------------------------


@pytest.mark.parametrize("d", [3, 5, 7, 9, 12])
def test_cyclotomic_number_field_ops(d):
    z = CyclotomicNumber.zeta(d)
    assert z ** d == CyclotomicNumber.from_rational(d, 1)
    assert z ** (d - 1) * z == 1
    x = z + Fraction(1, 3) * z ** 2 + 2
    assert x * x.inverse() == 1
    assert CyclotomicNumber.from_poly(d, cyclotomic_poly(d)) == 0


def test_cyclotomic_number_matches_complex():
    z = CyclotomicNumber.zeta(7)
    x = (z ** 3 + 5) / (z - 2)
    w = complex(sympy.exp(2 * sympy.pi * sympy.I / 7).evalf(30))
    assert abs(complex(x.to_complex()) - (w ** 3 + 5) / (w - 2)) < 1e-12


def test_at_root_of_unity_zero_and_pole():
    cp = CycloProduct.phi(5) / CycloProduct.phi(3)
    assert cp.at_root_of_unity(5) == 0
    with pytest.raises(ZeroDivisionError):
        cp.at_root_of_unity(3)
    # [3] at a primitive 5th root: 1 + z + z^2
    z = CyclotomicNumber.zeta(5)
    assert CycloProduct.q_int(3).at_root_of_unity(5) == 1 + z + z * z
