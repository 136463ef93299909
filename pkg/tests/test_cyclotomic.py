import cmath
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b2verma.cyclotomic import (
    CyclotomicField,
    RootOfUnityConfig,
    cartan_binom_eval,
    cyclotomic_polynomial,
    qbinom,
    qfact,
    qint,
)
from b2verma.errors import InvalidRootOfUnity

from oracles import gaussian_direct

L = 5
F = CyclotomicField.of(L)
xi = F.xi_pow(1)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.lists(small, min_size=L - 1, max_size=L - 1).map(
    lambda cs: sum((F(c) * F.xi_pow(k) for k, c in enumerate(cs)), F.zero)
)


def numeric(x, l=L):
    """Evaluate a scalar at exp(2 pi i / l)."""
    z = cmath.exp(2j * cmath.pi / l)
    return sum(float(c) * z**k for k, c in enumerate(x.coefficients()))


@pytest.mark.parametrize("l", [4, 3, 1, 0, -5, 6])
def test_even_or_small_l_rejected(l):
    with pytest.raises(InvalidRootOfUnity):
        RootOfUnityConfig(l)


def test_config_data():
    cfg = RootOfUnityConfig(7)
    assert cfg.l_i == (7, 7)
    assert (cfg.a(1, 2), cfg.a(2, 1), cfg.a(1, 1), cfg.a(2, 2)) == (-2, -1, 2, 2)


@pytest.mark.parametrize("l,phi", [(5, (1, 1, 1, 1, 1)), (7, (1,) * 7), (9, (1, 0, 0, 1, 0, 0, 1)), (15, None)])
def test_cyclotomic_polynomial(l, phi):
    import sympy

    x = sympy.Symbol("x")
    expected = tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(l, x), x).all_coeffs()))
    assert cyclotomic_polynomial(l) == expected
    if phi:
        assert expected == phi


@pytest.mark.parametrize("l", [5, 7, 9, 11])
def test_root_of_unity_order(l):
    field = CyclotomicField.of(l)
    z = field.xi_pow(1)
    assert z**l == field.one
    assert all(z**k != field.one for k in range(1, l))
    assert z * field.xi_pow(l - 1) == field.one
    assert sum((field.xi_pow(k) for k in range(l)), field.zero) == field.zero


@settings(max_examples=150, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero


@settings(max_examples=150, deadline=None)
@given(scalars, scalars)
def test_arithmetic_matches_complex_evaluation(a, b):
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-8
    assert abs(numeric(a + b) - numeric(a) - numeric(b)) < 1e-8
    if a:
        inv = a.inverse()
        assert a * inv == F.one
        assert abs(numeric(inv) * numeric(a) - 1) < 1e-8


@settings(max_examples=100, deadline=None)
@given(scalars, scalars, st.integers(1, L - 1))
def test_galois_conjugation_is_a_ring_map(a, b, k):
    assert (a * b).conjugate(k) == a.conjugate(k) * b.conjugate(k)
    assert (a + b).conjugate(k) == a.conjugate(k) + b.conjugate(k)


def test_printing():
    assert str(xi + xi.inverse()) == "-1 - ξ^2 - ξ^3"
    assert str(F(Fraction(3, 2))) == "3/2"
    assert str(F.zero) == "0"
    assert str(xi**5) == "1"


def test_qint_values():
    assert qint(0, 1, L) == F.zero
    assert qint(L, 1, L) == F.zero
    assert qint(2, 1, L) == xi + xi.inverse()
    assert qint(2, 2, L) == xi**2 + xi ** (-2)
    assert qint(-3, 1, L) == -qint(3, 1, L)


def test_qfact_values():
    assert qfact(0, 2, L) == F.one
    assert qfact(L, 1, L) == F.zero
    assert qfact(2, 1, L) == xi + xi.inverse()
    assert qfact(L - 1, 2, L) != F.zero


def test_qbinom_values():
    for i in (1, 2):
        for b in range(-6, 12):
            assert qbinom(b, 0, i, L) == F.one
    assert qbinom(L, 1, 1, L) == F.zero
    assert qbinom(L, 1, 1, L) == gaussian_direct(L, 1, 1, L)
    assert qbinom(3, 5, 1, L) == F.zero


@pytest.mark.parametrize("i", [1, 2])
def test_qbinom_against_defining_product(i):
    for b in range(-4, 9):
        for a in range(0, 5):
            assert qbinom(b, a, i, L) == gaussian_direct(b, a, i, L), (b, a, i)


@pytest.mark.parametrize("i", [1, 2])
def test_qbinom_is_factorial_ratio(i):
    for b in range(0, L):
        for a in range(0, b + 1):
            den = qfact(a, i, L) * qfact(b - a, i, L)
            assert qbinom(b, a, i, L) == qfact(b, i, L) / den


@settings(max_examples=200, deadline=None)
@given(st.integers(-15, 30), st.integers(1, 12), st.sampled_from([1, 2]), st.sampled_from([5, 7]))
def test_qbinom_pascal(b, a, i, l):
    z = CyclotomicField.of(l).xi_pow
    lhs = qbinom(b, a, i, l)
    rhs = z(i * a) * qbinom(b - 1, a, i, l) + z(-i * (b - a)) * qbinom(b - 1, a - 1, i, l)
    assert lhs == rhs


@pytest.mark.parametrize("l", [5, 7])
def test_lucas_factorization(l):
    for i in (1, 2):
        for a0 in range(l):
            for b0 in range(l):
                for a1 in range(4):
                    for b1 in range(4):
                        got = qbinom(a0 + a1 * l, b0 + b1 * l, i, l)
                        assert got == qbinom(a0, b0, i, l) * comb(a1, b1), (a0, b0, a1, b1, i)


def test_lucas_factorization_spot_checks_direct_product():
    assert gaussian_direct(2 + 2 * L, 1 + L, 1, L) == qbinom(2, 1, 1, L) * 2
    assert gaussian_direct(3 + L, 4, 2, L) == qbinom(3, 4, 2, L)


def test_cartan_binom_eval():
    assert cartan_binom_eval((3, -2), 4, 0, 2, L) == F.one
    assert cartan_binom_eval((0, 0), 0, 1, 1, L) == F.zero
    assert cartan_binom_eval((L - 1, 0), 1, L, 1, L) == F.one
    assert gaussian_direct(L, L, 1, L) == F.one
    assert cartan_binom_eval((2, -7), 3, 2, 2, L) == qbinom(-4, 2, 2, L)
