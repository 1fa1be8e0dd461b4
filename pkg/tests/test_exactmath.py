from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bipolys, fractions_st
from gwenergy.errors import DomainError
from gwenergy.exactmath import BiPoly, binomial, c_constant, format_bipoly, poly_eval

x, lam = BiPoly.x(), BiPoly.lam()


@pytest.mark.parametrize(
    "k, expected",
    [(1, Fraction(-1, 4)), (2, Fraction(1, 32)), (3, Fraction(-1, 768)), (4, Fraction(1, 36864))],
)
def test_c_constant_values(k, expected):
    assert c_constant(k) == expected


@pytest.mark.parametrize("k", [0, -1, -5])
def test_c_constant_domain(k):
    with pytest.raises(DomainError):
        c_constant(k)


@pytest.mark.parametrize("k", range(1, 11))
def test_c_constant_recurrence(k):
    assert c_constant(k + 1) == -c_constant(k) / (4 * k * (k + 1))


def test_c_constant_canonical_and_big():
    c = c_constant(30)
    assert c.denominator > 2**64
    assert math.gcd(c.numerator, c.denominator) == 1 and c.denominator > 0


@pytest.mark.parametrize("n, r, expected", [(2, 1, 2), (4, 2, 6), (4, 5, 0), (4, -1, 0), (0, 0, 1), (-1, 1, 0)])
def test_binomial(n, r, expected):
    assert binomial(n, r) == expected


@given(fractions_st, fractions_st, fractions_st)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    for q in (a + b, a * b, a - c):
        assert q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1


def test_poly_eval_examples():
    assert poly_eval(x * lam, 2, 3) == 6
    assert poly_eval(BiPoly.zero(), Fraction(7, 3), -1) == 0
    assert poly_eval(x**2 + lam, Fraction(1, 2), Fraction(1, 4)) == Fraction(1, 2)


def test_bipoly_no_zero_coefficients():
    p = BiPoly({(1, 0): 1, (0, 1): 0}) + BiPoly({(1, 0): -1})
    assert p.is_zero() and len(p) == 0
    assert (x - x).terms == {}


def test_bipoly_rejects_float_coefficients():
    with pytest.raises(TypeError):
        BiPoly({(0, 0): 0.5})


def test_bipoly_format():
    p = -Fraction(1, 16) * x**2 - Fraction(1, 4) * x * lam
    assert format_bipoly(p) == "-1/16*x^2 - 1/4*x*lambda"
    assert format_bipoly(BiPoly.zero()) == "0"
    assert format_bipoly(x + 1) == "x + 1"


def test_homogeneity_scan():
    assert (x**2 + 3 * x * lam).is_homogeneous(2)
    assert not (x**2 + lam).is_homogeneous(2)


@given(bipolys(), bipolys(), bipolys())
def test_ring_axioms(p, q, s):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + s == p + (q + s)
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s


@given(bipolys(), bipolys(), fractions_st, fractions_st)
def test_poly_eval_is_ring_homomorphism(p, q, xv, lv):
    assert poly_eval(p * q, xv, lv) == poly_eval(p, xv, lv) * poly_eval(q, xv, lv)
    assert poly_eval(p + q, xv, lv) == poly_eval(p, xv, lv) + poly_eval(q, xv, lv)


@given(bipolys(max_degree=2), st.integers(0, 4))
def test_power_matches_repeated_product(p, n):
    expected = BiPoly.one()
    for _ in range(n):
        expected = expected * p
    assert p**n == expected
