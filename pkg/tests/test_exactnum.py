from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padicisog.exactnum import (
    INF,
    LocalFieldContext,
    ModPoly,
    NonIntegralError,
    Polynomial,
    factor_degree_d,
    parse_rational,
    residue,
    valuation,
)

rationals = st.fractions(
    min_value=-(10**6), max_value=10**6, max_denominator=10**4
)
primes = st.sampled_from([3, 5, 7, 11, 13])


def test_valuation_basics():
    assert valuation(Fraction(18), 3) == 2
    assert valuation(Fraction(1, 9), 3) == -2
    assert valuation(Fraction(10, 7), 7) == -1
    assert valuation(Fraction(0), 5) == INF


@given(rationals, rationals, primes)
def test_valuation_ultrametric(a, b, p):
    va, vb = valuation(a, p), valuation(b, p)
    vs = valuation(a + b, p)
    assert vs >= min(va, vb)
    if va != vb:
        assert vs == min(va, vb)


@given(rationals, rationals, primes)
def test_valuation_multiplicative(a, b, p):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)


def test_residue_inverts_denominator():
    assert residue(Fraction(1, 2), 7) == 4
    assert residue(Fraction(5, 3), 7, 2) == residue(Fraction(5), 7, 2) * pow(3, -1, 49) % 49
    with pytest.raises(NonIntegralError):
        residue(Fraction(1, 7), 7)


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("17") == 17
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_context_rejects_bad_primes():
    LocalFieldContext(7, 2)
    with pytest.raises(ValueError):
        LocalFieldContext(2)
    with pytest.raises(ValueError):
        LocalFieldContext(15)


poly_coeffs = st.lists(rationals, min_size=1, max_size=6)


@given(poly_coeffs, poly_coeffs)
def test_divrem_identity(f, g):
    f, g = Polynomial(f), Polynomial(g)
    if not g:
        return
    q, r = f.divrem(g)
    assert q * g + r == f
    assert r.degree < g.degree or not r


@given(poly_coeffs, poly_coeffs)
def test_gcd_divides_both(f, g):
    f, g = Polynomial(f), Polynomial(g)
    if not f or not g:
        return
    d = f.gcd(g)
    assert not f % d
    assert not g % d


def test_modpoly_arithmetic():
    f = ModPoly([1, 2, 1], 5)  # (x+1)^2
    g = ModPoly([1, 1], 5)
    assert f.gcd(g) == g
    assert f.derivative() == ModPoly([2, 2], 5)


def test_factor_degree_d_by_division():
    # oracle: a returned factor must divide; exhaustiveness on a known split
    f = Polynomial([Fraction(-1), Fraction(0), Fraction(1)])  # x^2 - 1
    found = factor_degree_d(f, 1)
    assert len(found) == 2
    for g in found:
        assert not f % g
    # x^2 + 1 has no degree-1 factor over Q
    assert not factor_degree_d(Polynomial([1, 0, 1]), 1)


def test_factor_degree_d_quadratic_factor():
    # (x^2 + x + 1)(x - 2)
    f = Polynomial([Fraction(1), Fraction(1), Fraction(1)]) * Polynomial([-2, 1])
    quads = factor_degree_d(f, 2)
    assert any(g.monic() == Polynomial([1, 1, 1]) for g in quads)
    for g in quads:
        assert not f % g
