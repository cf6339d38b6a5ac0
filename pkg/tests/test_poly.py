"""Sparse polynomial arithmetic over small prime fields."""

import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from fsing import Polynomial, ParseError, format_poly, parse_poly, pe_decompose, ring
from fsing.poly import is_prime, parse_rational_poly, reduce_fraction_mod_p


R2 = ring(2, "x", "y")
R5 = ring(5, "x", "y")
R7 = ring(7, "x", "y", "z")


def poly_strategy(rg, max_exp=4, max_terms=5):
    n = len(rg.variables)
    term = st.tuples(
        st.tuples(*([st.integers(0, max_exp)] * n)),
        st.integers(0, rg.p - 1),
    )
    return st.lists(term, max_size=max_terms).map(
        lambda pairs: Polynomial(rg, {m: c for m, c in pairs if c % rg.p})
    )


class TestParsing:
    @pytest.mark.parametrize("src,expected", [
        ("x", {(1, 0): 1}),
        ("x*y + y^2", {(1, 1): 1, (0, 2): 1}),
        ("3*x^2", {(2, 0): 3}),
        ("x - y", {(1, 0): 1, (0, 1): 4}),
        ("0", {}),
        ("2 + x", {(0, 0): 2, (1, 0): 1}),
    ])
    def test_parse_golden(self, src, expected):
        assert parse_poly(src, R5).terms == expected

    @pytest.mark.parametrize("src", ["x +", "w", "x^", "x**2", "^2"])
    def test_parse_rejects(self, src):
        with pytest.raises(ParseError):
            parse_poly(src, R5)

    def test_parse_reduces_coefficients(self):
        assert parse_poly("7*x", R5).terms == {(1, 0): 2}
        assert parse_poly("5*x", R5).is_zero()

    def test_rational_parser_keeps_fractions(self):
        terms = parse_rational_poly("s^2 - 1/2", ("s",))
        assert terms == {(2,): Fraction(1), (0,): Fraction(-1, 2)}

    def test_fraction_reduction_mod_p(self):
        assert reduce_fraction_mod_p(Fraction(5, 6), 7) == 2
        with pytest.raises(Exception):
            reduce_fraction_mod_p(Fraction(1, 7), 7)


class TestPrinting:
    @pytest.mark.parametrize("src", ["x^2*y + y^3", "1", "0", "x + 2", "4*x*y"])
    def test_roundtrip(self, src):
        f = parse_poly(src, R5)
        assert parse_poly(format_poly(f), R5) == f

    def test_ordering_is_stable(self):
        f = parse_poly("y^2 + x^2 + x*y", R5)
        assert format_poly(f) == format_poly(parse_poly("x*y + x^2 + y^2", R5))


@settings(max_examples=120, deadline=None)
@given(poly_strategy(R5), poly_strategy(R5), poly_strategy(R5))
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert f + Polynomial.zero(R5) == f
    assert f * Polynomial.constant(R5, 1) == f
    assert (f - f).is_zero()


@settings(max_examples=60, deadline=None)
@given(poly_strategy(R2), poly_strategy(R2))
def test_freshman_dream(f, g):
    # (f + g)^q = f^q + g^q in characteristic p
    assert (f + g).frobenius_power(1) == f.frobenius_power(1) + g.frobenius_power(1)
    assert (f * g).frobenius_power(2) == f.frobenius_power(2) * g.frobenius_power(2)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(R5, max_exp=3, max_terms=4))
def test_frobenius_power_matches_repeated_multiplication(f):
    assert f.frobenius_power(1) == f ** 5


@settings(max_examples=80, deadline=None)
@given(poly_strategy(R5), st.integers(1, 2))
def test_pe_decompose_reassembles(f, e):
    q = 5 ** e
    total = Polynomial.zero(R5)
    for residue, comp in pe_decompose(f, e).items():
        total = total + Polynomial.monomial(R5, residue) * comp.frobenius_power(e)
    assert total == f
    for residue in pe_decompose(f, e):
        assert all(0 <= c < q for c in residue)


class TestStructure:
    def test_total_degree_and_leading_monomial(self):
        f = parse_poly("x^2*y + x*y + 1", R5)
        assert f.total_degree() == 3
        assert f.leading_monomial() == (2, 1)

    def test_power_halving_agrees_with_naive(self):
        f = parse_poly("x + y^2 + 3", R7)
        naive = Polynomial.constant(f.ring, 1)
        for _ in range(6):
            naive = naive * f
        assert f ** 6 == naive

    def test_scale_and_mul_monomial(self):
        f = parse_poly("x + y", R5)
        assert f.scale(3) == parse_poly("3*x + 3*y", R5)
        assert f.mul_monomial((2, 0)) == parse_poly("x^3 + x^2*y", R5)

    @pytest.mark.parametrize("n,expected", [(2, True), (97, True), (1, False),
                                            (4, False), (91, False)])
    def test_is_prime(self, n, expected):
        assert is_prime(n) is expected
