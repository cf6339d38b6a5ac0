"""Rational b-polynomials and their mod-p root checks."""

from fractions import Fraction

import pytest

from fsing import (
    BPolynomial,
    CoefficientReductionError,
    Ideal,
    ParseError,
    bs_jump_check,
    bs_threshold_check,
    catalog_divisibility_pairs,
    load_catalog,
    parse_poly,
    reduce_mod_p,
    ring,
)


class TestBPolynomial:
    def test_parse_and_print(self):
        b = BPolynomial.parse("(s + 1)*(s + 2)")
        assert str(b) == "s^2 + 3*s + 2"
        assert b.degree == 2

    def test_parse_rational_coefficients(self):
        b = BPolynomial.parse("s + 5/6")
        assert b.evaluate(Fraction(1, 6)) == 1

    def test_parse_rejects_other_variables(self):
        with pytest.raises(ParseError):
            BPolynomial.parse("t + 1")

    def test_must_be_monic(self):
        with pytest.raises(ValueError):
            BPolynomial((Fraction(1), Fraction(2)))  # 1 + 2s is not monic

    def test_multiplication_and_divisibility(self):
        a = BPolynomial.parse("s + 1")
        c = BPolynomial.parse("s + 2")
        prod = a * c
        assert str(prod) == "s^2 + 3*s + 2"
        assert a.divides(prod) and c.divides(prod)
        assert not BPolynomial.parse("s + 3").divides(prod)

    def test_evaluate_horner(self):
        b = BPolynomial.parse("s^2 - 1/2")
        assert b.evaluate(2) == Fraction(7, 2)


class TestReduceModP:
    def test_denominator_inverted(self):
        reduced = reduce_mod_p(BPolynomial.parse("s + 5/6"), 7)
        assert reduced == parse_poly("s + 2", ring(7, "s"))

    def test_p_dividing_denominator_is_an_error(self):
        with pytest.raises(CoefficientReductionError):
            reduce_mod_p(BPolynomial.parse("s + 1/7"), 7)

    def test_reduction_is_multiplicative(self):
        a = BPolynomial.parse("s + 1/2")
        c = BPolynomial.parse("s - 1/3")
        assert reduce_mod_p(a * c, 5) == reduce_mod_p(a, 5) * reduce_mod_p(c, 5)


class TestCatalog:
    def test_bundled_catalog_loads(self):
        catalog = load_catalog()
        assert "variable" in catalog
        assert str(catalog["variable"]) == "s + 1"
        assert str(catalog["xu-yv.ambient"]) == "s^2 + 3*s + 2"

    def test_divisibility_pairs(self):
        catalog = load_catalog()
        pairs = catalog_divisibility_pairs(catalog)
        assert ("xu-yv.summand", "xu-yv.ambient") in pairs
        for small, big in pairs:
            assert catalog[small].divides(catalog[big])

    def test_catalog_rejects_duplicates(self, tmp_path):
        bad = tmp_path / "cat.txt"
        bad.write_text("bpoly k = s + 1\nbpoly k = s + 2\n")
        with pytest.raises(ParseError):
            load_catalog(str(bad))

    def test_catalog_line_numbers_in_errors(self, tmp_path):
        bad = tmp_path / "cat.txt"
        bad.write_text("# fine\nbpoly good = s + 1\nbpoly broken = s +\n")
        with pytest.raises(ParseError) as exc:
            load_catalog(str(bad))
        assert "3" in str(exc.value)


class TestThresholdCheck:
    def test_variable_passes_everywhere(self):
        rg = ring(5, "x", "y")
        b = BPolynomial.parse("s + 1")
        report = bs_threshold_check(b, parse_poly("x", rg),
                                    Ideal(rg, (parse_poly("x", rg),)), 5, range(1, 3))
        assert report.verdict == "pass"
        assert [(r.e, r.exponent) for r in report.rows] == [(1, 4), (2, 24)]

    def test_wrong_polynomial_fails_at_large_p(self):
        rg = ring(5, "x", "y")
        b = BPolynomial.parse("s + 3")
        report = bs_threshold_check(b, parse_poly("x", rg),
                                    Ideal(rg, (parse_poly("x", rg),)), 5, (1,))
        assert report.verdict == "fail"
        assert not report.passed()

    def test_small_p_is_inconclusive_not_fail(self):
        rg = ring(2, "x", "y")
        m = Ideal(rg, (parse_poly("x", rg), parse_poly("y", rg)))
        # nu(xy) = 1 and s+3 sends 1 to 4 = 0 mod 2, so a wrong b can
        # still pass at tiny p; zero-rooted s gives a nonzero residue
        report = bs_threshold_check(BPolynomial.parse("s + 3"),
                                    parse_poly("x*y", rg), m, 2, (1,))
        assert report.verdict == "pass"
        report2 = bs_threshold_check(BPolynomial.parse("s"),
                                     parse_poly("x*y", rg), m, 2, (1,))
        assert report2.verdict == "inconclusive-small-p"

    def test_m_floor_downgrades_fail_to_inconclusive(self):
        rg = ring(5, "x", "y")
        b = BPolynomial.parse("s + 3")
        args = (b, parse_poly("x", rg), Ideal(rg, (parse_poly("x", rg),)), 5, (1,))
        assert bs_threshold_check(*args).verdict == "fail"
        assert bs_threshold_check(*args, m_floor=30).verdict == "inconclusive-small-p"


class TestJumpCheck:
    def test_jump_rows_only_at_drops(self):
        rg = ring(3, "x", "y")
        b = BPolynomial.parse("s + 1")
        report = bs_jump_check(b, parse_poly("x^2", rg), 3, 1, range(0, 4))
        assert report.mode == "jump"
        exps = [r.e for r in report.rows]
        assert all(isinstance(e, int) for e in exps)
        assert report.verdict in ("pass", "fail", "inconclusive-small-p")
