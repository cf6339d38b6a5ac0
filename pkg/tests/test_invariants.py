"""Nu invariants, threshold truncations, test ideals, jumping spectra."""

from fractions import Fraction

import pytest

from fsing import (
    FsingError,
    Ideal,
    Polynomial,
    RadicalHypothesisError,
    build_embedding,
    cyclic_witness,
    fpt_truncation,
    ideal_contains,
    ideal_equal,
    jump_spectrum,
    nu,
    parse_poly,
    ring,
    summand_filter,
)
from fsing import test_ideal as compute_test_ideal

R2 = ring(2, "x", "y")
R3 = ring(3, "x", "y")
R7 = ring(7, "x", "y")


def F(src, rg):
    return parse_poly(src, rg)


class TestNu:
    @pytest.mark.parametrize("f,a,rg,e,expected", [
        ("x", ("x",), R3, 1, 2),
        ("x*y", ("x", "y"), R2, 2, 3),
        ("x^2 + y^3", ("x", "y"), R7, 1, 5),
        ("x^2", ("x", "y"), R3, 1, 1),
        ("x + y", ("x", "y"), R2, 1, 1),
    ])
    def test_goldens(self, f, a, rg, e, expected):
        a_ideal = Ideal(rg, tuple(F(s, rg) for s in a))
        res = nu(F(f, rg), a_ideal, e)
        assert res.value == expected
        assert res.ratio == Fraction(expected, rg.p ** e)

    def test_requires_radical_containment(self):
        with pytest.raises(RadicalHypothesisError):
            nu(F("x", R2), Ideal(R2, (F("y", R2),)), 1)

    def test_rejects_unit_a(self):
        with pytest.raises(ValueError):
            nu(F("x", R2), Ideal(R2, (F("x + 1", R2), F("x", R2))), 1)

    def test_scaling_law_on_golden(self):
        f = F("x^2 + y^3", R2)
        a = Ideal(R2, (F("x", R2), F("y", R2)))
        v1 = nu(f, a, 1).value
        v2 = nu(f, a, 2).value
        assert v2 >= 2 * v1

    def test_multigenerator_j(self):
        j = (F("x^2", R3), F("y^2", R3))
        a = Ideal(R3, (F("x", R3), F("y", R3)))
        # (x^2, y^2)^t escapes (x^3, y^3) exactly up to t = 2
        assert nu(j, a, 1).value == 2


class TestFptTruncation:
    def test_chain_golden(self):
        est = fpt_truncation(F("x^2", R3), Ideal(R3, (F("x", R3), F("y", R3))), 2)
        assert [(e, v, r) for e, v, r in est.chain] == [
            (1, 1, Fraction(1, 3)), (2, 4, Fraction(4, 9))]
        assert est.monotone
        assert est.value == Fraction(4, 9)

    def test_truncations_approach_one_half(self):
        est = fpt_truncation(F("x^2", R3), Ideal(R3, (F("x", R3), F("y", R3))), 4)
        assert est.value == Fraction(40, 81)
        assert est.monotone


class TestTestIdeal:
    def test_smooth_divisor_at_lambda_one(self):
        res = compute_test_ideal((F("x", R2),), 1, 3)
        assert res.status == "stabilized"
        assert res.e_star == 1
        assert ideal_equal(Ideal(R2, res.tau), Ideal(R2, (F("x", R2),)))
        assert res.ascending

    def test_small_lambda_gives_unit(self):
        res = compute_test_ideal((F("x*y", R2),), Fraction(1, 2), 3)
        assert res.status == "stabilized"
        assert [str(g) for g in res.tau] == ["1"]

    def test_monotone_in_lambda(self):
        f = (F("x^3 + y^3", R2),)
        taus = [Ideal(R2, compute_test_ideal(f, Fraction(a, 4), 3).tau) for a in (1, 2, 3, 4)]
        for lo, hi in zip(taus, taus[1:]):
            assert ideal_contains(lo, hi)


class TestJumpSpectrum:
    def test_square_at_p3(self):
        spec = jump_spectrum((F("x^2", R3),), 1)
        assert spec.values() == (Fraction(2, 3), Fraction(1))

    def test_variable_at_p2_level2(self):
        spec = jump_spectrum((F("x", R2),), 2)
        assert spec.values() == (Fraction(1),)

    def test_witness_ideals_drop(self):
        spec = jump_spectrum((F("x^2", R3),), 1)
        for lam, before, after in spec.candidates:
            big, small = Ideal(R3, before), Ideal(R3, after)
            assert ideal_contains(big, small) and not ideal_equal(big, small)

    def test_refinement_windows_nest(self):
        spec = jump_spectrum((F("x^2", R3),), 1, refine=True)
        assert spec.refinement is not None
        assert spec.refinement.e == 2
        got = dict()
        for lam, refined in spec.windows:
            got[lam] = refined
            for v in refined:
                assert Fraction(lam - Fraction(1, 3)) < v <= lam
        assert got[Fraction(1)] == (Fraction(1),)
        assert got[Fraction(2, 3)] == (Fraction(5, 9),)


class TestSummandFilter:
    def test_identity_embedding_keeps_all_candidates(self):
        emb = build_embedding(((1, 0), (0, 1)), R2)
        f = F("x^2*y", R2)
        s_spec = jump_spectrum((f,), 1, 1, "S")
        report = summand_filter((f,), emb, 1, s_spec)
        assert report.survivors == s_spec.values()
        assert all(flag for _, flag in report.entries)

    def test_veronese_filter_matches_r_spectrum(self):
        emb = build_embedding(((2, 0), (1, 1), (0, 2)), R2)
        f = F("x^2 + y^2", R2)
        s_spec = jump_spectrum((f,), 1, 1, "S")
        r_spec = jump_spectrum((f,), 1, 1, emb)
        report = summand_filter((f,), emb, 1, s_spec)
        assert set(report.survivors) == set(r_spec.values())

    def test_level_mismatch_is_rejected(self):
        emb = build_embedding(((2, 0), (1, 1), (0, 2)), R2)
        f = F("x^2 + y^2", R2)
        s_spec = jump_spectrum((f,), 2, 1, "S")
        with pytest.raises(ValueError):
            summand_filter((f,), emb, 1, s_spec)


class TestCyclicWitness:
    @pytest.mark.parametrize("src,p,expected", [
        ("x", 2, 1),
        ("x^2 + y^3", 2, 2),
        ("x^2 + y^3", 5, 2),
    ])
    def test_golden_witnesses(self, src, p, expected):
        rg = ring(p, "x", "y")
        e_prime, verified = cyclic_witness(parse_poly(src, rg), 1, 3)
        assert verified
        assert e_prime == expected

    def test_unverified_when_window_too_small(self):
        e_prime, verified = cyclic_witness(F("x^2 + y^3", R2), 1, 1)
        assert not verified
        assert e_prime is None
