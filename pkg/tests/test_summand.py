"""Monomial direct summands: purity certificates, projections, presentations."""

import pytest

from fsing import (
    Ideal,
    NotInSemigroupError,
    Polynomial,
    PurityError,
    beta_project,
    build_embedding,
    ideal_member,
    monomial_decompose,
    nu,
    parse_poly,
    presentation,
    r_ideal_contains,
    r_ideal_equal,
    r_ideal_member,
    ring,
)

R2 = ring(2, "x", "y")
R3 = ring(3, "x", "y")


def veronese(rg=R2):
    return build_embedding(((2, 0), (1, 1), (0, 2)), rg)


def segre(p=2):
    rg = ring(p, "x", "y", "u", "v")
    return rg, build_embedding(((1, 0, 1, 0), (0, 1, 0, 1)), rg)


class TestPurity:
    def test_veronese_is_pure(self):
        emb = veronese()
        assert emb.verified
        assert emb.witness is None
        cert = emb.certificate
        assert cert.verified and cert.points_checked > 0

    def test_gap_semigroup_is_rejected_with_witness(self):
        # x^2 and x^3 generate all exponents except 1; the gap breaks purity
        rg = ring(2, "x")
        emb = build_embedding(((2,), (3,)), rg)
        assert not emb.verified
        assert emb.witness == (1,)

    def test_jagged_plane_semigroup_rejected(self):
        emb = build_embedding(((2, 0), (0, 2), (1, 1), (3, 0)), R2)
        assert not emb.verified
        # witness is a lattice point below the generated staircase
        assert emb.witness is not None

    def test_full_ring_is_pure(self):
        emb = build_embedding(((1, 0), (0, 1)), R2)
        assert emb.verified

    def test_contains_exponent_beyond_box_uses_lattice(self):
        emb = veronese()
        big = 4 * emb.box
        assert emb.contains_exponent((big, big))
        assert emb.contains_exponent((big, big + 2))
        assert not emb.contains_exponent((big, big + 1))


class TestProjection:
    def test_beta_keeps_semigroup_monomials(self):
        emb = veronese()
        f = parse_poly("x^2 + x*y + x", R2)
        assert beta_project(f, emb) == parse_poly("x^2 + x*y", R2)

    def test_beta_is_identity_on_subring_elements(self):
        emb = veronese()
        f = parse_poly("x^2*y^2 + x*y", R2)
        assert beta_project(f, emb) == f

    def test_beta_of_outside_monomial_is_zero(self):
        emb = veronese()
        assert beta_project(parse_poly("x^3", R2), emb).is_zero()

    def test_require_poly_rejects_outsiders(self):
        emb = veronese()
        with pytest.raises(NotInSemigroupError):
            emb.require_poly(parse_poly("x^2 + y", R2))

    def test_monomial_decompose_golden(self):
        emb = veronese()
        indices = monomial_decompose((3, 1), emb)
        total = [0, 0]
        for i in indices:
            g = emb.semigroup.gens[i]
            total[0] += g[0]
            total[1] += g[1]
        assert tuple(total) == (3, 1)

    def test_monomial_decompose_rejects_gaps(self):
        emb = veronese()
        with pytest.raises(NotInSemigroupError):
            monomial_decompose((1, 0), emb)


class TestPresentation:
    def test_veronese_toric_is_principal_quadric(self):
        emb = veronese(R3)
        pres = presentation(emb)
        assert len(pres.toric.gens) == 1
        g = pres.toric.gens[0]
        assert sorted(g.terms) == [(0, 2, 0), (1, 0, 1)]

    def test_square_product_pair_is_free(self):
        _, emb = segre(3)
        assert presentation(emb).toric.gens == ()

    def test_lift_unlift_roundtrip(self):
        emb = veronese()
        pres = presentation(emb)
        f = parse_poly("x^2*y^2 + x^2", R2)
        assert pres.unlift(pres.lift(f)) == f


class TestRIdealOps:
    def test_r_membership_agrees_with_contraction(self):
        # purity: for elements of R, membership in an extended R-ideal is
        # the same computed inside R or inside S; the two routes share no code
        emb = veronese()
        gens = (parse_poly("x^2 + x*y", R2), parse_poly("y^4", R2))
        s_ideal = Ideal(R2, gens)
        probes = ["x^2", "x*y", "x^2*y^2", "x^4 + y^4", "x^3*y + x*y^3", "y^2"]
        for src in probes:
            f = parse_poly(src, R2)
            assert r_ideal_member(f, gens, emb) == ideal_member(f, s_ideal)

    def test_r_ideal_equal_and_contains(self):
        emb = veronese()
        a = (parse_poly("x^2", R2), parse_poly("x*y", R2))
        b = (parse_poly("x*y", R2), parse_poly("x^2", R2), parse_poly("x^2*x*y", R2))
        assert r_ideal_equal(a, b, emb)
        assert r_ideal_contains(a, (parse_poly("x^4", R2),), emb)
        assert not r_ideal_contains((parse_poly("x^4", R2),), a, emb)

    def test_nu_transfers_through_the_summand(self):
        # purity makes contraction exact, so nu agrees in R and S
        rg, emb = segre(3)
        f = parse_poly("x*u - y*v", rg)
        m_r = Ideal(rg, (parse_poly("x*u", rg), parse_poly("y*v", rg)))
        assert nu(f, m_r, 1, emb).value == nu(f, m_r, 1, "S").value == 2
