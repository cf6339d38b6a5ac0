"""Brute-force validators: dense powers, scalar solvers, transport."""

import random

import pytest

from fsing import (
    DegreeCapError,
    Ideal,
    Polynomial,
    RingMismatchError,
    build_embedding,
    cartier_piece_solver,
    eth_root,
    eth_root_dense,
    ideal_equal,
    nu,
    nu_dense,
    parse_poly,
    ring,
    transport,
    transport_iso,
)
from fsing.limits import DEFAULT_LIMITS
from fsing.randgen import random_poly

R2 = ring(2, "x", "y")
R3 = ring(3, "x", "y")
R5 = ring(5, "x", "y")


class TestNuDense:
    @pytest.mark.parametrize("f,rg,e,expected", [
        ("x", R3, 1, 2),
        ("x*y", R2, 2, 3),
        ("x^2 + y^3", R5, 1, 3),
    ])
    def test_goldens(self, f, rg, e, expected):
        a = Ideal(rg, (parse_poly("x", rg), parse_poly("y", rg)))
        assert nu_dense(parse_poly(f, rg), a, rg.p, e) == expected

    def test_rejects_non_monomial_a(self):
        a = Ideal(R2, (parse_poly("x + y", R2),))
        with pytest.raises(ValueError):
            nu_dense(parse_poly("x", R2), a, 2, 1)

    def test_rejects_wrong_prime(self):
        a = Ideal(R2, (parse_poly("x", R2),))
        with pytest.raises(RingMismatchError):
            nu_dense(parse_poly("x", R2), a, 3, 1)

    def test_degree_cap_guards_runaway_powers(self):
        limits = DEFAULT_LIMITS.updated(oracle_degree=4)
        a = Ideal(R5, (parse_poly("x", R5),))
        with pytest.raises(DegreeCapError):
            nu_dense(parse_poly("x", R5), a, 5, 3, limits)

    def test_agrees_with_main_route(self):
        rng = random.Random(11)
        a2 = Ideal(R2, (parse_poly("x", R2), parse_poly("y", R2)))
        a3 = Ideal(R3, (parse_poly("x", R3), parse_poly("y", R3)))
        for rg, a in ((R2, a2), (R3, a3)):
            for _ in range(20):
                f = random_poly(rng, rg, max_terms=3, max_exp=3)
                for e in (1, 2):
                    assert nu_dense(f, a, rg.p, e) == nu(f, a, e).value


class TestEthRootDense:
    @pytest.mark.parametrize("srcs,e,expected", [
        (("x^2",), 1, ("x",)),
        (("x^3 + x*y^2",), 1, ("x + y",)),
        (("1",), 1, ("1",)),
        (("x^2", "y^2"), 1, ("x", "y")),
        (("x^4*y^4", "x^8"), 2, ("x*y", "x^2")),
    ])
    def test_goldens(self, srcs, e, expected):
        ideal = Ideal(R2, tuple(parse_poly(s, R2) for s in srcs))
        want = Ideal(R2, tuple(parse_poly(s, R2) for s in expected))
        assert ideal_equal(eth_root_dense(ideal, 2, e), want)

    def test_generators_are_minimal(self):
        # x and x*y generate (x); the pruning pass must drop the multiple
        ideal = Ideal(R2, (parse_poly("x^2", R2), parse_poly("x^2*y^2", R2)))
        got = eth_root_dense(ideal, 2, 1)
        assert [str(g) for g in got.gens] == ["x"]

    def test_mixed_rings_are_rejected(self):
        with pytest.raises(RingMismatchError):
            eth_root_dense((parse_poly("x", R2), parse_poly("x", R3)), 2, 1)

    def test_agrees_with_main_route(self):
        rng = random.Random(13)
        for rg in (R2, R3, R5):
            for _ in range(25):
                gens = tuple(random_poly(rng, rg, max_terms=3, max_exp=4)
                             for _ in range(rng.randint(1, 3)))
                ideal = Ideal(rg, gens)
                for e in (1, 2):
                    assert ideal_equal(eth_root_dense(ideal, rg.p, e),
                                       eth_root(ideal, e))


class TestPieceSolver:
    def test_even_powers_dimensions(self):
        rg = ring(2, "x")
        emb = build_embedding(((2,),), rg)
        for w, dim in (((0,), 1), ((2,), 1), ((-2,), 1), ((4,), 1)):
            sol = cartier_piece_solver(emb, 1, w, emb.box)
            assert sol.dimension == dim

    def test_far_window_is_empty(self):
        rg = ring(2, "x")
        emb = build_embedding(((2,),), rg)
        assert cartier_piece_solver(emb, 1, (-50,), emb.box).dimension == 0

    def test_basis_vectors_are_indicators(self):
        rg = ring(3, "x", "y")
        emb = build_embedding(((2, 0), (1, 1), (0, 2)), rg)
        sol = cartier_piece_solver(emb, 1, (1, 1), emb.box)
        for vec in sol.basis:
            assert len(set(vec.values())) == 1


class TestTransport:
    def setup_method(self):
        self.rg = ring(2, "x", "y", "u", "v")
        self.emb = build_embedding(((1, 0, 1, 0), (0, 1, 0, 1)), self.rg)
        self.iso = transport_iso(self.emb)

    def test_target_ring_and_images(self):
        assert self.iso.names == ("a", "b")
        f = parse_poly("x*u + y*v", self.rg)
        assert str(transport(f, self.iso)) == "a + b"
        g = parse_poly("x*u*y*v", self.rg)
        assert str(transport(g, self.iso)) == "a*b"

    def test_roundtrip_on_random_subring_elements(self):
        rng = random.Random(17)
        target = self.iso.target
        for _ in range(50):
            g = random_poly(rng, target, max_terms=4, max_exp=3)
            assert transport(transport(g, self.iso, back=True), self.iso) == g

    def test_ideal_transport(self):
        ideal = Ideal(self.rg, (parse_poly("x*u", self.rg),))
        moved = transport(ideal, self.iso)
        assert [str(g) for g in moved.gens] == ["a"]

    def test_refuses_non_free_subrings(self):
        rg = ring(2, "x", "y")
        emb = build_embedding(((2, 0), (1, 1), (0, 2)), rg)
        with pytest.raises(ValueError):
            transport_iso(emb)
