"""End-to-end acceptance sweeps.

Each criterion exercises one pillar of the package against an independent
route: brute-force oracles, transported computations in a free coordinate
ring, or exact identities that the theory forces.  Every function returns
(passed, detail) and never fakes success; an exception is reported as a
failure with its message.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .bspoly import bs_threshold_check, catalog_divisibility_pairs, load_catalog
from .cartier import cartier_image, enumerate_maps
from .errors import FsingError
from .frobenius import bracket_power, eth_root
from .groebner import Ideal, ideal_contains, ideal_equal, ideal_member
from .invariants import cyclic_witness, jump_spectrum, nu, test_ideal
from .oracle import cartier_piece_solver, eth_root_dense, nu_dense, transport, transport_iso
from .poly import Polynomial, parse_poly, ring
from .randgen import random_poly, random_sigma_monomial, random_sigma_monomial_ideal
from .summand import build_embedding, presentation, r_ideal_equal


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    detail: str


def _maximal_ideal(rg) -> Ideal:
    return Ideal(rg, tuple(Polynomial.variable(rg, v) for v in rg.variables))


def _segre_setup(p: int):
    s = ring(p, "x", "y", "u", "v")
    emb = build_embedding(((1, 0, 1, 0), (0, 1, 0, 1)), s)
    f = parse_poly("x*u - y*v", s)
    return s, emb, f


def _veronese_setup(p: int):
    s = ring(p, "x", "y")
    emb = build_embedding(((2, 0), (1, 1), (0, 2)), s)
    return s, emb


def criterion_1(rng: random.Random) -> Tuple[bool, str]:
    """Root and bracket round-trip plus dense-oracle agreement."""
    checked = 0
    for p in (2, 3, 5):
        for e in (1, 2):
            for i in range(100):
                wide = p <= 3 and e == 1 and i % 5 == 0
                nvars = 3 if wide else 2
                rg = ring(p, *("x", "y", "z")[:nvars])
                max_exp = 2 if (nvars == 3 or p == 5) else 3
                gens = tuple(
                    random_poly(rng, rg, max_terms=3, max_exp=max_exp)
                    for _ in range(rng.randint(1, 2))
                )
                ideal = Ideal(rg, gens)
                back = eth_root(bracket_power(ideal, e), e)
                if not ideal_equal(back, ideal):
                    return False, f"round-trip failed for {gens} at p={p}, e={e}"
                dense = eth_root_dense(ideal, p, e)
                main = eth_root(ideal, e)
                if not ideal_equal(dense, main):
                    return False, f"root oracle disagreed for {gens} at p={p}, e={e}"
                f = random_poly(rng, rg, max_terms=3, max_exp=max_exp, no_constant=True)
                a = _maximal_ideal(rg)
                value = nu(f, a, e).value
                value_dense = nu_dense(f, a, p, e)
                if value != value_dense:
                    return False, (
                        f"nu oracle disagreed for {f} at p={p}, e={e}: "
                        f"{value} vs {value_dense}"
                    )
                checked += 1
    return True, f"{checked} random instances, three checks each"


def criterion_2(rng: random.Random) -> Tuple[bool, str]:
    """Square-product subring suite: presentation, jumps, root checks."""
    catalog = load_catalog()
    parts: List[str] = []
    for p in (2, 3, 5, 7):
        s, emb, f = _segre_setup(p)
        pres = presentation(emb)
        if pres.toric.gens != ():
            return False, f"expected a free presentation at p={p}, got {pres.toric.gens}"
        r_spec = jump_spectrum((f,), 2, 1, emb)
        iso = transport_iso(emb)
        g = transport(f, iso)
        t_spec = jump_spectrum((g,), 2, 1, "S")
        if r_spec.values() != t_spec.values():
            return False, (
                f"jump spectra differ at p={p}: {r_spec.values()} vs {t_spec.values()}"
            )
        if r_spec.values() != (Fraction(1),):
            return False, f"unexpected spectrum at p={p}: {r_spec.values()}"
        m_r = Ideal(s, (parse_poly("x*u", s), parse_poly("y*v", s)))
        rep = bs_threshold_check(catalog["xu-yv.summand"], f, m_r, p, range(1, 4), emb)
        if rep.verdict != "pass":
            return False, f"summand-side root check {rep.verdict} at p={p}"
        if p > 2:
            rep_s = bs_threshold_check(
                catalog["xu-yv.ambient"], f, _maximal_ideal(s), p, range(1, 3), "S"
            )
            if rep_s.verdict != "pass":
                return False, f"ambient-side root check {rep_s.verdict} at p={p}"
        parts.append(f"p={p} ok")
    pairs = catalog_divisibility_pairs(catalog)
    if ("xu-yv.summand", "xu-yv.ambient") not in pairs:
        return False, f"divisibility pair missing from catalog: {pairs}"
    if not catalog["xu-yv.summand"].divides(catalog["xu-yv.ambient"]):
        return False, "catalog divisibility check failed"
    return True, "; ".join(parts) + "; spectra = {1} matching transport"


def criterion_3(rng: random.Random) -> Tuple[bool, str]:
    """Level-e jumping candidates in the subring refine the ambient ones."""
    checked = 0
    for p in (2, 3):
        s, emb = _veronese_setup(p)
        sources = [(parse_poly("x^2 + y^2", s),)]
        for _ in range(5):
            sources.append(random_sigma_monomial_ideal(rng, emb, max_gens=2, max_steps=2))
        for source in sources:
            for e in (1, 2):
                s_vals = set(jump_spectrum(source, e, 1, "S").values())
                r_vals = set(jump_spectrum(source, e, 1, emb).values())
                if not r_vals <= s_vals:
                    return False, (
                        f"subring candidates escape ambient ones for {source} "
                        f"at p={p}, e={e}: {sorted(r_vals)} vs {sorted(s_vals)}"
                    )
                checked += 1
    return True, f"{checked} spectra compared (two primes, two levels)"


def criterion_4(rng: random.Random) -> Tuple[bool, str]:
    """Equal ambient roots force equal subring images."""
    checked = 0
    collapsed = 0
    for p in (2, 3):
        s, emb = _veronese_setup(p)
        q = p
        for i in range(25):
            first = random_sigma_monomial_ideal(rng, emb, max_gens=4, max_steps=4)
            if i % 2 == 0:
                base = first[rng.randrange(len(first))]
                shift = random_sigma_monomial(rng, emb, max_steps=2)
                extra = base.mul_monomial(tuple(q * c for c in shift))
                second = first + (extra,)
            else:
                second = random_sigma_monomial_ideal(rng, emb, max_gens=4, max_steps=4)
            root1 = eth_root(Ideal(s, first), 1)
            root2 = eth_root(Ideal(s, second), 1)
            if not ideal_equal(root1, root2):
                continue
            img1 = cartier_image(first, emb, 1)
            img2 = cartier_image(second, emb, 1)
            if not r_ideal_equal(img1.generators, img2.generators, emb):
                return False, (
                    f"ambient roots agree but images differ at p={p}: "
                    f"{first} vs {second}"
                )
            checked += 1
            collapsed += 1
    return True, f"{collapsed} equal-root pairs verified out of 50 drawn"


def criterion_5(rng: random.Random) -> Tuple[bool, str]:
    """Scaling law, post-hoc bounds, and subring-vs-ambient agreement for nu."""
    goldens = [
        ("x", ("x",), 3, 1, 2),
        ("x*y", ("x", "y"), 2, 2, 3),
        ("x^2 + y^3", ("x", "y"), 7, 1, 5),
    ]
    for src, a_srcs, p, e, expected in goldens:
        rg = ring(p, "x", "y")
        f = parse_poly(src, rg)
        a = Ideal(rg, tuple(parse_poly(t, rg) for t in a_srcs))
        got = nu(f, a, e).value
        if got != expected:
            return False, f"golden nu({src}) at p={p}, e={e}: got {got}, want {expected}"
    randoms = 0
    for p in (2, 3):
        rg = ring(p, "x", "y")
        a = _maximal_ideal(rg)
        a_bracket = {e: bracket_power(a, e) for e in (1, 2)}
        for _ in range(25):
            f = random_poly(rng, rg, max_terms=3, max_exp=3, no_constant=True)
            v1 = nu(f, a, 1).value
            v2 = nu(f, a, 2).value
            if v2 < p * v1:
                return False, f"scaling law failed for {f} at p={p}: {v2} < {p}*{v1}"
            for e, v in ((1, v1), (2, v2)):
                if not ideal_member(f ** (v + 1), a_bracket[e]):
                    return False, f"upper bound not witnessed for {f} at p={p}, e={e}"
                if v >= 1 and ideal_member(f ** v, a_bracket[e]):
                    return False, f"lower bound not witnessed for {f} at p={p}, e={e}"
            randoms += 1
    agreements = 0
    for p in (2, 3):
        s, emb = _veronese_setup(p)
        m_r = Ideal(s, tuple(Polynomial.monomial(s, g) for g in emb.semigroup.gens))
        for _ in range(5):
            f = Polynomial.monomial(s, random_sigma_monomial(rng, emb, max_steps=3))
            for e in (1, 2):
                in_r = nu(f, m_r, e, emb).value
                in_s = nu(f, m_r, e, "S").value
                if in_r != in_s:
                    return False, (
                        f"subring and ambient nu differ for {f} at p={p}, e={e}: "
                        f"{in_r} vs {in_s}"
                    )
                agreements += 1
    return True, f"3 goldens, {randoms} random scaling/bounds, {agreements} mode agreements"


def criterion_6(rng: random.Random) -> Tuple[bool, str]:
    """Test ideals shrink as lambda grows and grow with the ideal."""
    checked = 0
    for p in (2, 3):
        rg = ring(p, "x", "y")
        q2 = p * p
        for _ in range(10):
            f = random_poly(rng, rg, max_terms=2, max_exp=2, no_constant=True)
            levels = []
            for a in range(1, q2 + 1):
                res = test_ideal((f,), Fraction(a, q2), 2, "S")
                levels.append(Ideal(rg, res.chain[-1][1]))
            for lo, hi in zip(levels, levels[1:]):
                if not ideal_contains(lo, hi):
                    return False, f"lambda-monotonicity failed for {f} at p={p}"
            g = random_poly(rng, rg, max_terms=2, max_exp=2, no_constant=True)
            lam = Fraction(rng.randint(1, q2), q2)
            small = test_ideal((f,), lam, 2, "S")
            large = test_ideal((f, g), lam, 2, "S")
            if not ideal_contains(
                Ideal(rg, large.chain[-1][1]), Ideal(rg, small.chain[-1][1])
            ):
                return False, f"ideal-monotonicity failed for {f}, {g} at p={p}"
            checked += 1
    return True, f"{checked} random pairs over a full level-2 lambda grid"


def criterion_7(rng: random.Random) -> Tuple[bool, str]:
    """Frobenius cyclicity witnesses on the golden examples."""
    rows = []
    for p in (2, 5):
        for src, vars_ in (("x", ("x", "y")), ("x^2 + y^3", ("x", "y")),
                           ("x*u - y*v", ("x", "y", "u", "v"))):
            rg = ring(p, *vars_)
            f = parse_poly(src, rg)
            e_prime, verified = cyclic_witness(f, 1, 3, "S")
            if not verified or e_prime is None or e_prime > 3:
                return False, f"no witness for {src} at p={p}: ({e_prime}, {verified})"
            rows.append(f"{src}@p={p}:e'={e_prime}")
    return True, ", ".join(rows)


def criterion_8(rng: random.Random) -> Tuple[bool, str]:
    """Shift-operator enumeration against the scalar constraint solver."""
    shapes: List[Tuple[str, Callable[[int], Tuple]]] = [
        ("full ring", lambda p: (ring(p, "x", "y"), ((1, 0), (0, 1)))),
        ("even powers", lambda p: (ring(p, "x"), ((2,),))),
        ("quadratic pairs", lambda p: (ring(p, "x", "y"), ((2, 0), (1, 1), (0, 2)))),
        ("product pairs", lambda p: (ring(p, "x", "y", "u", "v"),
                                     ((1, 0, 1, 0), (0, 1, 0, 1)))),
    ]
    compared = 0
    for label, make in shapes:
        for p in (2, 3):
            rg, gens = make(p)
            emb = build_embedding(gens, rg)
            maps = enumerate_maps(emb, 1)
            small_box = maps[0].box // 2
            by_shift: Dict[Tuple[int, ...], List] = {}
            for mp in maps:
                by_shift.setdefault(mp.w, []).append(mp)
            for w, group in sorted(by_shift.items()):
                expected = [
                    frozenset(m for m in mp.support if max(m) <= small_box)
                    for mp in group
                ]
                expected = [sup for sup in expected if sup]
                sol = cartier_piece_solver(emb, 1, w, small_box)
                if sol.dimension != len(expected):
                    return False, (
                        f"{label} p={p} w={w}: {len(expected)} operators vs "
                        f"solver dimension {sol.dimension}"
                    )
                if set(sol.supports()) != set(expected):
                    return False, f"{label} p={p} w={w}: operator supports differ"
                for vec in sol.basis:
                    if len(set(vec.values())) > 1:
                        return False, (
                            f"{label} p={p} w={w}: solver vector is not an indicator"
                        )
                compared += 1
    return True, f"{compared} shift classes matched across 4 subrings and 2 primes"


_CRITERIA: Tuple[Tuple[int, str, Callable[[random.Random], Tuple[bool, str]]], ...] = (
    (1, "root round-trips vs dense oracles", criterion_1),
    (2, "square-product subring suite", criterion_2),
    (3, "subring candidates refine ambient", criterion_3),
    (4, "equal roots collapse equal images", criterion_4),
    (5, "nu laws and mode agreement", criterion_5),
    (6, "test ideal monotonicity", criterion_6),
    (7, "cyclicity witnesses", criterion_7),
    (8, "operators vs constraint solver", criterion_8),
)


def run_criteria(selected: Optional[List[int]] = None, seed: int = 20250819,
                 quiet: bool = False) -> List[CriterionResult]:
    chosen = set(selected) if selected else {n for n, _, _ in _CRITERIA}
    unknown = chosen - {n for n, _, _ in _CRITERIA}
    if unknown:
        raise ValueError(f"unknown criteria: {sorted(unknown)}")
    results: List[CriterionResult] = []
    for number, name, fn in _CRITERIA:
        if number not in chosen:
            continue
        rng = random.Random(seed * 100 + number)
        start = time.monotonic()
        try:
            passed, detail = fn(rng)
        except FsingError as ex:
            passed, detail = False, f"{type(ex).__name__}: {ex}"
        elapsed = time.monotonic() - start
        results.append(CriterionResult(number, name, passed, elapsed, detail))
        if not quiet:
            tag = "PASS" if passed else "FAIL"
            print(f"criterion {number} ({name}): {tag} ({elapsed:.1f}s) {detail}")
    return results
