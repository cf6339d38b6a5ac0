"""Ideals and reduced Groebner bases over F_p.

Buchberger's algorithm with the coprimality and chain criteria, normal
pair selection (minimal lcm degree, ties by pair index), full tail
reduction, and a final minimalize + interreduce pass.  Everything is
deterministic for a fixed generator list and order.  Resource caps come
from limits.Limits and overruns raise ResourceLimitError rather than
returning a partial basis.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, List, Sequence, Tuple

from .errors import ResourceLimitError, RingMismatchError
from .limits import DEFAULT_LIMITS, Limits
from .poly import (
    GREVLEX,
    Block,
    MonomialOrder,
    PolyRing,
    Polynomial,
    format_poly,
    mono_coprime,
    mono_deg,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_sub,
)


def poly_sort_key(f: Polynomial):
    """Canonical ordering of polynomial lists: by degree, then printed form."""
    return (f.total_degree(), format_poly(f))


class Ideal:
    """An ideal presented by generators; reduced bases are cached per order."""

    __slots__ = ("ring", "gens", "_gb_cache")

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial]):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.gens = gens
        self._gb_cache = {}

    @classmethod
    def principal(cls, f: Polynomial) -> "Ideal":
        return cls(f.ring, (f,))

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, (Polynomial.one(ring),))

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ())

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def is_monomial_ideal(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def groebner_basis(
        self, order: MonomialOrder = GREVLEX, limits: Limits = DEFAULT_LIMITS
    ) -> Tuple[Polynomial, ...]:
        token = order.cache_token()
        basis = self._gb_cache.get(token)
        if basis is None:
            basis = buchberger(self.gens, order, limits)
            self._gb_cache[token] = basis
        return basis

    def is_unit_ideal(self, limits: Limits = DEFAULT_LIMITS) -> bool:
        basis = self.groebner_basis(GREVLEX, limits)
        return len(basis) == 1 and basis[0].is_constant() and not basis[0].is_zero()

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.gens == other.gens

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __repr__(self):
        inside = ", ".join(format_poly(g) for g in self.gens) or "0"
        return f"<ideal ({inside}) of {self.ring}>"


# ---------------------------------------------------------------------------
# reduction


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    c = f.leading_coefficient(order)
    if c == 1:
        return f
    return f.scale(pow(c, -1, f.ring.p))


def reduce_poly(
    f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX
) -> Polynomial:
    """Full remainder of f modulo a list of monic polynomials.

    Every term of the result is divisible by no leading monomial of the
    basis; the reducer picked for each term is the first match in basis
    order, which keeps the result deterministic.
    """
    if not basis:
        return f
    p = f.ring.p
    lms = [g.leading_monomial(order) for g in basis]
    key = order.key
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lmg, g in zip(lms, basis):
            if mono_divides(lmg, m):
                shift = mono_sub(m, lmg)
                for eg, cg in g.terms.items():
                    if eg == lmg:
                        continue
                    e = mono_mul(eg, shift)
                    s = (work.get(e, 0) - c * cg) % p
                    if s:
                        work[e] = s
                    else:
                        work.pop(e, None)
                break
        else:
            remainder[m] = c
    return Polynomial(f.ring, remainder, _clean=True)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    lcm = mono_lcm(lmf, lmg)
    p = f.ring.p
    cf = pow(f.leading_coefficient(order), -1, p)
    cg = pow(g.leading_coefficient(order), -1, p)
    return f.mul_monomial(mono_sub(lcm, lmf), cf) - g.mul_monomial(mono_sub(lcm, lmg), cg)


# ---------------------------------------------------------------------------
# Buchberger


def _minimal_monomial_basis(gens, order):
    monos = sorted({g.leading_monomial(order) for g in gens}, key=lambda m: (mono_deg(m), m))
    kept: List = []
    for m in monos:
        if not any(mono_divides(k, m) for k in kept):
            kept.append(m)
    ring = gens[0].ring
    polys = [Polynomial.monomial(ring, m) for m in kept]
    polys.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return tuple(polys)


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    limits: Limits = DEFAULT_LIMITS,
) -> Tuple[Polynomial, ...]:
    """Reduced Groebner basis of the ideal generated by gens."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ()
    ring = gens[0].ring
    if all(g.is_monomial() for g in gens):
        return _minimal_monomial_basis(gens, order)

    basis = []
    seen = set()
    for g in gens:
        g = _monic(g, order)
        if g not in seen:
            seen.add(g)
            basis.append(g)
    lms = [g.leading_monomial(order) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    processed = 0
    while pairs:
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimitError(f"Buchberger pair cap {limits.max_pairs} exceeded")
        i, j = min(pairs, key=lambda ij: (mono_deg(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if mono_coprime(lms[i], lms[j]):
            continue
        if any(
            k != i and k != j
            and mono_divides(lms[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        h = reduce_poly(s_polynomial(basis[i], basis[j], order), basis, order)
        if h.is_zero():
            continue
        if h.total_degree() > limits.max_degree:
            raise ResourceLimitError(f"degree cap {limits.max_degree} exceeded in Buchberger")
        h = _monic(h, order)
        basis.append(h)
        lms.append(h.leading_monomial(order))
        if len(basis) > limits.max_basis:
            raise ResourceLimitError(f"basis cap {limits.max_basis} exceeded in Buchberger")
        t = len(basis) - 1
        pairs.update((k, t) for k in range(t))

    # minimalize: keep only generators whose leading monomial is minimal
    order_key = order.key
    basis.sort(key=lambda g: order_key(g.leading_monomial(order)))
    minimal = []
    minimal_lms = []
    for g in basis:
        lm = g.leading_monomial(order)
        if not any(mono_divides(m, lm) for m in minimal_lms):
            minimal.append(g)
            minimal_lms.append(lm)
    # interreduce tails; leading monomials are pairwise non-divisible so they survive
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        h = reduce_poly(g, others, order)
        reduced.append(_monic(h, order))
    reduced.sort(key=lambda g: order_key(g.leading_monomial(order)), reverse=True)
    return tuple(reduced)


# ---------------------------------------------------------------------------
# membership and comparisons


def normal_form(
    f: Polynomial,
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    limits: Limits = DEFAULT_LIMITS,
) -> Polynomial:
    """Remainder of f modulo the reduced Groebner basis of the ideal."""
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal rings differ")
    return reduce_poly(f, ideal.groebner_basis(order, limits), order)


def ideal_member(
    f: Polynomial, ideal: Ideal, limits: Limits = DEFAULT_LIMITS
) -> bool:
    return normal_form(f, ideal, GREVLEX, limits).is_zero()


def ideal_contains(big: Ideal, small: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether big contains small, by reducing small's generators."""
    return all(ideal_member(g, big, limits) for g in small.gens)


def ideal_equal(a: Ideal, b: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")
    if a.gens == b.gens:
        return True
    ga = a.groebner_basis(GREVLEX, limits)
    gb = b.groebner_basis(GREVLEX, limits)
    return ga == gb


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return Ideal(a.ring, a.gens + b.gens)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    gens = []
    seen = set()
    for f in a.gens:
        for g in b.gens:
            h = f * g
            if h not in seen and not h.is_zero():
                seen.add(h)
                gens.append(h)
    return Ideal(a.ring, gens)


def ideal_power(ideal: Ideal, k: int, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    if k < 0:
        raise ValueError("negative ideal power")
    if k == 0:
        return Ideal.unit(ideal.ring)
    if k > limits.max_power:
        raise ResourceLimitError(f"ideal power {k} exceeds cap {limits.max_power}")
    if len(ideal.gens) == 1:
        return Ideal(ideal.ring, (ideal.gens[0] ** k,))
    gens = []
    seen = set()
    for combo in combinations_with_replacement(ideal.gens, k):
        h = combo[0]
        for g in combo[1:]:
            h = h * g
        if h not in seen and not h.is_zero():
            seen.add(h)
            gens.append(h)
    return Ideal(ideal.ring, gens)


# ---------------------------------------------------------------------------
# elimination and radicals


def eliminate(ideal: Ideal, keep: Iterable[str], limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """Generators of the intersection with F_p[keep], as an ideal there.

    Uses a block order that compares the eliminated variables first, so
    basis elements free of them cut out exactly the elimination ideal.
    """
    ring = ideal.ring
    keep = list(keep)
    keep_set = set(keep)
    for name in keep:
        ring.var_index(name)
    elim_idx = tuple(i for i, v in enumerate(ring.variables) if v not in keep_set)
    target = ring.restrict(keep_set)
    if not elim_idx:
        return Ideal(target, ideal.gens)
    order = Block(elim_idx, ring.n)
    basis = ideal.groebner_basis(order, limits)
    positions = {}
    for i, v in enumerate(ring.variables):
        if v in keep_set:
            positions[i] = target.var_index(v)
    kept_polys = []
    for g in basis:
        if all(all(e[i] == 0 for i in elim_idx) for e in g.terms):
            mapped = {}
            for exps, c in g.terms.items():
                t = [0] * target.n
                for i, e in enumerate(exps):
                    if e:
                        t[positions[i]] = e
                mapped[tuple(t)] = c
            kept_polys.append(Polynomial(target, mapped, _clean=True))
    kept_polys.sort(key=poly_sort_key)
    return Ideal(target, kept_polys)


def radical_member(f: Polynomial, ideal: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether some power of f lies in the ideal (Rabinowitsch trick)."""
    if f.is_zero():
        return True
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal rings differ")
    ring = f.ring
    name = "t"
    while name in ring.variables:
        name += "_"
    ext = ring.extend(name)
    positions = tuple(range(ring.n))
    gens = [g.embed(ext, positions) for g in ideal.gens]
    t = Polynomial.variable(ext, name)
    gens.append(Polynomial.one(ext) - t * f.embed(ext, positions))
    return Ideal(ext, gens).is_unit_ideal(limits)
