"""Cartier operators on semigroup summands via monomial shift maps.

A p^{-e}-linear operator from R to R that respects the Z^n-grading acts on
monomials by x^m -> x^{(m+w)/q} for a fixed shift w in G(Sigma), q = p^e,
whenever the target exponent is integral and stays in Sigma.  Linearity
over R forces the scalar attached to m to agree along translations by q
times a generator, and forces it to zero where a translation enters Sigma
from outside; solving those constraints on the certified box turns each
admissible shift into finitely many operators, one per surviving
translation component.  Images of ideals under all such operators are the
level-e Cartier images the invariants are built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .errors import BoxExceededError, PurityError, ResourceLimitError
from .groebner import poly_sort_key
from .lattice import lattice_points_in_box
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial
from .summand import SplitEmbedding, _as_poly_tuple, r_ideal_equal

Vector = Tuple[int, ...]


def _residue_buckets(emb: SplitEmbedding, q: int, bound: int) -> Dict[Vector, List[Vector]]:
    buckets: Dict[Vector, List[Vector]] = {}
    for m in emb._table:
        if max(m) > bound:
            continue
        key = tuple(c % q for c in m)
        buckets.setdefault(key, []).append(m)
    return buckets


class _ShiftAnalysis:
    """Constraint solution for one shift w on the current box.

    valid maps each class member whose target exponent stays in Sigma to
    that target; alive holds the translation components whose scalar
    remains free, dead the members of zero-forced components.
    """

    __slots__ = ("w", "valid", "alive", "dead")

    def __init__(self, w: Vector, valid: Dict[Vector, Vector],
                 alive: Tuple[Tuple[Vector, ...], ...], dead: Set[Vector]):
        self.w = w
        self.valid = valid
        self.alive = alive
        self.dead = dead


def _analyze_shift(emb: SplitEmbedding, q: int, w: Vector,
                   buckets: Dict[Vector, List[Vector]]) -> _ShiftAnalysis:
    key = tuple((-wi) % q for wi in w)
    members = buckets.get(key)
    if not members:
        return _ShiftAnalysis(w, {}, (), set())
    tset = emb._table_set
    box = emb.box
    sg = emb.semigroup
    lattice = sg.lattice_member
    valid: Dict[Vector, Vector] = {}
    for m in members:
        t = tuple((mi + wi) // q for mi, wi in zip(m, w))
        if min(t) >= 0 and ((t in tset) if max(t) <= box else lattice(t)):
            valid[m] = t
    if not valid:
        return _ShiftAnalysis(w, valid, (), set())
    qgens = [tuple(q * gi for gi in g) for g in sg.gens]
    # connected components under m ~ m + q*g within the box
    comp: Dict[Vector, int] = {}
    comps: List[List[Vector]] = []
    for m in valid:
        if m in comp:
            continue
        idx = len(comps)
        comp[m] = idx
        stack = [m]
        collected: List[Vector] = []
        while stack:
            cur = stack.pop()
            collected.append(cur)
            for qg in qgens:
                up = tuple(c + d for c, d in zip(cur, qg))
                if up in valid and up not in comp:
                    comp[up] = idx
                    stack.append(up)
                down = tuple(c - d for c, d in zip(cur, qg))
                if down in valid and down not in comp:
                    comp[down] = idx
                    stack.append(down)
        comps.append(collected)
    # a component dies if any member has a Sigma-parent whose target left Sigma
    dead_idx: Set[int] = set()
    for idx, collected in enumerate(comps):
        alive_flag = True
        for m in collected:
            t = valid[m]
            for g, qg in zip(sg.gens, qgens):
                if any(ti < gi for ti, gi in zip(t, g)):
                    parent = tuple(c - d for c, d in zip(m, qg))
                    if min(parent) >= 0 and parent in tset:
                        alive_flag = False
                        break
            if not alive_flag:
                break
        if not alive_flag:
            dead_idx.add(idx)
    alive = tuple(
        tuple(sorted(collected))
        for idx, collected in enumerate(comps)
        if idx not in dead_idx
    )
    dead = {m for idx, collected in enumerate(comps) if idx in dead_idx for m in collected}
    return _ShiftAnalysis(w, valid, alive, dead)


class ToricCartierMap:
    """One monomial shift operator x^m -> x^{(m+w)/q} with its zero mask.

    The action is certified on exponents inside the stored box: a class
    member acts through the rule only when it avoids zero_mask; members of
    other translation components belong to sibling maps.
    """

    __slots__ = ("emb", "e", "w", "support", "zero_mask", "box")

    def __init__(self, emb: SplitEmbedding, e: int, w: Vector,
                 support: FrozenSet[Vector], zero_mask: FrozenSet[Vector], box: int):
        self.emb = emb
        self.e = e
        self.w = w
        self.support = support
        self.zero_mask = zero_mask
        self.box = box

    @property
    def q(self) -> int:
        return self.emb.ring.p ** self.e

    def apply(self, f: Polynomial) -> Polynomial:
        """Image of an R-element; exponents must lie inside the certified box."""
        emb = self.emb
        emb.require_poly(f)
        q = self.q
        p = emb.ring.p
        out: Dict[Vector, int] = {}
        for m, c in f.terms.items():
            if max(m) > self.box:
                raise BoxExceededError(
                    f"exponent {m} exceeds the map's certified box {self.box}"
                )
            if m not in self.support:
                continue
            t = tuple((mi + wi) // q for mi, wi in zip(m, self.w))
            out[t] = (out.get(t, 0) + c) % p
        return Polynomial(emb.ring, {k: v for k, v in out.items() if v})

    def __repr__(self):
        return f"ToricCartierMap(e={self.e}, w={self.w}, support={len(self.support)} pts)"


def _window_shifts(emb: SplitEmbedding, window: int, limits: Limits) -> List[Vector]:
    sg = emb.semigroup
    lo = (-window,) * sg.n
    hi = (window,) * sg.n
    pts = lattice_points_in_box(sg.hbasis, sg.hpivots, lo, hi, limits.purity_points)
    pts.sort(key=lambda w: (sum(abs(c) for c in w), w))
    return pts


def enumerate_maps(
    emb: SplitEmbedding,
    e: int,
    degree_window: Optional[int] = None,
    limits: Limits = DEFAULT_LIMITS,
) -> Tuple[ToricCartierMap, ...]:
    """All shift operators with window-bounded shifts, one per alive component.

    The constraint analysis runs on the purity box and is accepted only
    once a box-doubling step leaves the component structure of every shift
    unchanged on the smaller box; otherwise the box grows and the check
    repeats, up to the growth-step limit.
    """
    if not emb.verified:
        raise PurityError("embedding is not purity-verified", witness=emb.witness)
    q = emb.ring.p ** e
    if q > limits.max_q:
        raise ResourceLimitError(f"p^e = {q} exceeds cap {limits.max_q}")
    sg = emb.semigroup
    max_coord = max(max(g) for g in sg.gens)
    window = degree_window if degree_window is not None else q * (max_coord + 1)
    cache_key = (e, window)
    hit = emb._maps_cache.get(cache_key)
    if hit is not None:
        return hit

    shifts = _window_shifts(emb, window, limits)
    base_box = max(emb.box, q * (max_coord + 1))

    def snapshot(box: int) -> Dict[Vector, _ShiftAnalysis]:
        emb.ensure_box(box, limits)
        buckets = _residue_buckets(emb, q, box)
        return {w: _analyze_shift(emb, q, w, buckets) for w in shifts}

    box = base_box
    for _ in range(limits.box_growth_steps):
        small = snapshot(box)
        large = snapshot(2 * box)
        stable = True
        for w in shifts:
            a, b = small[w], large[w]
            restricted = [
                members
                for members in (
                    tuple(m for m in comp if max(m) <= box) for comp in b.alive
                )
                if members
            ]
            if sorted(a.alive) != sorted(restricted):
                stable = False
                break
            if a.dead != {m for m in b.dead if max(m) <= box}:
                stable = False
                break
        if stable:
            maps = []
            for w in shifts:
                analysis = large[w]
                valid_set = set(analysis.valid)
                for members in analysis.alive:
                    support = frozenset(members)
                    mask = frozenset(valid_set - support)
                    maps.append(ToricCartierMap(emb, e, w, support, mask, 2 * box))
            maps.sort(key=lambda m: (sum(abs(c) for c in m.w), m.w, min(m.support)))
            result = tuple(maps)
            emb._maps_cache[cache_key] = result
            return result
        box *= 2
    raise BoxExceededError(
        f"shift constraint systems did not stabilize within {limits.box_growth_steps} box doublings"
    )


# -- images of ideals ------------------------------------------------------


@dataclass(frozen=True)
class CartierImage:
    """Level-e Cartier image of an ideal of R, with its certificate data."""

    source: Tuple[Polynomial, ...]
    e: int
    generators: Tuple[Polynomial, ...]
    box: int
    stable: bool
    exact_slab: bool = True

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators


def _slab_points(emb: SplitEmbedding, q: int, deg_cap: int, limits: Limits) -> Tuple[List[Vector], bool]:
    """Monomials of Sigma, of degree below deg_cap, with no q-th generator
    power dividing them inside Sigma.

    Sweeping operator images of x^s * g over these s generates the same
    ideal as sweeping all of Sigma: any other multiplier splits off whole
    q*v_i steps, which operators convert into R-multiples.  Every such
    monomial has degree below q * (sum of generator degrees); the returned
    flag says whether deg_cap already reaches that bound, making the slab
    exact rather than a stabilization stage.
    """
    sg = emb.semigroup
    full_bound = q * sum(sum(v) for v in sg.gens)
    bound = min(deg_cap, full_bound)
    emb.ensure_box(bound, limits)
    out = []
    for m in emb._table:
        if sum(m) >= bound:
            continue
        keep = True
        for v in sg.gens:
            down = tuple(c - q * vi for c, vi in zip(m, v))
            if min(down) >= 0 and emb.contains_exponent(down):
                keep = False
                break
        if keep:
            out.append(m)
    return out, bound >= full_bound


def _monic(f: Polynomial) -> Polynomial:
    lead = f.leading_coefficient()
    if lead in (0, 1):
        return f
    return f.scale(pow(lead, -1, f.ring.p))


def _sweep_image(
    gens: Tuple[Polynomial, ...],
    emb: SplitEmbedding,
    e: int,
    target_bound: int,
    slab_cap: int,
    box_pad: int,
    limits: Limits,
) -> Tuple[Tuple[Polynomial, ...], int, bool]:
    """One pass of the anchor/target sweep: (generators, box, slab-exact)."""
    ring = emb.ring
    p = ring.p
    q = p ** e
    sg = emb.semigroup
    slab, exact = _slab_points(emb, q, slab_cap, limits)
    max_gen_coord = max(max(v) for v in sg.gens)
    slab_max = max((max(m) for m in slab), default=0)
    gen_max = max(g.max_exponent() for g in gens)
    box = slab_max + gen_max + q * max_gen_coord + 1 + box_pad
    emb.ensure_box(box, limits)
    buckets = _residue_buckets(emb, q, box)

    targets = [t for t in emb._table if max(t) <= target_bound]
    targets.sort(key=lambda t: (sum(t), t))

    analyses: Dict[Vector, _ShiftAnalysis] = {}

    found: List[Polynomial] = []
    found_keys = set()
    found_monomials: List[Vector] = []
    contains = emb.contains_exponent

    def dominated(t: Vector) -> bool:
        for b in found_monomials:
            diff = tuple(a - c for a, c in zip(t, b))
            if min(diff) >= 0 and contains(diff):
                return True
        return False

    def add(img: Polynomial) -> bool:
        """Record a generator; True means the image is already the unit ideal."""
        img = _monic(img)
        key = tuple(sorted(img.terms.items()))
        if key in found_keys:
            return False
        found_keys.add(key)
        found.append(img)
        if img.is_constant():
            return True
        if img.is_monomial():
            found_monomials.append(next(iter(img.terms)))
        return False

    for m in slab:
        for g in gens:
            h = g.mul_monomial(m)
            terms = h.terms
            if not terms:
                continue
            single = len(terms) == 1
            seen_w = set()
            for sigma in terms:
                for t in targets:
                    w = tuple(q * ti - si for ti, si in zip(t, sigma))
                    if w in seen_w:
                        continue
                    seen_w.add(w)
                    if single and dominated(t):
                        continue
                    analysis = analyses.get(w)
                    if analysis is None:
                        analysis = _analyze_shift(emb, q, w, buckets)
                        analyses[w] = analysis
                    for members in analysis.alive:
                        img_terms: Dict[Vector, int] = {}
                        for s2 in members:
                            c2 = terms.get(s2)
                            if c2 is None:
                                continue
                            tgt = tuple((a + b) // q for a, b in zip(s2, w))
                            cur = img_terms.get(tgt, 0) + c2
                            img_terms[tgt] = cur % p
                        img_terms = {k: v for k, v in img_terms.items() if v}
                        if not img_terms:
                            continue
                        if add(Polynomial(ring, img_terms, _clean=True)):
                            return (Polynomial.one(ring),), box, True

    # drop generators that are R-monomial multiples of an earlier generator;
    # all entries are monic, so matching the lead monomial settles the scale
    found.sort(key=poly_sort_key)
    kept: List[Polynomial] = []
    for f in found:
        lm_f = f.leading_monomial()
        redundant = False
        for h in kept:
            diff = tuple(a - b for a, b in zip(lm_f, h.leading_monomial()))
            if min(diff) >= 0 and contains(diff) and h.mul_monomial(diff).terms == f.terms:
                redundant = True
                break
        if redundant:
            continue
        kept.append(f)
    return tuple(kept), box, exact


def cartier_image(
    J,
    emb: SplitEmbedding,
    e: int,
    limits: Limits = DEFAULT_LIMITS,
) -> CartierImage:
    """The ideal generated by all level-e operator images of J inside R.

    Sweeps operators through anchor terms and candidate targets over the
    slab of module generators, then repeats with doubled slab depth, box
    and target window until two passes agree as R-ideals; the stability
    flag records whether agreement was reached.
    """
    if not emb.verified:
        raise PurityError("embedding is not purity-verified", witness=emb.witness)
    q = emb.ring.p ** e
    if q > limits.max_q:
        raise ResourceLimitError(f"p^e = {q} exceeds cap {limits.max_q}")
    gens = tuple(g for g in _as_poly_tuple(J, emb.ring) if not g.is_zero())
    for g in gens:
        emb.require_poly(g)
    if not gens:
        return CartierImage((), e, (), emb.box, True)

    sg = emb.semigroup
    gen_max = max(g.max_exponent() for g in gens)
    target_bound = gen_max // q + max(max(v) for v in sg.gens) + 1
    slab_cap = max(q, 2 * sg.max_gen_degree) + 1
    pad = 0

    current, box, exact = _sweep_image(gens, emb, e, target_bound, slab_cap, pad, limits)
    if len(current) == 1 and current[0].is_constant():
        return CartierImage(gens, e, current, box, True)
    for _ in range(limits.box_growth_steps):
        target_bound *= 2
        slab_cap *= 2
        pad = box
        wider, box2, exact2 = _sweep_image(gens, emb, e, target_bound, slab_cap, pad, limits)
        if len(wider) == 1 and wider[0].is_constant():
            return CartierImage(gens, e, wider, box2, True)
        if r_ideal_equal(current, wider, emb, limits):
            return CartierImage(gens, e, wider, box2, True, exact_slab=exact2)
        current, box, exact = wider, box2, exact2
    return CartierImage(gens, e, current, box, False, exact_slab=exact)


def d_image_equal_R(J1, J2, emb: SplitEmbedding, e: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Compare level-e Cartier images of two R-ideals inside R."""
    img1 = cartier_image(J1, emb, e, limits)
    img2 = cartier_image(J2, emb, e, limits)
    return r_ideal_equal(img1.generators, img2.generators, emb, limits)
