"""Affine semigroup subrings presented as direct summands.

R = F_p[x^{v_1}, ..., x^{v_r}] sits inside S = F_p[x_1, ..., x_n] as the
span of the monomials whose exponents lie in the semigroup Sigma generated
by the v_i.  When Sigma is pure, i.e. equals the intersection of its group
G(Sigma) with the nonnegative orthant, the coordinate projection beta that
drops every monomial outside Sigma is an R-linear splitting of the
inclusion; purity is certified here on a finite coordinate box and the
certificate is carried by the embedding.  Rejected embeddings keep a
witness vector (a point of G(Sigma) in the orthant that no generator
combination reaches).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BoxExceededError,
    NotInSemigroupError,
    PurityError,
    RingMismatchError,
)
from .groebner import Ideal, eliminate, normal_form
from .lattice import (
    hermite_basis,
    lattice_membership_test,
    lattice_points_in_box,
    smith_normal_form,
)
from .limits import DEFAULT_LIMITS, Limits
from .poly import Exponents, PolyRing, Polynomial

Vector = Tuple[int, ...]


class AffineSemigroup:
    """Finitely generated subsemigroup of N^n together with its lattice data."""

    __slots__ = ("n", "gens", "diag", "vmat", "rank", "hbasis", "hpivots", "_member")

    def __init__(self, gens: Iterable[Sequence[int]]):
        rows: List[Vector] = []
        for g in gens:
            v = tuple(int(c) for c in g)
            if not v:
                raise ValueError("empty generator vector")
            if min(v) < 0:
                raise ValueError(f"generator {v} has a negative entry")
            if not any(v):
                raise ValueError("semigroup generators must be nonzero")
            rows.append(v)
        if not rows:
            raise ValueError("at least one semigroup generator required")
        n = len(rows[0])
        if any(len(v) != n for v in rows):
            raise ValueError("generators must share one ambient dimension")
        if len(set(rows)) != len(rows):
            raise ValueError("generators must be pairwise distinct")
        self.n = n
        self.gens = tuple(rows)
        self.diag, self.vmat = smith_normal_form(self.gens)
        self.rank = len(self.diag)
        self.hbasis, self.hpivots = hermite_basis(self.gens)
        self._member = lattice_membership_test(self.diag, self.vmat, self.rank, n)

    def lattice_member(self, vec: Sequence[int]) -> bool:
        """Whether vec lies in the group G(Sigma) generated by the generators."""
        return self._member(tuple(vec))

    @property
    def max_gen_degree(self) -> int:
        return max(sum(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, AffineSemigroup) and self.gens == other.gens

    def __hash__(self):
        return hash(("AffineSemigroup", self.gens))

    def __repr__(self):
        return f"AffineSemigroup({list(self.gens)!r})"


@dataclass(frozen=True)
class PurityCertificate:
    box: int
    points_checked: int
    verified: bool
    witness: Optional[Vector]


def _box_points(semigroup: AffineSemigroup, bound: int, limits: Limits) -> List[Vector]:
    lo = (0,) * semigroup.n
    hi = (bound,) * semigroup.n
    pts = lattice_points_in_box(semigroup.hbasis, semigroup.hpivots, lo, hi, limits.purity_points)
    pts.sort(key=lambda m: (sum(m), m))
    return pts


def _verify_box(semigroup: AffineSemigroup, bound: int, limits: Limits):
    """DP over the lattice points of the box, ascending by degree.

    Returns (points, members, witness).  Every processed point is either
    confirmed in Sigma (reachable by a generator step from a confirmed
    point) or returned as the purity witness.  When witness is None the
    whole of G(Sigma) ∩ N^n ∩ box lies in Sigma.
    """
    pts = _box_points(semigroup, bound, limits)
    members = set()
    gens = semigroup.gens
    for m in pts:
        if not any(m):
            members.add(m)
            continue
        ok = False
        for g in gens:
            prev = tuple(a - b for a, b in zip(m, g))
            if min(prev) >= 0 and prev in members:
                ok = True
                break
        if not ok:
            return pts, members, m
        members.add(m)
    return pts, members, None


class SplitEmbedding:
    """A semigroup subring R ⊆ S with a box-certified purity status.

    Carries the Sigma membership table on the certified box, the greedy
    decomposition cache, and lazily built presentation data.  Instances are
    immutable apart from write-once caches and box growth.
    """

    def __init__(self, ring: PolyRing, semigroup: AffineSemigroup):
        if semigroup.n != ring.n:
            raise RingMismatchError(
                f"semigroup lives in N^{semigroup.n} but ring has {ring.n} variables"
            )
        self.ring = ring
        self.semigroup = semigroup
        self.verified = False
        self.witness: Optional[Vector] = None
        self.box = 0
        self.points_checked = 0
        self._table: List[Vector] = []
        self._table_set = frozenset()
        self._decomp_cache: Dict[Vector, Tuple[int, ...]] = {}
        self._presentation = None
        self._lift_ideal_cache: Dict[Tuple, Ideal] = {}
        self._maps_cache: Dict[Tuple, tuple] = {}

    # -- purity ---------------------------------------------------------

    @property
    def certificate(self) -> PurityCertificate:
        return PurityCertificate(self.box, self.points_checked, self.verified, self.witness)

    def _grow(self, bound: int, limits: Limits) -> None:
        pts, members, witness = _verify_box(self.semigroup, bound, limits)
        self.points_checked = len(pts)
        if witness is not None:
            self.verified = False
            self.witness = witness
            self.box = bound
            return
        self.verified = True
        self.witness = None
        self.box = bound
        self._table = pts
        self._table_set = frozenset(members)

    def ensure_box(self, bound: int, limits: Limits = DEFAULT_LIMITS) -> None:
        """Grow the certified box to at least `bound`, re-verifying purity."""
        if not self.verified:
            raise PurityError("embedding is not purity-verified", witness=self.witness)
        if bound <= self.box:
            return
        self._grow(bound, limits)
        if not self.verified:
            raise PurityError(
                f"purity fails beyond the original box: witness {self.witness}",
                witness=self.witness,
            )

    # -- membership -----------------------------------------------------

    def contains_exponent(self, m: Sequence[int]) -> bool:
        """Sigma membership: lattice test plus nonnegativity (needs purity)."""
        if not self.verified:
            raise PurityError("embedding is not purity-verified", witness=self.witness)
        m = tuple(m)
        if min(m) < 0:
            return False
        if max(m) <= self.box:
            return m in self._table_set
        return self.semigroup.lattice_member(m)

    def contains_poly(self, f: Polynomial) -> bool:
        return all(self.contains_exponent(m) for m in f.terms)

    def require_poly(self, f: Polynomial) -> None:
        if f.ring != self.ring:
            raise RingMismatchError("polynomial does not live in the ambient ring")
        for m in f.terms:
            if not self.contains_exponent(m):
                raise NotInSemigroupError(f"monomial exponent {m} is not in the semigroup")

    def sigma_points(self, bound: int, limits: Limits = DEFAULT_LIMITS) -> List[Vector]:
        """Sigma ∩ [0, bound]^n sorted by (degree, tuple)."""
        self.ensure_box(bound, limits)
        if bound == self.box:
            return list(self._table)
        return [m for m in self._table if max(m) <= bound]

    def __repr__(self):
        status = "verified" if self.verified else f"rejected witness={self.witness}"
        return f"SplitEmbedding({self.ring}, gens={list(self.semigroup.gens)}, {status})"


def build_embedding(
    gens: Iterable[Sequence[int]],
    ring: PolyRing,
    box: Optional[int] = None,
    limits: Limits = DEFAULT_LIMITS,
) -> SplitEmbedding:
    """Build R ⊆ S from exponent generators and certify purity on a box.

    Returns the embedding in both outcomes; check `verified` and `witness`.
    The box must be at least twice the maximal generator degree so that the
    certificate sees every interaction of two generators.
    """
    sg = AffineSemigroup(gens)
    floor = 2 * sg.max_gen_degree
    if box is None:
        box = max(floor, 8)
    elif box < floor:
        raise ValueError(f"box {box} is below the minimum {floor} (twice the max generator degree)")
    emb = SplitEmbedding(ring, sg)
    emb._grow(int(box), limits)
    return emb


# -- the splitting beta --------------------------------------------------


def beta_project(f: Polynomial, emb: SplitEmbedding) -> Polynomial:
    """Drop every monomial of f whose exponent is outside Sigma.

    The projection is only certified on the purity box, so every exponent
    of f must fit inside it; use ensure_box first for larger inputs.
    """
    if not emb.verified:
        raise PurityError("embedding is not purity-verified", witness=emb.witness)
    if f.ring != emb.ring:
        raise RingMismatchError("polynomial does not live in the ambient ring")
    kept = {}
    for m, c in f.terms.items():
        if max(m) > emb.box:
            raise BoxExceededError(
                f"exponent {m} exceeds the purity box {emb.box}; grow the box first"
            )
        if m in emb._table_set:
            kept[m] = c
    return Polynomial(emb.ring, kept)


# -- decomposition and the presentation ----------------------------------


def monomial_decompose(m: Sequence[int], emb: SplitEmbedding) -> Tuple[int, ...]:
    """Indices of generators summing to m, greedy by generator index.

    Greedy never dead-ends on a verified embedding: purity guarantees that
    from any nonzero member of Sigma some generator step stays in Sigma.
    """
    m = tuple(int(c) for c in m)
    if not emb.contains_exponent(m):
        raise NotInSemigroupError(f"{m} is not in the semigroup")
    cached = emb._decomp_cache.get(m)
    if cached is not None:
        return cached
    gens = emb.semigroup.gens
    out: List[int] = []
    cur = m
    trail: List[Vector] = []
    while any(cur):
        hit = emb._decomp_cache.get(cur)
        if hit is not None:
            out.extend(hit)
            break
        trail.append(cur)
        for i, g in enumerate(gens):
            prev = tuple(a - b for a, b in zip(cur, g))
            if min(prev) >= 0 and emb.contains_exponent(prev):
                out.append(i)
                cur = prev
                break
        else:
            raise NotInSemigroupError(f"{m} admits no generator decomposition")
    result = tuple(out)
    for k, seen in enumerate(trail):
        emb._decomp_cache.setdefault(seen, result[k:])
    return result


@dataclass(frozen=True)
class Presentation:
    """R ≅ F_p[y_1..y_r] / toric, with y_i ↦ x^{v_i}."""

    emb: SplitEmbedding
    ring: PolyRing
    names: Tuple[str, ...]
    toric: Ideal

    def lift(self, f: Polynomial) -> Polynomial:
        """Rewrite an R-element in the presentation variables."""
        emb = self.emb
        emb.require_poly(f)
        r = len(self.names)
        terms: Dict[Exponents, int] = {}
        for m, c in f.terms.items():
            counts = [0] * r
            for i in monomial_decompose(m, emb):
                counts[i] += 1
            key = tuple(counts)
            terms[key] = (terms.get(key, 0) + c) % self.ring.p
        return Polynomial(self.ring, {k: v for k, v in terms.items() if v})

    def unlift(self, g: Polynomial) -> Polynomial:
        """Substitute y_i = x^{v_i}, landing back in the ambient ring."""
        if g.ring != self.ring:
            raise RingMismatchError("polynomial does not live in the presentation ring")
        emb = self.emb
        gens = emb.semigroup.gens
        n = emb.ring.n
        terms: Dict[Exponents, int] = {}
        for a, c in g.terms.items():
            exp = [0] * n
            for i, mult in enumerate(a):
                if mult:
                    for j in range(n):
                        exp[j] += mult * gens[i][j]
            key = tuple(exp)
            terms[key] = (terms.get(key, 0) + c) % emb.ring.p
        return Polynomial(emb.ring, {k: v for k, v in terms.items() if v})


def _aux_names(ring: PolyRing, count: int) -> Tuple[str, ...]:
    for base in ("y", "t", "w", "aux"):
        names = tuple(f"{base}{i + 1}" for i in range(count))
        if not set(names) & set(ring.variables):
            return names
    return tuple(f"gen{i + 1}_" for i in range(count))


def presentation(emb: SplitEmbedding, limits: Limits = DEFAULT_LIMITS) -> Presentation:
    """Presentation of R by one variable per generator, with its toric ideal."""
    if emb._presentation is not None:
        return emb._presentation
    if not emb.verified:
        raise PurityError("embedding is not purity-verified", witness=emb.witness)
    ring = emb.ring
    gens = emb.semigroup.gens
    names = _aux_names(ring, len(gens))
    ext = PolyRing(ring.p, ring.variables + names)
    rels = []
    for i, v in enumerate(gens):
        aux = Polynomial.variable(ext, names[i])
        mono = Polynomial.monomial(ext, tuple(v) + (0,) * len(gens))
        rels.append(aux - mono)
    toric = eliminate(Ideal(ext, rels), names, limits)
    pres = Presentation(emb, toric.ring, names, toric)
    emb._presentation = pres
    return pres


# -- R-side ideal arithmetic ----------------------------------------------


def _as_poly_tuple(J, ring: PolyRing) -> Tuple[Polynomial, ...]:
    if isinstance(J, Ideal):
        if J.ring != ring:
            raise RingMismatchError("ideal does not live in the ambient ring")
        return J.gens
    gens = tuple(J)
    for g in gens:
        if not isinstance(g, Polynomial) or g.ring != ring:
            raise RingMismatchError("generators must be polynomials in the ambient ring")
    return tuple(g for g in gens if not g.is_zero())


def _monomial_exponents(gens: Sequence[Polynomial]) -> Optional[List[Vector]]:
    out = []
    for g in gens:
        if len(g.terms) != 1:
            return None
        out.append(next(iter(g.terms)))
    return out


def _monomial_r_member(m: Vector, gen_exps: Sequence[Vector], emb: SplitEmbedding) -> bool:
    for b in gen_exps:
        diff = tuple(a - c for a, c in zip(m, b))
        if min(diff) >= 0 and emb.contains_exponent(diff):
            return True
    return False


def _lifted_ideal(gens: Tuple[Polynomial, ...], emb: SplitEmbedding, limits: Limits) -> Ideal:
    key = gens
    hit = emb._lift_ideal_cache.get(key)
    if hit is not None:
        return hit
    pres = presentation(emb, limits)
    lifted = [pres.lift(g) for g in gens]
    ideal = Ideal(pres.ring, lifted + list(pres.toric.gens))
    emb._lift_ideal_cache[key] = ideal
    return ideal


def r_ideal_member(
    f: Polynomial,
    J,
    emb: SplitEmbedding,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Membership of f in the R-ideal generated by J (all data inside R)."""
    emb.require_poly(f)
    gens = _as_poly_tuple(J, emb.ring)
    for g in gens:
        emb.require_poly(g)
    if f.is_zero():
        return True
    if not gens:
        return False
    gen_exps = _monomial_exponents(gens)
    if gen_exps is not None:
        # monomial ideal of R: termwise divisibility within Sigma
        return all(_monomial_r_member(m, gen_exps, emb) for m in f.terms)
    pres = presentation(emb, limits)
    target = _lifted_ideal(gens, emb, limits)
    return normal_form(pres.lift(f), target, limits=limits).is_zero()


def r_ideal_contains(big, small, emb: SplitEmbedding, limits: Limits = DEFAULT_LIMITS) -> bool:
    small_gens = _as_poly_tuple(small, emb.ring)
    return all(r_ideal_member(g, big, emb, limits) for g in small_gens)


def r_ideal_equal(J1, J2, emb: SplitEmbedding, limits: Limits = DEFAULT_LIMITS) -> bool:
    g1 = _as_poly_tuple(J1, emb.ring)
    g2 = _as_poly_tuple(J2, emb.ring)
    if set(g1) == set(g2):
        return True
    return r_ideal_contains(g1, g2, emb, limits) and r_ideal_contains(g2, g1, emb, limits)
