"""Independent brute-force validators.

Every derived constant in the test suite is confirmed by one of these
routines.  They are deliberately algorithmically disjoint from the main
path: dense dictionaries instead of the sparse Polynomial arithmetic,
Gaussian elimination instead of Groebner bases, and explicit constraint
systems instead of the component combinatorics of the Cartier layer.
Agreement between the two routes is evidence, not tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .errors import BoxExceededError, DegreeCapError, RingMismatchError
from .groebner import Ideal, poly_sort_key
from .limits import DEFAULT_LIMITS, Limits
from .poly import GREVLEX, Polynomial, PolyRing
from .summand import SplitEmbedding, _as_poly_tuple, presentation

Vector = Tuple[int, ...]


# -- dense nu --------------------------------------------------------------


def _dense_mul(a: Dict[Vector, int], b: Dict[Vector, int], p: int) -> Dict[Vector, int]:
    out: Dict[Vector, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            c = (out.get(m, 0) + ca * cb) % p
            if c:
                out[m] = c
            elif m in out:
                del out[m]
    return out


def nu_dense(f: Polynomial, a, p: int, e: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """Largest t with f^t outside a^[p^e], by full expansion of every power.

    The ideal a must be monomial; membership of the dense expansion is then
    a termwise divisibility scan against the p^e-scaled exponents.
    """
    if f.ring.p != p:
        raise RingMismatchError(f"f lives over F_{f.ring.p}, oracle called with p={p}")
    if f.is_zero():
        raise ValueError("nu oracle needs a nonzero polynomial")
    if e < 1:
        raise ValueError("level e must be positive")
    gens = _as_poly_tuple(a, f.ring)
    if not gens:
        raise ValueError("nu oracle needs a nonzero ideal a")
    exps: List[Vector] = []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_monomial():
            raise ValueError("nu oracle handles monomial ideals a only")
        exps.append(next(iter(g.terms)))
    q = p ** e
    scaled = [tuple(q * c for c in b) for b in exps]

    def member(poly: Dict[Vector, int]) -> bool:
        for m in poly:
            if not any(all(x >= y for x, y in zip(m, b)) for b in scaled):
                return False
        return True

    base = dict(f.terms)
    power = dict(base)
    deg_f = f.total_degree()
    t = 1
    while not member(power):
        t += 1
        if t * deg_f > limits.oracle_degree:
            raise DegreeCapError(
                f"dense power degree {t * deg_f} exceeds oracle cap {limits.oracle_degree}"
            )
        power = _dense_mul(power, base, p)
    return t - 1


# -- dense e-th root -------------------------------------------------------


def _echelon_reduce(row: Dict[Vector, int], echelon: Dict[Vector, Dict[Vector, int]],
                    p: int) -> Dict[Vector, int]:
    key = GREVLEX.key
    while row:
        piv = max(row, key=key)
        pivot_row = echelon.get(piv)
        if pivot_row is None:
            return row
        c = row[piv]
        for m, v in pivot_row.items():
            nv = (row.get(m, 0) - c * v) % p
            if nv:
                row[m] = nv
            elif m in row:
                del row[m]
    return row


def _echelon_insert(row: Dict[Vector, int], echelon: Dict[Vector, Dict[Vector, int]], p: int):
    piv = max(row, key=GREVLEX.key)
    inv = pow(row[piv], -1, p)
    echelon[piv] = {m: (c * inv) % p for m, c in row.items()}


def eth_root_dense(I, p: int, e: int, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """Smallest ideal b with I contained in b^[p^e], via full decomposition.

    Splits every generator's exponents as m = b + p^e * k over the residue
    box [0, p^e)^n, collects the quotient components, and prunes redundant
    generators by Gaussian elimination on bounded-degree monomial multiples
    rather than by Groebner reduction.
    """
    if e < 1:
        raise ValueError("level e must be positive")
    if isinstance(I, Ideal):
        ring, gens = I.ring, [g for g in I.gens if not g.is_zero()]
    else:
        all_gens = tuple(I)
        if not all_gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        ring = all_gens[0].ring
        for g in all_gens:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise RingMismatchError("generators must live in one ring")
        gens = [g for g in all_gens if not g.is_zero()]
    if not gens:
        return Ideal(ring, ())
    if ring.p != p:
        raise RingMismatchError(f"ideal lives over F_{ring.p}, oracle called with p={p}")
    q = p ** e
    for g in gens:
        if g.total_degree() > limits.oracle_degree:
            raise DegreeCapError(
                f"generator degree {g.total_degree()} exceeds oracle cap {limits.oracle_degree}"
            )
    candidates: List[Polynomial] = []
    for g in gens:
        components: Dict[Vector, Dict[Vector, int]] = {}
        for m, c in g.terms.items():
            residue = tuple(x % q for x in m)
            quotient = tuple(x // q for x in m)
            comp = components.setdefault(residue, {})
            comp[quotient] = (comp.get(quotient, 0) + c) % p
        for comp in components.values():
            f = Polynomial(ring, {m: c for m, c in comp.items() if c})
            if not f.is_zero():
                candidates.append(f)
    candidates.sort(key=poly_sort_key)

    n = len(ring.variables)

    def monomials_up_to(d: int) -> List[Vector]:
        out: List[Vector] = []

        def rec(prefix: Tuple[int, ...], remaining: int, slots: int):
            if slots == 0:
                out.append(prefix)
                return
            for v in range(remaining + 1):
                rec(prefix + (v,), remaining - v, slots - 1)

        rec((), d, n)
        return out

    kept: List[Polynomial] = []
    for f in candidates:
        deg = f.total_degree()
        echelon: Dict[Vector, Dict[Vector, int]] = {}
        for h in kept:
            hd = h.total_degree()
            if hd > deg:
                continue
            for m in monomials_up_to(deg - hd):
                prod = h.mul_monomial(m)
                row = _echelon_reduce(dict(prod.terms), echelon, p)
                if row:
                    _echelon_insert(row, echelon, p)
        residue = _echelon_reduce(dict(f.terms), echelon, p)
        if residue:
            kept.append(f)
    return Ideal(ring, tuple(kept))


# -- dense Cartier piece solver --------------------------------------------


@dataclass(frozen=True)
class PieceSolution:
    """Nullspace of the scalar constraint system for one shift on one box."""

    w: Vector
    box: int
    members: Tuple[Vector, ...]
    dimension: int
    basis: Tuple[Dict[Vector, int], ...]

    def supports(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(vec) for vec in self.basis)


def _solve_piece(emb: SplitEmbedding, q: int, w: Vector, box: int,
                 limits: Limits) -> PieceSolution:
    emb.ensure_box(box, limits)
    p = emb.ring.p
    sg = emb.semigroup
    tset = emb._table_set
    members = sorted(
        m for m in emb._table
        if max(m) <= box and all((mi + wi) % q == 0 for mi, wi in zip(m, w))
    )
    index = {m: i for i, m in enumerate(members)}
    nvars = len(members)

    def target_in_sigma(m: Vector) -> bool:
        t = tuple((mi + wi) // q for mi, wi in zip(m, w))
        if min(t) < 0:
            return False
        return (t in tset) if max(t) <= emb.box else sg.lattice_member(t)

    valid = [target_in_sigma(m) for m in members]
    qgens = [tuple(q * gi for gi in g) for g in sg.gens]
    rows: List[Dict[int, int]] = []
    for i, m in enumerate(members):
        if not valid[i]:
            rows.append({i: 1})
        for qg in qgens:
            up = tuple(a + b for a, b in zip(m, qg))
            j = index.get(up)
            if j is None:
                continue
            if valid[i]:
                # the scalar must propagate along multiplication by the generator
                rows.append({i: p - 1, j: 1} if i != j else {})
            else:
                # a vanishing scalar forces its multiples to vanish too
                rows.append({j: 1})
    rows = [r for r in rows if r]

    # Gaussian elimination over F_p to reduced row echelon form
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            piv = min(row)
            existing = pivots.get(piv)
            if existing is None:
                inv = pow(row[piv], -1, p)
                pivots[piv] = {k: (v * inv) % p for k, v in row.items()}
                break
            c = row[piv]
            for k, v in existing.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                elif k in row:
                    del row[k]
    # back-substitute to make pivot rows mutually reduced
    for piv in sorted(pivots, reverse=True):
        row = pivots[piv]
        for other_piv, other_row in pivots.items():
            if other_piv >= piv or piv not in other_row:
                continue
            c = other_row[piv]
            for k, v in row.items():
                nv = (other_row.get(k, 0) - c * v) % p
                if nv:
                    other_row[k] = nv
                elif k in other_row:
                    del other_row[k]

    free = [i for i in range(nvars) if i not in pivots]
    basis: List[Dict[Vector, int]] = []
    for i in free:
        vec = {i: 1}
        for piv, row in pivots.items():
            c = row.get(i)
            if c:
                vec[piv] = (-c) % p
        basis.append({members[k]: v for k, v in vec.items() if v})
    return PieceSolution(w, box, tuple(members), len(free), tuple(basis))


def cartier_piece_solver(emb: SplitEmbedding, e: int, w: Vector, box: int,
                         limits: Limits = DEFAULT_LIMITS) -> PieceSolution:
    """Solve the scalar system for shift w on [0, box]^n, with a growth check.

    The solution is accepted only if doubling the box leaves the dimension
    and the restrictions of the solution supports unchanged; otherwise the
    box was too small to see the stable answer.
    """
    q = emb.ring.p ** e
    if len(w) != emb.semigroup.n:
        raise ValueError("shift length does not match the ambient dimension")
    small = _solve_piece(emb, q, w, box, limits)
    large = _solve_piece(emb, q, w, 2 * box, limits)
    restricted = sorted(
        trimmed
        for trimmed in (
            frozenset(m for m in sup if max(m) <= box) for sup in large.supports()
        )
        if trimmed
    )
    if sorted(small.supports()) != restricted:
        raise BoxExceededError(
            f"piece solution for shift {w} changed between box {box} and {2 * box}"
        )
    return small


# -- transport through a free presentation ---------------------------------


_TARGET_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class TransportIso:
    """Isomorphism R -> polynomial ring available when the toric ideal is zero."""

    emb: SplitEmbedding
    target: PolyRing
    names: Tuple[str, ...]

    def to_target(self, f: Polynomial) -> Polynomial:
        lifted = presentation(self.emb).lift(f)
        return Polynomial(self.target, dict(lifted.terms), _clean=True)

    def to_source(self, g: Polynomial) -> Polynomial:
        if g.ring != self.target:
            raise RingMismatchError("polynomial does not live in the transport target ring")
        pres = presentation(self.emb)
        return pres.unlift(Polynomial(pres.ring, dict(g.terms), _clean=True))


def transport_iso(emb: SplitEmbedding, limits: Limits = DEFAULT_LIMITS) -> TransportIso:
    """Build the isomorphism to a polynomial ring; requires zero toric ideal."""
    from .summand import presentation

    pres = presentation(emb, limits)
    if pres.toric.gens:
        raise ValueError(
            "transport requires a free presentation; toric ideal is nonzero"
        )
    r = len(emb.semigroup.gens)
    if r <= len(_TARGET_LETTERS):
        names = tuple(_TARGET_LETTERS[:r])
    else:
        names = tuple(f"a{i}" for i in range(1, r + 1))
    target = PolyRing(emb.ring.p, names)
    return TransportIso(emb, target, names)


def transport(obj, iso: TransportIso, back: bool = False):
    """Move a polynomial or ideal across the isomorphism (back=True inverts)."""
    move = iso.to_source if back else iso.to_target
    if isinstance(obj, Polynomial):
        return move(obj)
    if isinstance(obj, Ideal):
        return Ideal(iso.emb.ring if back else iso.target,
                     tuple(move(g) for g in obj.gens))
    gens = tuple(obj)
    return tuple(move(g) for g in gens)
