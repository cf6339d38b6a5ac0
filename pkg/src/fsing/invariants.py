"""Frobenius invariants: nu values, threshold truncations, test ideals,
level-e jumping spectra, the summand candidate filter, and the cyclicity
witness.

Every routine works either in the ambient polynomial ring S (where="S") or
in a verified direct summand R (where=<SplitEmbedding>).  R-side membership
questions reduce to S-side ones through the splitting, so the two modes
share the same kernels; they differ in validation and in which Cartier
image operation drives the level ideals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cartier import CartierImage, cartier_image
from .errors import FsingError, RadicalHypothesisError, ResourceLimitError
from .frobenius import bracket_power, eth_root
from .groebner import (
    Ideal,
    ideal_contains,
    ideal_equal,
    ideal_member,
    ideal_power,
    normal_form,
    radical_member,
)
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial, PolyRing
from .summand import (
    SplitEmbedding,
    _as_poly_tuple,
    _monomial_exponents,
    r_ideal_contains,
    r_ideal_equal,
)

Where = Union[str, SplitEmbedding]


def _mode(where: Where) -> Tuple[str, Optional[SplitEmbedding]]:
    if isinstance(where, SplitEmbedding):
        return "R", where
    if where == "S":
        return "S", None
    raise ValueError(f"where must be 'S' or a SplitEmbedding, got {where!r}")


class _PowerCache:
    """Memoized powers of one polynomial, computed by repeated squaring."""

    def __init__(self, f: Polynomial):
        self.cache: Dict[int, Polynomial] = {0: Polynomial.one(f.ring), 1: f}

    def get(self, t: int) -> Polynomial:
        hit = self.cache.get(t)
        if hit is not None:
            return hit
        half = self.get(t // 2)
        result = half * half
        if t & 1:
            result = result * self.cache[1]
        self.cache[t] = result
        return result


_PRODUCT_CAP = 20_000


def _composition_products(caches: Sequence[_PowerCache], t: int, limits: Limits):
    """All degree-t products of the cached generators, one composition each."""
    r = len(caches)
    if comb(t + r - 1, r - 1) > _PRODUCT_CAP:
        raise ResourceLimitError(
            f"power {t} of a {r}-generator ideal needs too many products"
        )

    def rec(i: int, remaining: int, acc: Polynomial):
        if i == r - 1:
            yield acc * caches[i].get(remaining)
            return
        for k in range(remaining + 1):
            yield from rec(i + 1, remaining - k, acc * caches[i].get(k))

    one = Polynomial.one(caches[0].cache[1].ring)
    yield from rec(0, t, one)


class _BracketMembership:
    """Decides J^t subset-of a^[q] for varying t with shared caches."""

    def __init__(self, j_gens: Tuple[Polynomial, ...], a_gens: Tuple[Polynomial, ...],
                 e: int, limits: Limits):
        self.ring = j_gens[0].ring
        self.e = e
        self.q = self.ring.p ** e
        self.limits = limits
        self.caches = [_PowerCache(g) for g in j_gens]
        mono = _monomial_exponents(a_gens)
        if mono is not None:
            self.scaled: Optional[List[Tuple[int, ...]]] = [
                tuple(self.q * c for c in b) for b in mono
            ]
            self.bracket: Optional[Ideal] = None
        else:
            self.scaled = None
            self.bracket = bracket_power(Ideal(self.ring, a_gens), e, limits)

    def _member(self, h: Polynomial) -> bool:
        if h.is_zero():
            return True
        if self.scaled is not None:
            return all(
                any(all(x >= y for x, y in zip(m, b)) for b in self.scaled)
                for m in h.terms
            )
        return ideal_member(h, self.bracket, self.limits)

    def power_member(self, t: int) -> bool:
        if t == 0:
            return self._member(Polynomial.one(self.ring))
        if len(self.caches) == 1:
            return self._member(self.caches[0].get(t))
        return all(
            self._member(prod)
            for prod in _composition_products(self.caches, t, self.limits)
        )


@dataclass(frozen=True)
class NuResult:
    J: Tuple[Polynomial, ...]
    a: Tuple[Polynomial, ...]
    p: int
    e: int
    value: int
    ratio: Fraction
    where: str


@dataclass(frozen=True)
class ThresholdEstimate:
    chain: Tuple[Tuple[int, int, Fraction], ...]  # (e, nu, nu/p^e)
    monotone: bool
    value: Fraction
    where: str


@dataclass(frozen=True)
class TestIdealResult:
    I: Tuple[Polynomial, ...]
    lam: Fraction
    e_star: Optional[int]
    tau: Tuple[Polynomial, ...]
    chain: Tuple[Tuple[int, Tuple[Polynomial, ...]], ...]
    status: str  # "stabilized" or "inconclusive"
    ascending: bool
    where: str


@dataclass(frozen=True)
class JumpSpectrum:
    where: str
    source: Tuple[Polynomial, ...]
    e: int
    candidates: Tuple[Tuple[Fraction, Tuple[Polynomial, ...], Tuple[Polynomial, ...]], ...]
    refinement: Optional["JumpSpectrum"] = None
    windows: Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...] = ()

    def values(self) -> Tuple[Fraction, ...]:
        return tuple(lam for lam, _, _ in self.candidates)


@dataclass(frozen=True)
class SummandFilterReport:
    e: int
    entries: Tuple[Tuple[Fraction, bool], ...]  # (S-candidate, survives in R)
    survivors: Tuple[Fraction, ...]
    stable: bool


def _seed_bound(j_gens, a_ideal: Ideal, q: int, mu: int, limits: Limits) -> int:
    """Upper bound for the nu search from radical powers of the generators.

    If every generator's N-th power lies in a, then any product of
    r*N*(mu*(q-1)+1) generators has some factor in a^{mu*(q-1)+1}, which
    sits inside a^[q] by pigeonhole on the mu generators of a.
    """
    n_max = 1
    for g in j_gens:
        k = 1
        cache = _PowerCache(g)
        while not ideal_member(cache.get(k), a_ideal, limits):
            k *= 2
            if k > limits.max_power:
                raise ResourceLimitError("no generator power landed in a")
        n_max = max(n_max, k)
    return len(j_gens) * n_max * (mu * (q - 1) + 1)


def nu(J, a, e: int, where: Where = "S", limits: Limits = DEFAULT_LIMITS) -> NuResult:
    """Largest t with J^t not inside a^[p^e].

    Requires every generator of J to lie in the radical of a; membership is
    then eventually true and monotone in t, so a doubling scan capped by
    the pigeonhole seed followed by binary search is exact.  Both bounds
    are rechecked on the result before it is returned.
    """
    mode, emb = _mode(where)
    if e < 1:
        raise ValueError("level e must be positive")
    if isinstance(J, Polynomial):
        J = (J,)
    if isinstance(a, Polynomial):
        a = (a,)
    if mode == "R":
        ring = emb.ring
        j_gens = _as_poly_tuple(J, ring)
        a_gens = _as_poly_tuple(a, ring)
        for g in (*j_gens, *a_gens):
            emb.require_poly(g)
    else:
        j_gens = J.gens if isinstance(J, Ideal) else tuple(J)
        if not j_gens:
            raise ValueError("J must be a nonzero ideal")
        ring = j_gens[0].ring
        j_gens = _as_poly_tuple(J, ring)
        a_gens = _as_poly_tuple(a, ring)
    j_gens = tuple(g for g in j_gens if not g.is_zero())
    a_gens = tuple(g for g in a_gens if not g.is_zero())
    if not j_gens or not a_gens:
        raise ValueError("nu needs nonzero J and a")
    q = ring.p ** e
    if q > limits.max_q:
        raise ResourceLimitError(f"p^e = {q} exceeds cap {limits.max_q}")
    a_ideal = Ideal(ring, a_gens)
    if ideal_member(Polynomial.one(ring), a_ideal, limits):
        raise ValueError("a must be a proper ideal")
    for g in j_gens:
        if not radical_member(g, a_ideal, limits):
            raise RadicalHypothesisError(
                f"generator {g} is not in the radical of a"
            )
    member = _BracketMembership(j_gens, a_gens, e, limits)
    seed = _seed_bound(j_gens, a_ideal, q, len(a_gens), limits)
    hi = 1
    while not member.power_member(hi):
        if hi > seed:
            raise FsingError(
                "membership did not occur within the pigeonhole seed bound"
            )
        hi *= 2
    lo = hi // 2  # power_member(lo) is False: either hi=1 (lo=0, a proper) or the scan said so
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member.power_member(mid):
            hi = mid
        else:
            lo = mid
    value = hi - 1
    if not member.power_member(value + 1) or (value >= 1 and member.power_member(value)):
        raise FsingError("nu post-hoc bound check failed")
    return NuResult(j_gens, a_gens, ring.p, e, value, Fraction(value, q), mode)


def fpt_truncation(f, m, e: int, where: Where = "S",
                   limits: Limits = DEFAULT_LIMITS) -> ThresholdEstimate:
    """Level-e truncation nu^m_f(p^e)/p^e of the F-threshold, with its chain."""
    mode, _ = _mode(where)
    chain = []
    ratios = []
    for level in range(1, e + 1):
        res = nu(f, m, level, where, limits)
        chain.append((level, res.value, res.ratio))
        ratios.append(res.ratio)
    monotone = all(ratios[i] <= ratios[i + 1] for i in range(len(ratios) - 1))
    return ThresholdEstimate(tuple(chain), monotone, ratios[-1], mode)


def _as_fraction(lam) -> Fraction:
    if isinstance(lam, Fraction):
        return lam
    if isinstance(lam, int):
        return Fraction(lam)
    if isinstance(lam, str):
        return Fraction(lam)
    raise ValueError(f"exponent must be an exact rational, got {lam!r}")


def _r_power_gens(gens: Tuple[Polynomial, ...], k: int, ring: PolyRing,
                  limits: Limits) -> Tuple[Polynomial, ...]:
    if k == 0:
        return (Polynomial.one(ring),)
    return ideal_power(Ideal(ring, gens), k, limits).gens


def _level_ideal_S(gens, k: int, e: int, ring: PolyRing, cache: Dict, limits: Limits) -> Ideal:
    hit = cache.get((k, e))
    if hit is not None:
        return hit
    if k == 0:
        powered = Ideal(ring, (Polynomial.one(ring),))
    elif len(gens) == 1:
        pc = cache.setdefault("powers", _PowerCache(gens[0]))
        powered = Ideal(ring, (pc.get(k),))
    else:
        powered = ideal_power(Ideal(ring, gens), k, limits)
    out = eth_root(powered, e, limits)
    cache[(k, e)] = out
    return out


def _level_ideal_R(gens, k: int, e: int, emb: SplitEmbedding, cache: Dict,
                   limits: Limits) -> CartierImage:
    hit = cache.get((k, e))
    if hit is not None:
        return hit
    if k == 0:
        powered: Tuple[Polynomial, ...] = (Polynomial.one(emb.ring),)
    elif len(gens) == 1:
        pc = cache.setdefault("powers", _PowerCache(gens[0]))
        powered = (pc.get(k),)
    else:
        powered = _r_power_gens(gens, k, emb.ring, limits)
    out = cartier_image(powered, emb, e, limits)
    cache[(k, e)] = out
    return out


def test_ideal(I, lam, e_max: int, where: Where = "S",
               limits: Limits = DEFAULT_LIMITS) -> TestIdealResult:
    """Chain C^e(I^ceil(p^e*lam)) for e = 1..e_max, with stabilization.

    Stabilization means two consecutive levels agree as ideals; the result
    then reports the common value and the first such level.  Without
    agreement the status is inconclusive and the chain is still reported.
    """
    lam = _as_fraction(lam)
    if lam <= 0:
        raise ValueError("exponent must be positive")
    if e_max < 1:
        raise ValueError("e_max must be positive")
    mode, emb = _mode(where)
    if isinstance(I, Polynomial):
        I = (I,)
    if mode == "R":
        ring = emb.ring
        gens = tuple(g for g in _as_poly_tuple(I, ring) if not g.is_zero())
        for g in gens:
            emb.require_poly(g)
    else:
        gens = I.gens if isinstance(I, Ideal) else tuple(I)
        if not gens:
            raise ValueError("I must be nonzero")
        ring = gens[0].ring
        gens = tuple(g for g in _as_poly_tuple(I, ring) if not g.is_zero())
    if not gens:
        raise ValueError("I must be nonzero")

    cache: Dict = {}
    chain: List[Tuple[int, Tuple[Polynomial, ...]]] = []
    levels = []
    stable_flags = []
    for e in range(1, e_max + 1):
        k = -((-(ring.p ** e) * lam.numerator) // lam.denominator)  # ceil(q*lam)
        if mode == "S":
            ideal = _level_ideal_S(gens, k, e, ring, cache, limits)
            levels.append(ideal)
            chain.append((e, ideal.gens))
            stable_flags.append(True)
        else:
            img = _level_ideal_R(gens, k, e, emb, cache, limits)
            levels.append(img)
            chain.append((e, img.generators))
            stable_flags.append(img.stable)

    def eq(x, y) -> bool:
        if mode == "S":
            return ideal_equal(x, y, limits)
        return r_ideal_equal(x.generators, y.generators, emb, limits)

    def asc(lower, upper) -> bool:
        if mode == "S":
            return ideal_contains(upper, lower, limits)
        return r_ideal_contains(upper.generators, lower.generators, emb, limits)

    ascending = all(asc(levels[i], levels[i + 1]) for i in range(len(levels) - 1))
    e_star: Optional[int] = None
    for i in range(len(levels) - 1):
        if eq(levels[i], levels[i + 1]):
            e_star = i + 1
            break
    if e_star is not None:
        tau = chain[e_star - 1][1]
        status = "stabilized"
        if mode == "R" and not (stable_flags[e_star - 1] and stable_flags[e_star]):
            status = "inconclusive"
    else:
        tau = chain[-1][1]
        status = "inconclusive"
    return TestIdealResult(gens, lam, e_star, tau, tuple(chain), status, ascending, mode)


def jump_spectrum(source, e: int, T=1, where: Where = "S",
                  limits: Limits = DEFAULT_LIMITS, refine: bool = False) -> JumpSpectrum:
    """Level-e jumping candidates of the source ideal on (0, T].

    A candidate is a/p^e where the level ideal C^e(I^a) drops strictly
    below its predecessor; exact jumping numbers are only ever claimed at
    the level of these truncations.  With refine=True the level-(e+1)
    spectrum is attached together with the candidate windows it refines.
    """
    T = _as_fraction(T)
    if T <= 0:
        raise ValueError("range bound must be positive")
    mode, emb = _mode(where)
    if isinstance(source, Polynomial):
        gens: Tuple[Polynomial, ...] = (source,)
        ring = source.ring
    elif isinstance(source, Ideal):
        gens, ring = source.gens, source.ring
    else:
        gens = tuple(source)
        if not gens:
            raise ValueError("source must be nonzero")
        ring = gens[0].ring
    gens = tuple(g for g in gens if not g.is_zero())
    if not gens:
        raise ValueError("source must be nonzero")
    if mode == "R":
        if emb.ring != ring:
            raise ValueError("source does not live in the embedding's ring")
        for g in gens:
            emb.require_poly(g)
    q = ring.p ** e
    a_max = -((-T.numerator * q) // T.denominator)  # ceil(T*q)
    cache: Dict = {}
    candidates = []
    if mode == "S":
        prev = _level_ideal_S(gens, 0, e, ring, cache, limits)
    else:
        prev = _level_ideal_R(gens, 0, e, emb, cache, limits)
    for a in range(1, a_max + 1):
        if mode == "S":
            cur = _level_ideal_S(gens, a, e, ring, cache, limits)
            equal = ideal_equal(prev, cur, limits)
            pair = (prev.gens, cur.gens)
        else:
            cur = _level_ideal_R(gens, a, e, emb, cache, limits)
            equal = r_ideal_equal(prev.generators, cur.generators, emb, limits)
            pair = (prev.generators, cur.generators)
        if not equal:
            candidates.append((Fraction(a, q), pair[0], pair[1]))
        prev = cur
    refinement = None
    windows: Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...] = ()
    if refine:
        refinement = jump_spectrum(gens, e + 1, T, where, limits, refine=False)
        p = ring.p
        rows = []
        fine = refinement.values()
        for lam, _, _ in candidates:
            a = lam.numerator * (q // lam.denominator)
            lo = Fraction((a - 1) * p, q * p)
            hi = Fraction(a * p, q * p)
            rows.append((lam, tuple(v for v in fine if lo < v <= hi)))
        windows = tuple(rows)
    return JumpSpectrum(mode, gens, e, tuple(candidates), refinement, windows)


def summand_filter(source, emb: SplitEmbedding, e: int, s_spectrum: JumpSpectrum,
                   limits: Limits = DEFAULT_LIMITS) -> SummandFilterReport:
    """Filter level-e S-candidates through the Cartier images of R.

    Between consecutive S-candidates the S-level ideals agree, hence so do
    the R-level ideals; comparing R-images only at the candidates is
    therefore complete.  A candidate survives when its R-image drops below
    the previous candidate's image (baseline: exponent zero).
    """
    if s_spectrum.e != e:
        raise ValueError("S-spectrum was computed at a different level")
    if isinstance(source, Polynomial):
        source = (source,)
    gens = tuple(g for g in _as_poly_tuple(source, emb.ring) if not g.is_zero())
    if not gens:
        raise ValueError("source must be nonzero")
    for g in gens:
        emb.require_poly(g)
    q = emb.ring.p ** e
    cache: Dict = {}
    entries = []
    survivors = []
    stable = True
    prev_img = _level_ideal_R(gens, 0, e, emb, cache, limits)
    for lam in s_spectrum.values():
        a = lam.numerator * (q // lam.denominator)
        img = _level_ideal_R(gens, a, e, emb, cache, limits)
        stable = stable and img.stable
        survives = not r_ideal_equal(prev_img.generators, img.generators, emb, limits)
        entries.append((lam, survives))
        if survives:
            survivors.append(lam)
        prev_img = img
    return SummandFilterReport(e, tuple(entries), tuple(survivors), stable)


def cyclic_witness(f: Polynomial, e: int, e_max: int, where: Where = "S",
                   limits: Limits = DEFAULT_LIMITS) -> Tuple[Optional[int], bool]:
    """Smallest e' in [e, e_max] certifying the cyclicity identity for f.

    The witness is f^{q'-q} lying in the smallest bracket power containing
    f^{q'-1}, tested as containment of e'-th roots: g is in b^[q'] exactly
    when the e'-th root of (g) is inside b.  Failure up to e_max is
    inconclusive, never a refutation.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    mode, emb = _mode(where)
    if mode == "R":
        emb.require_poly(f)
    if e < 1 or e_max < e:
        raise ValueError("need 1 <= e <= e_max")
    ring = f.ring
    pc = _PowerCache(f)
    for e_prime in range(e, e_max + 1):
        qp = ring.p ** e_prime
        if qp > limits.max_q:
            raise ResourceLimitError(f"p^e' = {qp} exceeds cap {limits.max_q}")
        # f^(q'-q) = (f^(p^(e'-e)-1))^[p^e] by the freshman's dream
        small = pc.get(ring.p ** (e_prime - e) - 1).frobenius_power(e)
        root_small = eth_root(Ideal(ring, (small,)), e_prime, limits)
        root_full = eth_root(Ideal(ring, (pc.get(qp - 1),)), e_prime, limits)
        if ideal_contains(root_full, root_small, limits):
            return e_prime, True
    return None, False
