"""Seeded random instances for the self-test suite and property tests.

Every generator takes an explicit random.Random so sweeps are reproducible
from a single seed; nothing here touches global RNG state.
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .groebner import Ideal
from .poly import Polynomial, PolyRing
from .summand import SplitEmbedding


def random_poly(rng: random.Random, ring: PolyRing, max_terms: int = 3,
                max_exp: int = 3, no_constant: bool = True) -> Polynomial:
    """Random nonzero polynomial with per-variable exponents up to max_exp."""
    n = len(ring.variables)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            exps = tuple(rng.randint(0, max_exp) for _ in range(n))
            if no_constant and not any(exps):
                continue
            terms[exps] = rng.randint(1, ring.p - 1) if ring.p > 2 else 1
        if terms:
            return Polynomial(ring, terms)


def random_monomial_ideal(rng: random.Random, ring: PolyRing, max_gens: int = 2,
                          max_exp: int = 3) -> Ideal:
    """Random proper monomial ideal; generators avoid the constant monomial."""
    n = len(ring.variables)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        while True:
            exps = tuple(rng.randint(0, max_exp) for _ in range(n))
            if any(exps):
                break
        gens.append(Polynomial.monomial(ring, exps))
    return Ideal(ring, tuple(gens))


def random_sigma_monomial(rng: random.Random, emb: SplitEmbedding,
                          max_steps: int = 3) -> Tuple[int, ...]:
    """Exponent of a random nonunit monomial of the subring: a sum of generators."""
    gens = emb.semigroup.gens
    total = [0] * emb.semigroup.n
    for _ in range(rng.randint(1, max_steps)):
        g = rng.choice(gens)
        for i, c in enumerate(g):
            total[i] += c
    return tuple(total)


def random_sigma_monomial_ideal(rng: random.Random, emb: SplitEmbedding,
                                max_gens: int = 2, max_steps: int = 3) -> Tuple[Polynomial, ...]:
    """Random monomial ideal of R, as a tuple of subring monomials."""
    seen = set()
    gens: List[Polynomial] = []
    for _ in range(rng.randint(1, max_gens)):
        exps = random_sigma_monomial(rng, emb, max_steps)
        if exps in seen:
            continue
        seen.add(exps)
        gens.append(Polynomial.monomial(emb.ring, exps))
    return tuple(gens)
