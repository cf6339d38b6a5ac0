"""Frobenius bracket powers and e-th roots in the ambient polynomial ring.

For q = p^e, the bracket power I^[q] is generated by the q-th powers of
any generating set, and the e-th root of I is the smallest ideal b with
I contained in b^[q].  Because the ambient ring is free over its subring
of q-th powers, the root is generated by the box components of the
generators alone, which is what eth_root computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ResourceLimitError
from .groebner import Ideal, poly_sort_key
from .limits import DEFAULT_LIMITS, Limits
from .poly import PolyRing, pe_decompose


@dataclass(frozen=True)
class FrobeniusContext:
    """A ring together with a Frobenius level e >= 1."""

    ring: PolyRing
    e: int

    def __post_init__(self):
        if self.e < 1:
            raise ValueError(f"Frobenius level must be >= 1, got {self.e}")

    @property
    def q(self) -> int:
        return self.ring.p ** self.e


def _context(ideal: Ideal, ctx: Union[FrobeniusContext, int], limits: Limits) -> FrobeniusContext:
    if isinstance(ctx, int):
        ctx = FrobeniusContext(ideal.ring, ctx)
    elif ctx.ring != ideal.ring:
        raise ValueError("context ring does not match ideal ring")
    if ctx.q > limits.max_q:
        raise ResourceLimitError(f"p^e = {ctx.q} exceeds cap {limits.max_q}")
    return ctx


def bracket_power(
    ideal: Ideal, ctx: Union[FrobeniusContext, int], limits: Limits = DEFAULT_LIMITS
) -> Ideal:
    """The Frobenius power I^[p^e], generated by q-th powers of the generators."""
    ctx = _context(ideal, ctx, limits)
    return Ideal(ideal.ring, tuple(g.frobenius_power(ctx.e) for g in ideal.gens))


def eth_root(
    ideal: Ideal, ctx: Union[FrobeniusContext, int], limits: Limits = DEFAULT_LIMITS
) -> Ideal:
    """Smallest ideal b with I contained in b^[p^e].

    Generated by the box components of the generators: f lies in b^[q]
    exactly when every component of f lies in b, so collecting components
    of a generating set is both sound and minimal.
    """
    ctx = _context(ideal, ctx, limits)
    gens = []
    seen = set()
    for g in ideal.gens:
        for comp in pe_decompose(g, ctx.e).values():
            if comp not in seen:
                seen.add(comp)
                gens.append(comp)
    gens.sort(key=poly_sort_key)
    return Ideal(ideal.ring, gens)


def d_image(
    ideal: Ideal, ctx: Union[FrobeniusContext, int], limits: Limits = DEFAULT_LIMITS
) -> Ideal:
    """Image of I under all p^{-e}-linear maps, re-expanded: (eth_root I)^[q].

    This is the smallest bracket power containing I, used by the
    Frobenius-cyclicity witness search.
    """
    ctx = _context(ideal, ctx, limits)
    return bracket_power(eth_root(ideal, ctx, limits), ctx, limits)
