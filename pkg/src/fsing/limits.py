"""Explicit resource caps.

All potentially superlinear computations take a Limits value and raise
ResourceLimitError when a cap is hit, so an over-hard instance produces a
distinct error instead of a silent wrong answer or an unbounded run.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 50_000          # Buchberger pair queue
    max_basis: int = 400             # Buchberger intermediate basis size
    max_degree: int = 8192           # total degree of any intermediate polynomial
    max_q: int = 1 << 20             # largest admissible p^e
    max_power: int = 1 << 20         # largest exponent in pow / nu searches
    purity_points: int = 4_000_000   # lattice points enumerated for one certificate
    box_growth_steps: int = 3        # stabilization retries for Cartier images
    oracle_degree: int = 3000        # dense-oracle expansion cap (total degree)
    m_floor: int = 3                 # small-p policy floor for b-polynomial checks

    def updated(self, **kw) -> "Limits":
        return replace(self, **kw)


DEFAULT_LIMITS = Limits()
