"""b-polynomial catalog handling and mod-p root checks.

The package never computes a Bernstein-Sato polynomial: entries come from
the shipped catalog or from the user, as monic polynomials in s with exact
rational coefficients.  What is computed here is the characteristic-p side:
reduce the candidate mod p and test that it vanishes at nu-invariants and
at level-e jump exponents.  A nonzero value at small p is reported as
inconclusive rather than a refutation, since the supporting congruence only
holds for primes above an ineffective threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import CoefficientReductionError, ParseError
from .frobenius import eth_root
from .groebner import Ideal, ideal_equal
from .invariants import Where, _level_ideal_R, _level_ideal_S, _mode, nu
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial, parse_rational_poly, ring
from .summand import r_ideal_equal


@dataclass(frozen=True)
class BPolynomial:
    """Monic polynomial in s over the rationals, with a provenance note."""

    coeffs: Tuple[Fraction, ...]  # ascending; last entry is 1
    note: str = "user"

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("b-polynomial must be nonzero")
        if self.coeffs[-1] != 1:
            raise ValueError("b-polynomial must be monic")

    @classmethod
    def parse(cls, src: str, note: str = "user") -> "BPolynomial":
        qterms = parse_rational_poly(src, ("s",))
        if not qterms:
            raise ParseError("b-polynomial expression is zero")
        degree = max(k[0] for k in qterms)
        coeffs = tuple(qterms.get((k,), Fraction(0)) for k in range(degree + 1))
        return cls(coeffs, note)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, s) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * s + c
        return value

    def __mul__(self, other: "BPolynomial") -> "BPolynomial":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BPolynomial(tuple(out), f"({self.note})*({other.note})")

    def divides(self, other: "BPolynomial") -> bool:
        """Exact divisibility over the rationals."""
        rem = list(other.coeffs)
        d = self.degree
        while len(rem) - 1 >= d and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < d:
                break
            lead = rem[-1]
            shift = len(rem) - 1 - d
            for i, c in enumerate(self.coeffs):
                rem[shift + i] -= lead * c
            while rem and not rem[-1]:
                rem.pop()
        return not any(rem)

    def __str__(self) -> str:
        parts: List[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "s"
            else:
                mono = f"s^{k}"
            if c == 1 and mono:
                parts.append(mono)
            elif c == -1 and mono:
                parts.append(f"-{mono}")
            else:
                coeff = str(c)
                parts.append(f"{coeff}*{mono}" if mono else coeff)
        out = " + ".join(parts).replace("+ -", "- ")
        return out or "0"


def reduce_mod_p(b: BPolynomial, p: int) -> Polynomial:
    """Coefficientwise reduction into F_p[s] using modular inverses."""
    target = ring(p, "s")
    terms = {}
    for k, c in enumerate(b.coeffs):
        if c.denominator % p == 0:
            raise CoefficientReductionError(
                f"coefficient {c} of s^{k} has denominator divisible by {p}"
            )
        val = (c.numerator % p) * pow(c.denominator % p, -1, p) % p
        if val:
            terms[(k,)] = val
    return Polynomial(target, terms)


def _evaluate_mod_p(b: BPolynomial, value: int, p: int) -> int:
    reduced = reduce_mod_p(b, p)
    degree = max((k for (k,) in reduced.terms), default=0)
    acc = 0
    for k in range(degree, -1, -1):
        acc = (acc * value + reduced.terms.get((k,), 0)) % p
    return acc


@dataclass(frozen=True)
class BCheckRow:
    e: int
    exponent: int        # nu value or jump exponent
    residue: int         # b(exponent) mod p
    verdict: str         # "pass", "fail", "inconclusive-small-p"


@dataclass(frozen=True)
class BCheckReport:
    mode: str            # "threshold" or "jump"
    b: BPolynomial
    p: int
    where: str
    rows: Tuple[BCheckRow, ...]
    verdict: str

    def passed(self) -> bool:
        return self.verdict == "pass"


def _row_verdict(residue: int, p: int, m_floor: int) -> str:
    if residue == 0:
        return "pass"
    return "inconclusive-small-p" if p <= m_floor else "fail"


def _overall(rows: Sequence[BCheckRow]) -> str:
    if any(r.verdict == "fail" for r in rows):
        return "fail"
    if any(r.verdict == "inconclusive-small-p" for r in rows):
        return "inconclusive-small-p"
    return "pass"


def bs_threshold_check(b: BPolynomial, f, a, p: int, e_range: Iterable[int],
                       where: Where = "S", limits: Limits = DEFAULT_LIMITS,
                       m_floor: Optional[int] = None) -> BCheckReport:
    """Check b(nu^a_f(p^e)) = 0 mod p for each e in the range."""
    mode, emb = _mode(where)
    floor = limits.m_floor if m_floor is None else m_floor
    reduce_mod_p(b, p)  # surface a p-excluded error before any nu work
    rows = []
    for e in e_range:
        result = nu(f, a, e, where, limits)
        if result.p != p:
            raise ValueError(f"f lives over F_{result.p}, check requested p={p}")
        residue = _evaluate_mod_p(b, result.value, p)
        rows.append(BCheckRow(e, result.value, residue, _row_verdict(residue, p, floor)))
    return BCheckReport("threshold", b, p, mode, tuple(rows), _overall(rows))


def bs_jump_check(b: BPolynomial, f: Polynomial, p: int, e: int,
                  nu_range: Iterable[int], where: Where = "S",
                  limits: Limits = DEFAULT_LIMITS,
                  m_floor: Optional[int] = None) -> BCheckReport:
    """Check b = 0 mod p at every level-e jump exponent in the range.

    An exponent t jumps when the level ideal of f^t differs from that of
    f^{t+1}; only those rows appear in the report.
    """
    mode, emb = _mode(where)
    if f.ring.p != p:
        raise ValueError(f"f lives over F_{f.ring.p}, check requested p={p}")
    floor = limits.m_floor if m_floor is None else m_floor
    reduce_mod_p(b, p)
    if mode == "R":
        emb.require_poly(f)
    cache: Dict = {}
    rows = []
    values = sorted(set(int(t) for t in nu_range))
    for t in values:
        if t < 0:
            raise ValueError("jump exponents must be nonnegative")
        if mode == "S":
            cur = _level_ideal_S((f,), t, e, f.ring, cache, limits)
            nxt = _level_ideal_S((f,), t + 1, e, f.ring, cache, limits)
            differs = not ideal_equal(cur, nxt, limits)
        else:
            cur = _level_ideal_R((f,), t, e, emb, cache, limits)
            nxt = _level_ideal_R((f,), t + 1, e, emb, cache, limits)
            differs = not r_ideal_equal(cur.generators, nxt.generators, emb, limits)
        if differs:
            residue = _evaluate_mod_p(b, t, p)
            rows.append(BCheckRow(e, t, residue, _row_verdict(residue, p, floor)))
    return BCheckReport("jump", b, p, mode, tuple(rows), _overall(rows))


# -- catalog ----------------------------------------------------------------


def _parse_catalog_text(text: str) -> Dict[str, BPolynomial]:
    out: Dict[str, BPolynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        note = ""
        if "#" in line:
            line, note = line.split("#", 1)
            line, note = line.strip(), note.strip()
        if not line.startswith("bpoly "):
            raise ParseError(f"catalog line must start with 'bpoly'", line=lineno)
        body = line[len("bpoly "):]
        if "=" not in body:
            raise ParseError("catalog entry needs '<key> = <expression>'", line=lineno)
        key, expr = body.split("=", 1)
        key = key.strip()
        if not key:
            raise ParseError("catalog entry has an empty key", line=lineno)
        if key in out:
            raise ParseError(f"duplicate catalog key {key!r}", line=lineno)
        out[key] = BPolynomial.parse(expr.strip(), note or f"catalog:{key}")
    return out


def load_catalog(path: Optional[str] = None) -> Dict[str, BPolynomial]:
    """Parse a catalog file; with no path, the one shipped with the package."""
    if path is None:
        text = resources.files("fsing.data").joinpath("bpoly_catalog.txt").read_text()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return _parse_catalog_text(text)


def catalog_divisibility_pairs(catalog: Dict[str, BPolynomial]) -> List[Tuple[str, str]]:
    """Stems having both a .summand and .ambient entry, for divisibility tests."""
    pairs = []
    for key in catalog:
        if key.endswith(".summand"):
            stem = key[: -len(".summand")]
            ambient = f"{stem}.ambient"
            if ambient in catalog:
                pairs.append((key, ambient))
    return sorted(pairs)
