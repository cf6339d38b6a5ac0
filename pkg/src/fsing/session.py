"""Session files: a line-oriented description of one working context.

Grammar, one directive per line, `#` starts a comment:

    prime P
    ring x y u v
    subring xu yv            (monomial words, single-letter variables)
    subring [1,1,0,0] [0,0,1,1]   (exponent rows, any ring)
    poly NAME = EXPR
    ideal NAME = EXPR, EXPR, ...
    set KEY VALUE

A subring line triggers purity verification; rejection carries the witness
exponent.  If no ideal named `m` is declared, one is defined implicitly:
the subring generators when a subring is present, otherwise the ring
variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, PurityError
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial, PolyRing, is_prime, parse_poly, ring as make_ring
from .summand import SplitEmbedding, build_embedding

_LIMITS_KEYS = {
    "m_floor", "oracle_degree", "max_degree", "max_q", "max_power",
    "max_pairs", "max_basis", "purity_points", "box_growth_steps",
}
_SESSION_KEYS = {"e_max", "box"} | _LIMITS_KEYS


@dataclass
class Session:
    prime: int
    ring: PolyRing
    embedding: Optional[SplitEmbedding]
    polys: Dict[str, Polynomial]
    ideals: Dict[str, Tuple[Polynomial, ...]]
    settings: Dict[str, int]
    limits: Limits
    auto_m: bool = False

    @property
    def e_max(self) -> int:
        return self.settings.get("e_max", 3)

    def lookup_ideal(self, name: str) -> Tuple[Polynomial, ...]:
        if name in self.ideals:
            return self.ideals[name]
        if name in self.polys:
            return (self.polys[name],)
        raise ParseError(f"unknown ideal or polynomial {name!r}")

    def lookup_poly(self, name: str) -> Polynomial:
        if name in self.polys:
            return self.polys[name]
        if name in self.ideals and len(self.ideals[name]) == 1:
            return self.ideals[name][0]
        raise ParseError(f"unknown polynomial {name!r}")


def _parse_word(word: str, ring: PolyRing, lineno: int) -> Tuple[int, ...]:
    exps = [0] * len(ring.variables)
    for ch in word:
        try:
            exps[ring.var_index(ch)] += 1
        except KeyError:
            raise ParseError(
                f"letter {ch!r} in subring word {word!r} is not a ring variable; "
                "use exponent rows like [1,0,2] for multi-letter variables",
                line=lineno,
            ) from None
    return tuple(exps)


def _parse_row(token: str, ring: PolyRing, lineno: int) -> Tuple[int, ...]:
    body = token[1:-1]
    try:
        exps = tuple(int(part) for part in body.split(","))
    except ValueError:
        raise ParseError(f"bad exponent row {token!r}", line=lineno) from None
    if len(exps) != len(ring.variables):
        raise ParseError(
            f"exponent row {token!r} has {len(exps)} entries for "
            f"{len(ring.variables)} variables",
            line=lineno,
        )
    if any(c < 0 for c in exps):
        raise ParseError(f"exponent row {token!r} has a negative entry", line=lineno)
    return exps


def parse_session_text(text: str, limits: Limits = DEFAULT_LIMITS) -> Session:
    prime: Optional[int] = None
    ring: Optional[PolyRing] = None
    subring_tokens: Optional[Tuple[List[str], int]] = None
    polys: Dict[str, Polynomial] = {}
    ideals: Dict[str, Tuple[Polynomial, ...]] = {}
    settings: Dict[str, int] = {}

    def need_ring(lineno: int) -> PolyRing:
        if ring is None:
            raise ParseError("directive requires a preceding `ring` line", line=lineno)
        return ring

    def check_fresh(name: str, lineno: int):
        if name in polys or name in ideals:
            raise ParseError(f"name {name!r} is already defined", line=lineno)
        if not name.isidentifier():
            raise ParseError(f"bad name {name!r}", line=lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "prime":
            if prime is not None:
                raise ParseError("prime was already declared", line=lineno)
            try:
                value = int(rest)
            except ValueError:
                raise ParseError(f"bad prime {rest!r}", line=lineno) from None
            if not is_prime(value):
                raise ParseError(f"{value} is not prime", line=lineno)
            prime = value
        elif head == "ring":
            if ring is not None:
                raise ParseError("ring was already declared", line=lineno)
            if prime is None:
                raise ParseError("`ring` requires a preceding `prime` line", line=lineno)
            names = rest.split()
            if not names:
                raise ParseError("ring needs at least one variable", line=lineno)
            try:
                ring = make_ring(prime, *names)
            except ValueError as ex:
                raise ParseError(str(ex), line=lineno) from None
        elif head == "subring":
            need_ring(lineno)
            if subring_tokens is not None:
                raise ParseError("subring was already declared", line=lineno)
            tokens = rest.split()
            if not tokens:
                raise ParseError("subring needs at least one generator", line=lineno)
            subring_tokens = (tokens, lineno)
        elif head == "poly":
            r = need_ring(lineno)
            name, eq, expr = rest.partition("=")
            if not eq:
                raise ParseError("poly needs `poly NAME = EXPR`", line=lineno)
            name = name.strip()
            check_fresh(name, lineno)
            try:
                polys[name] = parse_poly(expr.strip(), r)
            except ParseError as ex:
                raise ParseError(f"in poly {name!r}: {ex}", line=lineno) from None
        elif head == "ideal":
            r = need_ring(lineno)
            name, eq, expr = rest.partition("=")
            if not eq:
                raise ParseError("ideal needs `ideal NAME = EXPR[, EXPR...]`", line=lineno)
            name = name.strip()
            check_fresh(name, lineno)
            gens = []
            for part in expr.split(","):
                part = part.strip()
                if not part:
                    raise ParseError("empty generator in ideal", line=lineno)
                try:
                    gens.append(parse_poly(part, r))
                except ParseError as ex:
                    raise ParseError(f"in ideal {name!r}: {ex}", line=lineno) from None
            ideals[name] = tuple(gens)
        elif head == "set":
            key, _, value = rest.partition(" ")
            key = key.strip()
            value = value.strip()
            if key not in _SESSION_KEYS:
                raise ParseError(
                    f"unknown setting {key!r}; known: {', '.join(sorted(_SESSION_KEYS))}",
                    line=lineno,
                )
            try:
                settings[key] = int(value)
            except ValueError:
                raise ParseError(f"setting {key!r} needs an integer, got {value!r}",
                                 line=lineno) from None
        else:
            raise ParseError(f"unknown directive {head!r}", line=lineno)

    if ring is None:
        raise ParseError("session must declare `prime` and `ring`")
    limits = limits.updated(**{k: v for k, v in settings.items() if k in _LIMITS_KEYS})

    embedding = None
    if subring_tokens is not None:
        tokens, lineno = subring_tokens
        gens = []
        for token in tokens:
            if token.startswith("[") and token.endswith("]"):
                gens.append(_parse_row(token, ring, lineno))
            else:
                gens.append(_parse_word(token, ring, lineno))
        try:
            embedding = build_embedding(gens, ring, settings.get("box"), limits)
        except ValueError as ex:
            raise ParseError(str(ex), line=lineno) from None
        if not embedding.verified:
            raise PurityError(
                f"line {lineno}: subring is not a pure direct summand on the "
                f"certificate box",
                witness=embedding.witness,
            )

    auto_m = False
    if "m" not in polys and "m" not in ideals:
        if embedding is not None:
            ideals["m"] = tuple(
                Polynomial.monomial(ring, g) for g in embedding.semigroup.gens
            )
        else:
            ideals["m"] = tuple(
                Polynomial.variable(ring, v) for v in ring.variables
            )
        auto_m = True

    return Session(ring.p, ring, embedding, polys, ideals, settings, limits, auto_m)


def parse_session(path: str, limits: Limits = DEFAULT_LIMITS) -> Session:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_session_text(handle.read(), limits)
