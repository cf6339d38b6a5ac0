"""Sparse multivariate polynomials over a prime field F_p.

A polynomial is stored as a dict mapping exponent tuples (one nonnegative
int per ring variable) to coefficients in [1, p); the zero polynomial is
the empty dict.  Exponent tuples double as monomials throughout the
package, so the small monomial helpers (mono_mul, mono_divides, ...) work
directly on tuples.

Monomial orders are small objects exposing ``key(exps)``; ``max`` over
those keys picks the leading monomial.  The default everywhere is graded
reverse lexicographic order.

The expression parser accepts signed sums of '*'-joined factors with '^'
powers and parenthesized subexpressions, e.g. ``(x+y)^2 - 3*x*y``.
Integer coefficients are reduced mod p; a rational constant written as
``a/b`` is reduced via a modular inverse and rejected when p divides b.
The same grammar with exact rational coefficients backs the b-polynomial
module (see parse_rational_poly).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple

from .errors import CoefficientReductionError, ParseError, RingMismatchError

Exponents = Tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_EXP_CAP = 1 << 31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring F_p[x_1, ..., x_n], identified by p and variable names."""

    p: int
    variables: Tuple[str, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for name in self.variables:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name {name!r}")

    @property
    def n(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def extend(self, *names: str) -> "PolyRing":
        return PolyRing(self.p, self.variables + tuple(names))

    def restrict(self, keep: Iterable[str]) -> "PolyRing":
        keep = set(keep)
        return PolyRing(self.p, tuple(v for v in self.variables if v in keep))

    def zero_exponent(self) -> Exponents:
        return (0,) * self.n

    def __str__(self) -> str:
        return f"F_{self.p}[{', '.join(self.variables)}]"


def ring(p: int, *variables: str) -> PolyRing:
    """Convenience constructor: ring(5, 'x', 'y')."""
    return PolyRing(p, tuple(variables))


# ---------------------------------------------------------------------------
# monomial helpers on bare exponent tuples


def mono_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def mono_sub(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Exponents) -> int:
    return sum(a)


def mono_coprime(a: Exponents, b: Exponents) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total order on exponent tuples, exposed as a sort key."""

    name: str = "order"

    def key(self, exps: Exponents):
        raise NotImplementedError

    def cache_token(self):
        return (self.name,)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.cache_token() == other.cache_token()

    def __hash__(self):
        return hash(self.cache_token())

    def __repr__(self):
        return self.name


class Grevlex(MonomialOrder):
    name = "grevlex"

    def key(self, exps: Exponents):
        return (sum(exps), tuple(-e for e in reversed(exps)))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps: Exponents):
        return exps


class Block(MonomialOrder):
    """Lex on a chosen index block, grevlex on the complement.

    Any monomial involving a block variable sorts above every monomial in
    the complementary variables, which is what elimination needs.
    """

    name = "block"

    def __init__(self, first: Tuple[int, ...], n: int):
        self.first = tuple(first)
        self.rest = tuple(i for i in range(n) if i not in set(first))

    def key(self, exps: Exponents):
        head = tuple(exps[i] for i in self.first)
        tail = tuple(exps[i] for i in self.rest)
        return (head, sum(tail), tuple(-e for e in reversed(tail)))

    def cache_token(self):
        return (self.name, self.first, self.rest)


GREVLEX = Grevlex()
LEX = Lex()


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exponents, int], _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            p = ring.p
            n = ring.n
            clean: Dict[Exponents, int] = {}
            for exps, c in terms.items():
                if len(exps) != n or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for {ring}")
                c %= p
                if c:
                    clean[exps] = c
            self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: PolyRing) -> "Polynomial":
        return cls(ring, {}, _clean=True)

    @classmethod
    def constant(cls, ring: PolyRing, c: int) -> "Polynomial":
        c %= ring.p
        if not c:
            return cls.zero(ring)
        return cls(ring, {ring.zero_exponent(): c}, _clean=True)

    @classmethod
    def one(cls, ring: PolyRing) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: PolyRing, name: str) -> "Polynomial":
        i = ring.var_index(name)
        exps = tuple(1 if j == i else 0 for j in range(ring.n))
        return cls(ring, {exps: 1}, _clean=True)

    @classmethod
    def monomial(cls, ring: PolyRing, exps: Exponents, c: int = 1) -> "Polynomial":
        return cls(ring, {tuple(exps): c})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        return self.terms.get(self.ring.zero_exponent(), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def max_exponent(self) -> int:
        if not self.terms:
            return 0
        return max(max(e) for e in self.terms)

    def support(self) -> Iterator[Exponents]:
        return iter(self.terms)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = (out.get(exps, 0) + c) % p
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Polynomial(self.ring, out, _clean=True)

    def __neg__(self) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {e: (c * v) % p for e, v in self.terms.items()}, _clean=True)

    def mul_monomial(self, exps: Exponents, c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial(
            self.ring,
            {mono_mul(e, exps): (c * v) % p for e, v in self.terms.items()},
            _clean=True,
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.p
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Exponents, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = mono_mul(ea, eb)
                s = (out.get(e, 0) + ca * cb) % p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def frobenius_power(self, e: int) -> "Polynomial":
        """Exact p^e-th power: in characteristic p this only scales exponents."""
        q = self.ring.p ** e
        return Polynomial(self.ring, {tuple(x * q for x in exps): c for exps, c in self.terms.items()}, _clean=True)

    # -- ring moves ---------------------------------------------------------

    def embed(self, target: PolyRing, positions: Tuple[int, ...]) -> "Polynomial":
        """Reinterpret in target; positions[i] is where variable i lands."""
        if target.p != self.ring.p:
            raise RingMismatchError("different characteristic")
        n = target.n
        out: Dict[Exponents, int] = {}
        for exps, c in self.terms.items():
            t = [0] * n
            for i, e in enumerate(exps):
                t[positions[i]] = e
            out[tuple(t)] = c
        return Polynomial(target, out, _clean=True)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"<{format_poly(self)} in {self.ring}>"


def pe_decompose(f: Polynomial, e: int) -> Dict[Exponents, Polynomial]:
    """Write f = sum over a in [0, p^e)^n of (g_a)^{p^e} * x^a.

    The monomials x^a with a below the box are a free basis of the ring
    over its p^e-th powers, so the components g_a are unique.  Scalars are
    their own p^e-th roots in F_p, which keeps this a pure exponent
    calculation.  Only nonzero components are returned.
    """
    if e < 0:
        raise ValueError("negative Frobenius level")
    q = f.ring.p ** e
    comps: Dict[Exponents, Dict[Exponents, int]] = {}
    for exps, c in f.terms.items():
        a = tuple(x % q for x in exps)
        base = tuple(x // q for x in exps)
        comps.setdefault(a, {})[base] = c
    return {a: Polynomial(f.ring, terms, _clean=True) for a, terms in comps.items()}


# ---------------------------------------------------------------------------
# canonical printing


def _format_monomial(ring: PolyRing, exps: Exponents) -> str:
    parts = []
    for name, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical form: descending monomials, coefficients in [0, p)."""
    if not f.terms:
        return "0"
    pieces = []
    for exps in sorted(f.terms, key=order.key, reverse=True):
        c = f.terms[exps]
        mono = _format_monomial(f.ring, exps)
        if not mono:
            pieces.append(str(c))
        elif c == 1:
            pieces.append(mono)
        else:
            pieces.append(f"{c}*{mono}")
    return " + ".join(pieces)


# ---------------------------------------------------------------------------
# expression parser
#
#   expr    := ['+'|'-'] term (('+'|'-') term)*
#   term    := factor ('*' factor)*
#   factor  := atom ['^' INT]
#   atom    := INT ['/' INT] | NAME | '(' expr ')'
#
# Evaluation happens over exact rationals on sparse dicts and the result is
# reduced into the requested coefficient domain at the end.

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([()+\-*^/]))")


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if not m or m.end() == pos:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(src) - len(stripped)
            raise ParseError(f"unexpected character {src[bad_at]!r}", offset=bad_at)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _QParser:
    """Recursive descent over dicts {exponent tuple: Fraction}."""

    def __init__(self, src: str, variables: Tuple[str, ...]):
        self.src = src
        self.variables = variables
        self.n = len(variables)
        self.index = {v: i for i, v in enumerate(variables)}
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", offset=off)

    # dict arithmetic over Fraction coefficients

    def _add(self, a, b, sign=1):
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, Fraction(0)) + sign * c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    def _mul(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return out

    def _pow(self, a, k):
        result = {(0,) * self.n: Fraction(1)}
        base = a
        while k:
            if k & 1:
                result = self._mul(result, base)
            k >>= 1
            if k:
                base = self._mul(base, base)
        return result

    def parse(self):
        value = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input starting with {val!r}", offset=off)
        return value

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        value = self.term()
        if sign < 0:
            value = {e: -c for e, c in value.items()}
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = self._add(value, rhs, -1 if val == "-" else 1)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = self._mul(value, self.factor())
            else:
                return value

    def factor(self):
        value = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, k, off = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", offset=off)
            if k > _EXP_CAP:
                raise ParseError(f"exponent {k} exceeds cap {_EXP_CAP}", offset=off)
            value = self._pow(value, k)
        return value

    def atom(self):
        kind, val, off = self.take()
        if kind == "int":
            num = val
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, den, off3 = self.take()
                if k3 != "int" or den == 0:
                    raise ParseError("denominator must be a nonzero integer", offset=off3)
                return self._const(Fraction(num, den))
            return self._const(Fraction(num))
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", offset=off)
            e = tuple(1 if i == self.index[val] else 0 for i in range(self.n))
            return {e: Fraction(1)}
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError("expected a number, variable, or parenthesized expression", offset=off)

    def _const(self, c: Fraction):
        if not c:
            return {}
        return {(0,) * self.n: c}


def parse_rational_poly(src: str, variables: Tuple[str, ...]) -> Dict[Exponents, Fraction]:
    """Parse the expression grammar over exact rational coefficients."""
    return _QParser(src, tuple(variables)).parse()


def reduce_fraction_mod_p(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise CoefficientReductionError(f"p = {p} divides denominator of {c}")
    return (c.numerator % p) * pow(c.denominator % p, -1, p) % p


def parse_poly(src: str, ring: PolyRing) -> Polynomial:
    """Parse an expression into F_p[ring.variables]."""
    qterms = parse_rational_poly(src, ring.variables)
    terms = {}
    for exps, c in qterms.items():
        v = reduce_fraction_mod_p(c, ring.p)
        if v:
            terms[exps] = v
    return Polynomial(ring, terms, _clean=True)
