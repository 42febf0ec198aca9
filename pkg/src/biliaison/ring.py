"""Exact coefficient fields and graded multivariate polynomials.

Polynomials are immutable sparse maps ``exponent tuple -> coefficient`` over
either the rationals or a prime field.  The monomial order is always graded
reverse lexicographic with ``x0 > x1 > ... > xn``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from operator import add
from typing import Iterable, Iterator, Mapping

DEFAULT_PRIME = 32003


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


class PolynomialParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for q in range(3, math.isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


class PrimeField:
    """The field of residues modulo an odd prime ``p``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if p == 2 or not _is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_str(self, a: int) -> str:
        # symmetric representative keeps small negative coefficients readable
        return str(a - self.p if a > self.p // 2 else a)

    def lift(self, a: int) -> int:
        return a - self.p if a > self.p // 2 else a

    def random_element(self, rng) -> int:
        return rng.randrange(self.p)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.p)

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


class RationalField:
    """The rationals, with coefficients stored as :class:`fractions.Fraction`."""

    p = 0
    characteristic = 0

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def to_str(self, a: Fraction) -> str:
        return str(a)

    def lift(self, a: Fraction) -> Fraction:
        return a

    def random_element(self, rng) -> Fraction:
        return Fraction(rng.randint(-20, 20))

    def random_nonzero(self, rng) -> Fraction:
        v = 0
        while v == 0:
            v = rng.randint(-20, 20)
        return Fraction(v)

    @property
    def name(self) -> str:
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_string(text: str):
    """Parse ``QQ``, ``GF(p)`` or a bare prime."""
    text = text.strip()
    if text.upper() in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"(?:GF|F|ZZ/)\(?\s*(\d+)\s*\)?", text, re.IGNORECASE)
    if m:
        return PrimeField(int(m.group(1)))
    if text.isdigit():
        return PrimeField(int(text))
    raise ValueError(f"unknown field {text!r}")


def grevlex_key(exps: tuple) -> tuple:
    return (sum(exps),) + tuple(-e for e in reversed(exps))


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PolyRing:
    """Polynomial ring ``k[x0, ..., xn]`` with the grevlex order."""

    order = "grevlex"

    def __init__(self, variables, field=None):
        if isinstance(variables, str):
            variables = [v for v in re.split(r"[\s,]+", variables) if v]
        variables = tuple(variables)
        if len(variables) < 2:
            raise ValueError("a polynomial ring needs at least two variables")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not _IDENT.fullmatch(v):
                raise ValueError(f"invalid variable name {v!r}")
        self.variables = variables
        self.field = field if field is not None else PrimeField()
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.variables == self.variables
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)}; {self.field.name})"

    def variables_text(self) -> str:
        return ",".join(self.variables)

    def to_dict(self) -> dict:
        return {"variables": list(self.variables), "field": self.field.name}

    @property
    def n(self) -> int:
        """Dimension of the projective space, i.e. number of variables - 1."""
        return self.nvars - 1

    def gens(self) -> list[Polynomial]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): self.field(1)}))
        return out

    def gen(self, name: str) -> Polynomial:
        return self.gens()[self._index[name]]

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def monomial(self, exps, coeff=1) -> Polynomial:
        exps = tuple(exps)
        c = self.field(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_dict(self, terms: Mapping) -> Polynomial:
        f = self.field
        d = {}
        for e, c in terms.items():
            c = f(c)
            if c:
                d[tuple(e)] = c
        return Polynomial(self, d)

    def __call__(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatchError(f"{x!r} is not in {self!r}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """Exponent vectors of all degree-``d`` monomials, largest first."""
        if d < 0:
            return []
        out = []
        for combo in combinations_with_replacement(range(self.nvars), d):
            e = [0] * self.nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        out.sort(key=grevlex_key, reverse=True)
        return out

    def random_form(self, d: int, rng) -> Polynomial:
        f = self.field
        return self.from_dict({e: f.random_element(rng) for e in self.monomials_of_degree(d)})

    def with_field(self, field) -> PolyRing:
        return PolyRing(self.variables, field)

    def monomial_str(self, exps) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable sparse polynomial; terms are kept in a dict keyed by exponents."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> list[tuple[tuple, object]]:
        """Terms as ``(exponents, coefficient)`` sorted strictly descending."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def as_dict(self) -> dict:
        return dict(self._terms)

    def coefficient(self, exps) -> object:
        return self._terms.get(tuple(exps), self.ring.field(0))

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring._zero_exp in self._terms)

    def constant_coefficient(self):
        return self._terms.get(self.ring._zero_exp, self.ring.field(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def lead_term(self) -> tuple[tuple, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no lead term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def lead_monomial(self) -> tuple:
        return self.lead_term()[0]

    def homogeneous_component(self, d: int) -> Polynomial:
        return Polynomial(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d})

    def homogeneous_components(self) -> dict[int, Polynomial]:
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in out.items()}

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, a in enumerate(e) if a}

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        d = dict(self._terms)
        for e, c in other._terms.items():
            v = d.get(e)
            v = c if v is None else (v + c) % p if p else v + c
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, {e: (-c) % p if p else -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        d: dict = {}
        get = d.get
        other_terms = list(other._terms.items())
        for e1, c1 in self._terms.items():
            for e2, c2 in other_terms:
                e = tuple(map(add, e1, e2))
                d[e] = get(e, 0) + c1 * c2
        if p:
            d = {e: v % p for e, v in d.items() if v % p}
        else:
            d = {e: v for e, v in d.items() if v}
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        p = f.p
        return Polynomial(self.ring, {e: (v * c) % p if p else v * c for e, v in self._terms.items()})

    def monic(self) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_term()[1]))

    def mul_monomial(self, exps) -> Polynomial:
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()}
        )

    def evaluate(self, point) -> object:
        f = self.ring.field
        total = f(0)
        for e, c in self._terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v = v * f(x) ** a
            total = total + v
        return f(total)

    def substitute(self, images: list[Polynomial]) -> Polynomial:
        """Ring map sending variable ``i`` to ``images[i]``."""
        out = self.ring.zero() if not images else images[0].ring.zero()
        for e, c in self._terms.items():
            term = out.ring.constant(c)
            for img, a in zip(images, e):
                if a:
                    term = term * img**a
            out = out + term
        return out

    def change_ring(self, ring: PolyRing) -> Polynomial:
        if ring.variables != self.ring.variables:
            raise RingMismatchError("variable lists differ")
        f = ring.field
        return ring.from_dict({e: (f(self.ring.field.lift(c))) for e, c in self._terms.items()})

    # -- comparison and display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        f = self.ring.field
        out = []
        for e, c in self.terms:
            s = f.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = self.ring.monomial_str(e)
            if mono == "1":
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


class _Parser:
    """Recursive descent parser for ``x^2*y - 3*z*w^2``-style expressions."""

    _TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("id", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _error(self, msg):
        tok = self._peek()
        pos = tok[2] if tok else len(self.text)
        raise PolynomialParseError(msg, self.text, pos)

    def parse(self) -> Polynomial:
        if not self.tokens:
            self._error("empty expression")
        f = self._expr()
        if self._peek() is not None:
            self._error("unexpected token")
        return f

    def _expr(self) -> Polynomial:
        tok = self._peek()
        sign = 1
        while tok and tok[0] == "op" and tok[1] in "+-":
            if tok[1] == "-":
                sign = -sign
            self.i += 1
            tok = self._peek()
        f = self._term()
        if sign < 0:
            f = -f
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                g = self._term()
                f = f + g if tok[1] == "+" else f - g
            else:
                return f

    def _term(self) -> Polynomial:
        f = self._power()
        while True:
            tok = self._peek()
            if tok is None:
                return f
            if tok[0] == "op" and tok[1] == "*":
                self.i += 1
                f = f * self._power()
            elif tok[0] == "op" and tok[1] == "/":
                self.i += 1
                g = self._power()
                if not g.is_constant() or g.is_zero():
                    self._error("division only by nonzero constants")
                f = f.scale(self.ring.field.inv(g.constant_coefficient()))
            elif tok[0] in ("id", "num") or (tok[0] == "op" and tok[1] == "("):
                # implicit multiplication, e.g. 3x or 2(x+y)
                f = f * self._power()
            else:
                return f

    def _power(self) -> Polynomial:
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            tok = self._peek()
            if tok is None or tok[0] != "num":
                self._error("expected integer exponent")
            self.i += 1
            return base ** int(tok[1])
        return base

    def _atom(self) -> Polynomial:
        tok = self._peek()
        if tok is None:
            self._error("unexpected end of input")
        kind, val, _ = tok
        if kind == "num":
            self.i += 1
            return self.ring.constant(int(val))
        if kind == "id":
            if val not in self.ring._index:
                self._error(f"unknown variable {val!r}")
            self.i += 1
            e = [0] * self.ring.nvars
            e[self.ring._index[val]] = 1
            return self.ring.monomial(e)
        if val == "(":
            self.i += 1
            f = self._expr()
            tok = self._peek()
            if tok is None or tok[1] != ")":
                self._error("expected ')'")
            self.i += 1
            return f
        if val == "-":
            self.i += 1
            return -self._power()
        self._error(f"unexpected {val!r}")


def homogeneous_component(f: Polynomial, d: int) -> Polynomial:
    return f.homogeneous_component(d)


def monomials_of_degree(ring: PolyRing, d: int) -> list[Polynomial]:
    return [ring.monomial(e) for e in ring.monomials_of_degree(d)]


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def parse_polys(ring: PolyRing, texts: Iterable[str]) -> list[Polynomial]:
    return [ring.parse(t) for t in texts]
