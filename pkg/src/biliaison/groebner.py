"""Homogeneous ideals: Groebner bases, membership, colon, saturation,
elimination, intersection and dimension."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from . import _gb
from ._hilbert import (
    _padd,
    hilbert_numerator,
    hilbert_polynomial,
    independent_set_dimension,
    krull_dimension,
)
from .ring import Polynomial, PolyRing, RingMismatchError


class ImproperIdealError(ValueError):
    """The ideal is the whole ring where a proper ideal was required."""


class NotHomogeneousError(ValueError):
    pass


def _to_vec(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f._terms.items()}


def _from_vec(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


class Ideal:
    """A homogeneous ideal given by generators, with a cached reduced GB."""

    def __init__(self, ring: PolyRing, gens: Iterable = (), *, check: bool = True):
        self.ring = ring
        out = []
        for g in gens:
            g = ring(g)
            if g.ring != ring:
                raise RingMismatchError("generator from another ring")
            if check and not g.is_homogeneous():
                raise NotHomogeneousError(f"{g} is not homogeneous")
            if g:
                out.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(out)
        self._gb: _gb.GBResult | None = None
        self._gb_polys: tuple[Polynomial, ...] | None = None
        self._numerator = None
        self.known_saturated: bool | None = None
        self.known_codim: int | None = None

    # -- Groebner basis ------------------------------------------------------
    def _order(self) -> _gb.Order:
        return _gb.Order(self.ring.nvars)

    def _gb_result(self) -> _gb.GBResult:
        if self._gb is None:
            p = self.ring.field.p
            homog = all(g.is_homogeneous() for g in self.gens)
            res = _gb.groebner([_to_vec(g) for g in self.gens], self._order(), p, minimal=False)
            self._gb = res
            self._gb_polys = tuple(_from_vec(self.ring, v) for v in res.basis)
            if not homog:
                self.known_saturated = None
        return self._gb

    def groebner_basis(self) -> tuple[Polynomial, ...]:
        self._gb_result()
        return self._gb_polys

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = self.ring(f)
        res = self._gb_result()
        return _from_vec(self.ring, res.reduce(_to_vec(f)))

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_subset(self, other: Ideal) -> bool:
        _check_same(self, other)
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ring, self.groebner_basis()))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def lead_monomials(self) -> list[tuple]:
        return [e for (_, e) in self._gb_result().leads()]

    def minimal_generators(self) -> tuple[Polynomial, ...]:
        p = self.ring.field.p
        res = _gb.groebner([_to_vec(g) for g in self.gens], self._order(), p, minimal=True, reduced=False)
        return tuple(self.gens[i] for i in res.kept)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal(self.ring, [other])
        _check_same(self, other)
        seen = {g.monic() for g in self.gens if g}
        extra = [g for g in other.gens if g and g.monic() not in seen]
        return Ideal(self.ring, self.gens + tuple(extra))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.gens])
        _check_same(self, other)
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            out = out * self
        return Ideal(self.ring, out.minimal_generators()) if k > 1 else out

    # -- numerical invariants --------------------------------------------------
    def hilbert_numerator(self) -> dict:
        if self._numerator is None:
            self._numerator = hilbert_numerator(self.lead_monomials(), self.ring.nvars)
        return self._numerator

    def krull_dimension(self) -> int:
        return krull_dimension(self.hilbert_numerator(), self.ring.nvars)

    def hilbert_polynomial(self):
        return hilbert_polynomial(self.hilbert_numerator(), self.ring.nvars)

    def codim(self) -> int:
        return codimension(self)

    def __str__(self):
        return "ideal { " + "; ".join(str(g) for g in self.gens) + " }"

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"

    def to_text(self) -> str:
        return str(self)

    def monic_text(self) -> str:
        """Like ``str`` but with every generator scaled to be monic."""
        return "ideal { " + "; ".join(str(g.monic()) for g in self.gens if g) + " }"


def _check_same(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring!r} vs {J.ring!r}")


def ideal(ring: PolyRing, *gens) -> Ideal:
    if len(gens) == 1 and not isinstance(gens[0], (str, Polynomial)):
        gens = tuple(gens[0])
    return Ideal(ring, gens)


def parse_ideal(ring: PolyRing, text: str) -> Ideal:
    """Parse ``ideal { f1; f2; ... }`` (the braces and keyword are optional)."""
    body = text.strip()
    if body.startswith("ideal"):
        body = body[len("ideal") :].strip()
    if body.startswith("{"):
        if not body.endswith("}"):
            raise ValueError("unterminated ideal block")
        body = body[1:-1]
    parts = [s.strip() for s in body.replace("\n", ";").split(";")]
    return Ideal(ring, [ring.parse(s) for s in parts if s])


# -- the operations ------------------------------------------------------------


def groebner_basis(I: Ideal) -> Ideal:
    """The same ideal, generated by its reduced Groebner basis."""
    G = Ideal(I.ring, I.groebner_basis(), check=False)
    G._gb, G._gb_polys = I._gb, I._gb_polys
    return G


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    return I.normal_form(f)


def divide_exact(h: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``h / g`` when ``g`` divides ``h`` exactly."""
    ring = h.ring
    p = ring.field.p
    order = _gb.Order(ring.nvars)
    gl, gc = g.lead_term()
    ginv = ring.field.inv(gc)
    rem = h.as_dict()
    quot: dict = {}
    gterms = g.as_dict()
    while rem:
        e = max(rem, key=lambda x: order.key((0, x)))
        c = rem[e]
        u = tuple(a - b for a, b in zip(e, gl))
        if min(u) < 0:
            raise ValueError(f"{g} does not divide {h}")
        q = c * ginv % p if p else c * ginv
        quot[u] = q
        for ge, gcoef in gterms.items():
            nt = tuple(a + b for a, b in zip(ge, u))
            v = rem.get(nt, 0) - q * gcoef
            if p:
                v %= p
            if v:
                rem[nt] = v
            else:
                rem.pop(nt, None)
    return Polynomial(ring, quot)


def _extended_ring_elim(ring: PolyRing, k: int):
    return _gb.Order(ring.nvars + k, elim=k)


def intersect(I: Ideal, J: Ideal, method: str = "elimination") -> Ideal:
    """``I`` meet ``J``.

    ``method="elimination"`` eliminates an auxiliary variable ``t`` from
    ``t*I + (1-t)*J``; ``method="syzygy"`` reads the intersection off the
    syzygies of the concatenated generator lists.
    """
    _check_same(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if method == "syzygy":
        return _intersect_syzygy(I, J)
    p = ring.field.p
    order = _extended_ring_elim(ring, 1)
    vecs = []
    for g in I.gens:
        vecs.append({(0, (1,) + e): c for e, c in g._terms.items()})
    for g in J.gens:
        v = {}
        for e, c in g._terms.items():
            v[(0, (0,) + e)] = c
            v[(0, (1,) + e)] = (-c) % p if p else -c
        vecs.append(v)
    res = _gb.groebner(vecs, order, p)
    gens = []
    for v in res.basis:
        if all(e[0] == 0 for (_, e) in v):
            f = Polynomial(ring, {e[1:]: c for (_, e), c in v.items()})
            gens.extend(f.homogeneous_components().values())
    return Ideal(ring, gens)


def _intersect_syzygy(I: Ideal, J: Ideal) -> Ideal:
    from .modules import syzygies

    ring = I.ring
    cols = [_to_vec(g) for g in I.gens] + [
        {t: ((-c) % ring.field.p if ring.field.p else -c) for t, c in _to_vec(g).items()} for g in J.gens
    ]
    degs = [g.degree() for g in I.gens] + [g.degree() for g in J.gens]
    syz = syzygies(ring, cols, [0], degs)
    k = len(I.gens)
    gens = []
    for s in syz:
        f = ring.zero()
        for (c, e), coef in s.items():
            if c < k:
                f = f + I.gens[c].mul_monomial(e).scale(coef)
        gens.append(f)
    return Ideal(ring, gens)


def ideal_quotient(I: Ideal, J, method: str = "elimination") -> Ideal:
    """``(I : J)``; ``J`` may be an ideal or a single polynomial."""
    ring = I.ring
    if isinstance(J, Polynomial):
        return _quotient_poly(I, J, method)
    _check_same(I, J)
    if J.is_zero():
        return Ideal(ring, [ring.one()])
    out = None
    for g in J.gens:
        Q = _quotient_poly(I, g, method)
        out = Q if out is None else intersect(out, Q, method)
        if out.is_subset(I):
            # cannot shrink below I
            break
    return out


def _quotient_poly(I: Ideal, g: Polynomial, method: str) -> Ideal:
    ring = I.ring
    if g.is_zero():
        return Ideal(ring, [ring.one()])
    if I.contains(g):
        return Ideal(ring, [ring.one()])
    if method == "syzygy":
        from .modules import syzygies

        p = ring.field.p
        cols = [_to_vec(g)] + [_to_vec(f) for f in I.gens]
        degs = [g.degree()] + [f.degree() for f in I.gens]
        syz = syzygies(ring, cols, [0], degs)
        gens = []
        for s in syz:
            gens.append(Polynomial(ring, {e: c for (cc, e), c in s.items() if cc == 0}))
        return Ideal(ring, gens)
    inter = intersect(I, Ideal(ring, [g]), method)
    return Ideal(ring, [divide_exact(h, g) for h in inter.gens])


def _irrelevant(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


def saturation(I: Ideal, J: Ideal | None = None, method: str = "elimination") -> Ideal:
    """``(I : J^infinity)``; ``J`` defaults to the irrelevant ideal."""
    ring = I.ring
    if J is None:
        if I.known_saturated:
            return I
        if I.is_zero():
            I.known_saturated = True
            return I
        fast = _saturate_irrelevant(I)
        if fast is not None:
            return fast
        J = _irrelevant(ring)
    cur = I
    while True:
        nxt = ideal_quotient(cur, J, method)
        if nxt.is_subset(cur):
            if J.gens and J == _irrelevant(ring):
                cur.known_saturated = True
            return cur
        cur = nxt


def _random_linear_form(ring: PolyRing, rng) -> Polynomial:
    f = ring.field
    return ring.from_dict(
        {tuple(1 if j == i else 0 for j in range(ring.nvars)): f.random_nonzero(rng) for i in range(ring.nvars)}
    )


def _saturate_irrelevant(I: Ideal, seed: int = 0) -> Ideal | None:
    """Saturate via a random linear form and certify the answer.

    Returns ``None`` when the certificate fails (caller falls back to
    iterated quotients).
    """
    ring = I.ring
    rng = random.Random(seed)
    ell = _random_linear_form(ring, rng)
    if is_nonzerodivisor(ell, I):
        I.known_saturated = True
        return I
    if I.is_unit():
        return I
    S = _colon_power_linear(I, ell)
    ell2 = _random_linear_form(ring, rng)
    if S.is_unit():
        # I is m-primary or the random form was unlucky; verify directly
        if I.krull_dimension() <= 0:
            S.known_saturated = True
            return S
        return None
    if not is_nonzerodivisor(ell2, S):
        return None
    if S.hilbert_polynomial() != I.hilbert_polynomial():
        return None
    S.known_saturated = True
    return S


def _colon_power_linear(I: Ideal, ell: Polynomial) -> Ideal:
    """``I : ell^infinity`` by making ``ell`` the last variable (grevlex trick)."""
    ring = I.ring
    n = ring.nvars
    coeffs = [ell.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    xs = ring.gens()
    inv = ring.field.inv(coeffs[-1])
    # x_last = (y_last - sum_{i<last} a_i y_i) / a_last
    last = xs[-1]
    for i in range(n - 1):
        last = last - xs[i].scale(coeffs[i])
    last = last.scale(inv)
    forward = xs[:-1] + [last]
    J = Ideal(ring, [g.substitute(forward) for g in I.gens])
    gb = J.groebner_basis()
    divided = []
    for g in gb:
        k = min(e[-1] for e in g.as_dict())
        divided.append(g if k == 0 else Polynomial(ring, {e[:-1] + (e[-1] - k,): c for e, c in g.as_dict().items()}))
    back = xs[:-1] + [ell]
    return Ideal(ring, [g.substitute(back) for g in divided])


def eliminate(I: Ideal, variables: Sequence) -> Ideal:
    """``I`` intersected with the subring of the remaining variables.

    The result is returned as an ideal of the same ring whose generators do
    not involve the eliminated variables.
    """
    ring = I.ring
    idx = [ring.index(v) if isinstance(v, str) else int(v) for v in variables]
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    p = ring.field.p
    order = _gb.Order(ring.nvars, elim=len(idx))
    vecs = []
    for g in I.gens:
        vecs.append({(0, tuple(e[i] for i in perm)): c for e, c in g._terms.items()})
    res = _gb.groebner(vecs, order, p)
    k = len(idx)
    gens = []
    for v in res.basis:
        if all(sum(e[:k]) == 0 for (_, e) in v):
            d = {}
            for (_, e), c in v.items():
                orig = [0] * ring.nvars
                for pos, i in enumerate(perm):
                    orig[i] = e[pos]
                d[tuple(orig)] = c
            gens.append(Polynomial(ring, d))
    return Ideal(ring, gens, check=False)


def is_nonzerodivisor(f: Polynomial, I: Ideal, method: str = "hilbert") -> bool:
    """Whether ``f`` is a nonzerodivisor on ``R/I``.

    The default test compares Hilbert series: ``f`` of degree ``d`` is a
    nonzerodivisor exactly when ``HS(R/(I+f)) = (1 - t^d) HS(R/I)``.
    ``method="colon"`` checks ``(I : f) = I`` instead.
    """
    if not f.is_homogeneous():
        raise NotHomogeneousError(f"{f} is not homogeneous")
    if f.is_zero():
        return I.is_unit()
    if method == "colon":
        return ideal_quotient(I, f).is_subset(I)
    d = f.degree()
    big = I + Ideal(I.ring, [f])
    lhs = big.hilbert_numerator()
    base = I.hilbert_numerator()
    rhs = _padd(base, base, shift=d, sign=-1)
    return lhs == rhs


def codimension(I: Ideal, check: bool = True) -> int:
    """``n + 1 - dim R/I`` read from the lead-term ideal.

    With ``check`` the independent-set dimension is compared against the
    pole order of the Hilbert series.
    """
    if I.is_unit():
        raise ImproperIdealError("the ideal contains a unit")
    leads = I.lead_monomials()
    dim = independent_set_dimension(leads, I.ring.nvars)
    if check:
        dim2 = I.krull_dimension()
        if dim != dim2:
            raise AssertionError(f"dimension mismatch: independent sets {dim}, Hilbert series {dim2}")
    I.known_codim = I.ring.nvars - dim
    return I.known_codim


def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = ideals[0].ring
    gens: list = []
    for J in ideals:
        _check_same(ideals[0], J)
        gens.extend(J.gens)
    return Ideal(ring, gens)


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    return I == J
