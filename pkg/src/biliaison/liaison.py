"""Linkage by colon ideals, strict Gorenstein links and elementary biliaisons."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .divisor import (
    AmbientScheme,
    Divisor,
    DivisorError,
    Multiplier,
    _ideal_module,
    _vectors_to_ideal,
    effective_divisor_from_subscheme,
    linearly_equivalent,
)
from .groebner import Ideal, codimension, ideal_quotient, is_nonzerodivisor, parse_ideal, saturation
from .modules import compose_is_surjective, hom
from .resolve import equidimensional_hull, free_resolution, is_AG, rao_dimensions
from .ring import Polynomial, PolyRing


class LinkError(ValueError):
    pass


class BiliaisonError(ValueError):
    pass


# -- polynomial helpers -----------------------------------------------------------------


def shift_poly(coeffs, h: int) -> list[Fraction]:
    """Coefficients of ``P(m - h)`` from those of ``P(m)`` (ascending)."""
    out = [Fraction(0)] * len(coeffs)
    for k, c in enumerate(coeffs):
        for j in range(k + 1):
            out[j] += Fraction(c) * comb(k, j) * Fraction(-h) ** (k - j)
    return _trim(out)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_add(a, b, sign: int = 1):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([Fraction(x) + sign * Fraction(y) for x, y in zip(a, b)])


def biliaison_hilbert_identity(P_X, P_V1, P_V2, h: int) -> bool:
    """``P_{V2}(m) = P_X(m) - P_X(m-h) + P_{V1}(m-h)`` as polynomials."""
    rhs = poly_add(poly_add(P_X, shift_poly(P_X, h), -1), shift_poly(P_V1, h))
    return _trim(P_V2) == rhs


# -- links --------------------------------------------------------------------------------


def _ideal_text(I: Ideal) -> str:
    return I.monic_text()


@dataclass
class LinkCertificate:
    ring: PolyRing
    I_Y: Ideal
    I_V1: Ideal
    I_V2: Ideal
    kind: str
    carrier: Ideal | None = None
    shift: int | None = None
    colon_forward: bool = False
    colon_backward: bool = False

    @property
    def ok(self) -> bool:
        return self.colon_forward and self.colon_backward

    def verify(self) -> bool:
        """Re-check containment and both colons from scratch."""
        Y, V1, V2 = (Ideal(self.ring, I.gens) for I in (self.I_Y, self.I_V1, self.I_V2))
        if not (Y.is_subset(V1) and Y.is_subset(V2)):
            return False
        return ideal_quotient(Y, V1) == V2 and ideal_quotient(Y, V2) == V1

    def to_dict(self) -> dict:
        out = {
            "type": "link",
            "ring": self.ring.variables_text(),
            "field": self.ring.field.name,
            "Y": _ideal_text(self.I_Y),
            "V1": _ideal_text(self.I_V1),
            "V2": _ideal_text(self.I_V2),
            "kind": self.kind,
            "colon_forward": self.colon_forward,
            "colon_backward": self.colon_backward,
        }
        if self.carrier is not None:
            out["carrier"] = _ideal_text(self.carrier)
            out["shift"] = self.shift
        return out

    @classmethod
    def from_dict(cls, data: dict, ring: PolyRing | None = None) -> LinkCertificate:
        from .ring import field_from_string

        ring = ring or PolyRing(data["ring"], field_from_string(data["field"]))
        carrier = parse_ideal(ring, data["carrier"]) if data.get("carrier") else None
        return cls(
            ring,
            parse_ideal(ring, data["Y"]),
            parse_ideal(ring, data["V1"]),
            parse_ideal(ring, data["V2"]),
            data.get("kind", "link"),
            carrier,
            data.get("shift"),
            data.get("colon_forward", False),
            data.get("colon_backward", False),
        )


def _link_kind(I_Y: Ideal) -> str:
    c = codimension(I_Y)
    if len(I_Y.minimal_generators()) == c:
        return "CI"
    ag, _ = is_AG(I_Y)
    return "AG" if ag else "other"


def link(I_Y: Ideal, I_V1: Ideal, kind: str | None = None) -> tuple[Ideal, LinkCertificate]:
    """Link ``V1`` by ``Y``: ``I_V2 = I_Y : I_V1``, certified by the double colon."""
    if not I_Y.is_subset(I_V1):
        raise LinkError("I_Y is not contained in I_V1")
    if I_V1.is_unit():
        raise LinkError("V1 is empty")
    if codimension(I_Y) != codimension(I_V1):
        raise LinkError("Y and V1 have different codimension")
    V2 = ideal_quotient(I_Y, I_V1)
    V2 = Ideal(I_Y.ring, V2.minimal_generators())
    back = ideal_quotient(I_Y, V2)
    cert = LinkCertificate(I_Y.ring, I_Y, I_V1, V2, kind or _link_kind(I_Y), colon_forward=True, colon_backward=back == I_V1)
    if not cert.colon_backward:
        raise LinkError("the double colon does not return V1 (V1 is not unmixed or not a union of components)")
    return V2, cert


def verify_link(I_Y: Ideal, I_V1: Ideal, I_V2: Ideal | None = None) -> LinkCertificate:
    if I_V2 is None:
        _, cert = link(I_Y, I_V1)
        return cert
    cert = LinkCertificate(I_Y.ring, I_Y, I_V1, I_V2, _link_kind(I_Y))
    cert.colon_forward = I_Y.is_subset(I_V1) and ideal_quotient(I_Y, I_V1) == I_V2
    cert.colon_backward = I_Y.is_subset(I_V2) and ideal_quotient(I_Y, I_V2) == I_V1
    return cert


# -- strict Gorenstein divisors --------------------------------------------------------------


@dataclass
class StrictAGReport:
    status: str  # "verified", "refuted" or "inconclusive"
    shift: int
    is_AG: bool
    ell: int | None
    dims_equal: bool | None = None
    surjection_found: bool | None = None
    window: tuple = (-5, 10)
    reason: str = ""

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "shift": self.shift,
            "is_AG": self.is_AG,
            "ell": self.ell,
            "dims_equal": self.dims_equal,
            "surjection_found": self.surjection_found,
            "window": list(self.window),
            "reason": self.reason,
        }


def verify_strict_AG(
    I_Y: Ideal, X: AmbientScheme, m: int, window: Sequence[int] = (-5, 10), seed: int = 0, tries: int = 5
) -> StrictAGReport:
    """Whether ``I_{Y,X}`` is isomorphic to ``omega_X(-m)``.

    Checks that ``Y`` is AG with ``omega_Y = O_Y(m)``, compares graded
    dimensions on the window and looks for a random surjection
    ``omega_X(-m) -> I_Y / I_X``.  Not finding one is inconclusive.
    """
    lo, hi = window
    if hi < lo:
        raise ValueError("empty degree window")
    if not X.ideal.is_subset(I_Y):
        raise DivisorError("I_X is not contained in I_Y")
    ag, ell = is_AG(I_Y)
    rep = StrictAGReport("refuted", m, ag, ell, window=tuple(window))
    if not ag:
        rep.reason = "Y is not arithmetically Gorenstein"
        return rep
    if ell != m:
        rep.reason = f"omega_Y = O_Y({ell}), expected shift {m}"
        return rep
    omega = X.omega
    dims_ok = True
    for d in range(lo, hi + 1):
        lhs = _hf(X.ideal, d) - _hf(I_Y, d)
        if lhs != omega.hilbert_function(d - m):
            dims_ok = False
            break
    rep.dims_equal = dims_ok
    if not dims_ok:
        rep.reason = "graded dimensions differ"
        return rep
    tgt, _ = _ideal_module(X, I_Y)
    H = hom(omega, tgt)
    rng = random.Random(seed)
    for _ in range(tries):
        phi = H.random_map(m, rng)
        if not phi:
            continue
        imgs = H.images_of_generators(phi)
        if compose_is_surjective(X.ring, tgt.degrees, imgs, tgt):
            rep.surjection_found = True
            rep.status = "verified"
            return rep
    rep.surjection_found = False
    rep.status = "inconclusive"
    rep.reason = "no surjective homomorphism found"
    return rep


def _hf(I: Ideal, d: int) -> int:
    from ._hilbert import hilbert_function

    if I.is_unit():
        return 0
    return hilbert_function(I.hilbert_numerator(), I.ring.nvars, d)


# -- biliaison ----------------------------------------------------------------------------------


@dataclass
class BiliaisonCertificate:
    """Witness that ``V2 ~ V1 + hH`` on ``X``: ``b I_{V2} = a I_{V1}`` modulo ``I_X``
    (up to saturation) with ``deg a - deg b = h``."""

    ring: PolyRing
    I_X: Ideal
    I_V1: Ideal
    I_V2: Ideal
    h: int
    a: Polynomial
    b: Polynomial
    hilbert_identity: bool = False
    witness: bool = False
    rao_shift: dict | None = None
    links: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.witness and self.hilbert_identity and (self.rao_shift is None or all(self.rao_shift.values()))

    def verify(self) -> bool:
        """Replay every check from the stored ideals and forms."""
        R = self.ring
        X, V1, V2 = self.I_X, self.I_V1, self.I_V2
        if not (X.is_subset(V1) and X.is_subset(V2)):
            return False
        if self.a.degree() - self.b.degree() != self.h:
            return False
        if not (is_nonzerodivisor(self.a, X) and is_nonzerodivisor(self.b, X)):
            return False
        if not witness_holds(X, V1, V2, self.a, self.b):
            return False
        if not biliaison_hilbert_identity(X.hilbert_polynomial(), V1.hilbert_polynomial(), V2.hilbert_polynomial(), self.h):
            return False
        return all(c.verify() for c in self.links)

    def to_dict(self) -> dict:
        return {
            "type": "biliaison",
            "ring": self.ring.variables_text(),
            "field": self.ring.field.name,
            "X": _ideal_text(self.I_X),
            "V1": _ideal_text(self.I_V1),
            "V2": _ideal_text(self.I_V2),
            "h": self.h,
            "a": str(self.a),
            "b": str(self.b),
            "witness": self.witness,
            "hilbert_identity": self.hilbert_identity,
            "rao_shift": None if self.rao_shift is None else {str(k): v for k, v in self.rao_shift.items()},
            "links": [c.to_dict() for c in self.links],
        }

    @classmethod
    def from_dict(cls, data: dict) -> BiliaisonCertificate:
        from .ring import field_from_string

        R = PolyRing(data["ring"], field_from_string(data["field"]))
        cert = cls(
            R,
            parse_ideal(R, data["X"]),
            parse_ideal(R, data["V1"]),
            parse_ideal(R, data["V2"]),
            int(data["h"]),
            R.parse(data["a"]),
            R.parse(data["b"]),
            data.get("hilbert_identity", False),
            data.get("witness", False),
        )
        cert.links = [LinkCertificate.from_dict(c, R) for c in data.get("links", [])]
        return cert


def witness_holds(I_X: Ideal, I_V1: Ideal, I_V2: Ideal, a: Polynomial, b: Polynomial) -> bool:
    lhs = I_V2 * b + I_X
    rhs = I_V1 * a + I_X
    if lhs == rhs:
        return True
    return saturation(lhs) == saturation(rhs)


def _rao_shift(V1: Ideal, V2: Ideal, h: int, window) -> dict:
    lo, hi = window
    dimV = V1.krull_dimension() - 1
    out = {}
    for i in range(1, dimV + 1):
        r2 = rao_dimensions(V2, i, (lo, hi))
        r1 = rao_dimensions(V1, i, (lo - h, hi - h))
        out[i] = r1 == r2
    return out


def certify_biliaison(
    X: AmbientScheme, I_V1: Ideal, I_V2: Ideal, h: int, f: Multiplier, rao: bool = False, window=(-5, 10)
) -> BiliaisonCertificate:
    cert = BiliaisonCertificate(X.ring, X.ideal, I_V1, I_V2, h, f.a, f.b)
    cert.witness = (
        f.shift == h and X.is_nonzerodivisor(f.a) and X.is_nonzerodivisor(f.b) and witness_holds(X.ideal, I_V1, I_V2, f.a, f.b)
    )
    cert.hilbert_identity = biliaison_hilbert_identity(
        X.ideal.hilbert_polynomial(), I_V1.hilbert_polynomial(), I_V2.hilbert_polynomial(), h
    )
    if rao:
        cert.rao_shift = _rao_shift(I_V1, I_V2, h, window)
    return cert


def verify_elementary_biliaison(
    V1: Divisor, V2: Divisor, X: AmbientScheme | None = None, h: int = 0, seed: int = 0, rao: bool = False, window=(-5, 10)
) -> BiliaisonCertificate:
    """Certificate that ``V2 ~ V1 + hH`` on ``X``; raises if no multiplier exists."""
    X = X or V1.X
    f = linearly_equivalent(V1, V2, shift=h, seed=seed)
    if f is None:
        raise BiliaisonError(f"no multiplier of degree {h} relates the two divisors")
    return certify_biliaison(X, V1.effective_ideal(), V2.effective_ideal(), h, f, rao, window)


@dataclass
class StrictLinks:
    W: Ideal
    Y: Ideal
    Y_prime: Ideal
    m: int
    first: LinkCertificate
    second: LinkCertificate
    multiplier: Multiplier
    Y_report: StrictAGReport | None = None
    Y_prime_report: StrictAGReport | None = None

    def verify(self) -> bool:
        return self.first.verify() and self.second.verify()

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "W": _ideal_text(self.W),
            "Y": _ideal_text(self.Y),
            "Y_prime": _ideal_text(self.Y_prime),
            "multiplier": self.multiplier.to_dict(),
            "links": [self.first.to_dict(), self.second.to_dict()],
            "Y_strict_AG": self.Y_report.to_dict() if self.Y_report else None,
            "Y_prime_strict_AG": self.Y_prime_report.to_dict() if self.Y_prime_report else None,
        }


def biliaison_to_strict_links(
    V1: Divisor,
    V2: Divisor,
    X: AmbientScheme | None = None,
    h: int = 0,
    seed: int = 0,
    max_m: int = 10,
    multiplier: Multiplier | None = None,
    tries: int = 6,
    check_ag: bool = True,
) -> StrictLinks:
    """Realize ``V2 ~ V1 + hH`` by two strict Gorenstein links.

    ``Y`` is the image of a random injective map ``omega_X(-m) -> I_{V1}/I_X``
    for the smallest ``m >= 0`` that works, so ``Y ~ M + mH``; ``W`` is
    linked to ``V1`` by ``Y`` and to ``V2`` by ``Y' = (a/b) Y``.
    """
    X = X or V1.X
    f = multiplier or linearly_equivalent(V1, V2, shift=h, seed=seed)
    if f is None:
        raise BiliaisonError(f"V2 is not linearly equivalent to V1 + {h}H")
    J1 = V1.effective_ideal()
    J2 = V2.effective_ideal()
    src = X.omega
    tgt, tgt_gens = _ideal_module(X, J1)
    H = hom(src, tgt)
    rng = random.Random(seed)
    for m in range(0, max_m + 1):
        if not H.module.basis(m):
            continue
        for _ in range(tries):
            phi = H.random_map(m, rng)
            if not phi:
                continue
            imgs = [_module_vec_to_poly(X, v, tgt_gens) for v in H.images_of_generators(phi)]
            Y = Ideal(X.ring, imgs) + X.ideal
            if Y.is_unit() or codimension(Y) != X.codim + 1:
                continue
            Y = Ideal(X.ring, Y.minimal_generators())
            try:
                W, c1 = link(Y, J1, kind="strict-AG")
            except LinkError:
                continue
            Yp = ideal_quotient(Y * f.a + X.ideal, f.b)
            Yp = Ideal(X.ring, Yp.minimal_generators())
            try:
                V2b, c2 = link(Yp, W, kind="strict-AG")
            except LinkError:
                continue
            if V2b != J2:
                continue
            c1.carrier, c1.shift = X.ideal, m
            c2.carrier, c2.shift = X.ideal, m + h
            out = StrictLinks(W, Y, Yp, m, c1, c2, f)
            if check_ag:
                out.Y_report = verify_strict_AG(Y, X, m, seed=seed)
                out.Y_prime_report = verify_strict_AG(Yp, X, m + h, seed=seed)
            return out
    raise BiliaisonError(f"no strict Gorenstein divisor found up to twist {max_m}")


def _module_vec_to_poly(X: AmbientScheme, v: dict, gens) -> Polynomial:
    """A vector over the minimal generators of ``J/I_X`` as a polynomial of ``J``."""
    R = X.ring
    out = R.zero()
    for (k, u), c in v.items():
        g = Polynomial(R, {e: a for (_, e), a in gens[k].items()})
        out = out + g.mul_monomial(u).scale(c)
    return out


# -- intersection of linked schemes ------------------------------------------------------------


@dataclass
class IntersectionReport:
    D: Ideal
    ell: int
    D_is_AG: bool
    D_ell: int | None
    on_X1: StrictAGReport
    on_X2: StrictAGReport

    @property
    def ok(self) -> bool:
        return self.D_is_AG and self.on_X1.verified and self.on_X2.verified

    def to_dict(self) -> dict:
        return {
            "D": str(self.D),
            "ell": self.ell,
            "D_is_AG": self.D_is_AG,
            "D_ell": self.D_ell,
            "on_X1": self.on_X1.to_dict(),
            "on_X2": self.on_X2.to_dict(),
        }


def intersection_divisor_check(I_X1: Ideal, I_X2: Ideal, I_S: Ideal, window=(-5, 10), seed: int = 0) -> IntersectionReport:
    """For ``X1, X2`` linked by an AG scheme ``S``: ``D = X1 meet X2`` is AG and
    is of the form ``M + ell H`` on both, ``omega_S = O_S(ell)``."""
    c = codimension(I_X1)
    J = I_X1 + I_X2
    if J.is_unit() or codimension(J) <= c:
        raise LinkError("X1 and X2 have a common component")
    ag_S, ell = is_AG(I_S)
    if not ag_S:
        raise LinkError("S is not arithmetically Gorenstein")
    cert = verify_link(I_S, I_X1, I_X2)
    if not cert.ok:
        raise LinkError("X1 and X2 are not linked by S")
    D = equidimensional_hull(J)
    D_ag, D_ell = is_AG(D)
    X1 = AmbientScheme(I_X1)
    X2 = AmbientScheme(I_X2)
    r1 = verify_strict_AG(D, X1, ell, window, seed)
    r2 = verify_strict_AG(D, X2, ell, window, seed)
    return IntersectionReport(D, ell, D_ag, D_ell, r1, r2)
