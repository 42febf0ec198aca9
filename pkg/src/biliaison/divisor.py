"""Generalized divisors on an ACM scheme X in projective space.

A divisor is stored as a pair ``(J, g)``: an ideal ``J`` of the polynomial
ring containing ``I_X`` and a form ``g`` that is a nonzerodivisor modulo
``I_X``.  It stands for the fractional ideal ``(J / I_X) * g^{-1}``.  All
duals are colon ideals against a principal nonzerodivisor and the
S2-ification of an ideal is its unmixed (equidimensional) hull.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import (
    Ideal,
    ImproperIdealError,
    codimension,
    ideal_quotient,
    is_nonzerodivisor,
    saturation,
)
from .modules import GradedModule, hom, subquotient
from .resolve import canonical_module, equidimensional_hull, ext_module, is_ACM
from .ring import Polynomial, PolyRing


class DivisorError(ValueError):
    pass


class DegenerateError(DivisorError):
    """The ideal contains no nonzerodivisor modulo ``I_X``."""


class NotS2Error(DivisorError):
    """The ideal defines a subscheme with embedded or lower-dimensional parts."""

    def __init__(self, message: str, hull: Ideal | None = None):
        super().__init__(message)
        self.hull = hull


def _ideal_key(I: Ideal):
    return I.groebner_basis()


class AmbientScheme:
    """An ACM subscheme ``X`` of projective space with its cached data."""

    def __init__(self, I: Ideal, linear_form: Polynomial | None = None, check: bool = True, seed: int = 0):
        self.ideal = I
        self.ring = I.ring
        if check:
            sat = saturation(I)
            if not sat.is_subset(I):
                raise DivisorError("the ideal of X must be saturated")
            if not is_ACM(I):
                raise DivisorError("X must be arithmetically Cohen-Macaulay")
        self.codim = codimension(I)
        self._omega = None
        self._ell = linear_form
        self._seed = seed
        self._A = None

    @property
    def dim(self) -> int:
        """Projective dimension of ``X``."""
        return self.ring.nvars - 1 - self.codim

    @property
    def omega(self) -> GradedModule:
        if self._omega is None:
            self._omega = canonical_module(self.ideal, check=False)
        return self._omega

    @property
    def coordinate_ring(self) -> GradedModule:
        if self._A is None:
            self._A = GradedModule.quotient(self.ideal)
        return self._A

    @property
    def linear_form(self) -> Polynomial:
        """A fixed linear nonzerodivisor modulo ``I_X`` (the hyperplane class)."""
        if self._ell is None:
            s = sum(self.ring.gens(), self.ring.zero())
            if is_nonzerodivisor(s, self.ideal):
                self._ell = s
            else:
                rng = random.Random(self._seed)
                for _ in range(50):
                    f = self.ring.random_form(1, rng)
                    if f and is_nonzerodivisor(f, self.ideal):
                        self._ell = f
                        break
                else:
                    raise DivisorError("no linear nonzerodivisor found")
        return self._ell

    def contains(self, J: Ideal) -> bool:
        return self.ideal.is_subset(J)

    def hull(self, J: Ideal) -> Ideal:
        """S2-ification of the ideal sheaf ``J / I_X`` (pure codimension-one hull)."""
        if J.is_unit() or codimension(J) > self.codim + 1:
            # no component of codimension one on X: the sheaf is O_X
            return Ideal(self.ring, [self.ring.one()])
        return equidimensional_hull(J)

    def is_nonzerodivisor(self, f: Polynomial) -> bool:
        return bool(f) and is_nonzerodivisor(f, self.ideal)

    def find_nonzerodivisor(self, J: Ideal, seed: int = 0) -> Polynomial:
        """A homogeneous element of ``J`` that is a nonzerodivisor mod ``I_X``."""
        for g in sorted(J.gens, key=lambda f: (f.degree(), str(f))):
            if self.is_nonzerodivisor(g):
                return g
        rng = random.Random(seed)
        gens = [g for g in J.gens if not self.ideal.contains(g)]
        if not gens:
            raise DegenerateError("the ideal is contained in I_X")
        top = max(g.degree() for g in gens)
        for d in range(top, top + 3):
            for _ in range(8):
                f = self.ring.zero()
                for g in gens:
                    if g.degree() <= d:
                        f = f + self.ring.random_form(d - g.degree(), rng) * g
                if f and self.is_nonzerodivisor(f):
                    return f
        raise DegenerateError("no nonzerodivisor found in the ideal modulo I_X")

    def to_dict(self) -> dict:
        return {"ideal": str(self.ideal), "codim": self.codim, "linear_form": str(self.linear_form)}


class Divisor:
    """A generalized divisor ``(J / I_X) * g^{-1}`` on ``X``."""

    def __init__(self, X: AmbientScheme, J: Ideal, den: Polynomial | None = None, label: str = ""):
        self.X = X
        self.J = J
        self.den = den if den is not None else X.ring.one()
        self.label = label
        self.twist: int | None = None

    @property
    def ring(self) -> PolyRing:
        return self.X.ring

    def is_zero_divisor(self) -> bool:
        return self.J.is_unit() and self.den.is_constant()

    def is_effective(self) -> bool:
        if self.den.is_constant():
            return True
        target = saturation(self.X.ideal + Ideal(self.ring, [self.den]))
        return self.J.is_subset(target)

    def effective_ideal(self) -> Ideal:
        """Ideal of the subscheme of an effective divisor."""
        if self.den.is_constant():
            return self.J
        if not self.is_effective():
            raise DivisorError("the divisor is not effective")
        Q = ideal_quotient(self.J + self.X.ideal, self.den)
        return self.X.hull(Q)

    def same_as(self, other: Divisor) -> bool:
        """Equality of fractional ideal sheaves."""
        if self.X.ideal != other.X.ideal:
            return False
        a = saturation(self.J * other.den + self.X.ideal)
        b = saturation(other.J * self.den + self.X.ideal)
        return a == b

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def degree_shift(self) -> int:
        """``deg g``: the twist carried by the denominator."""
        return self.den.degree()

    def hilbert_polynomial(self):
        """Hilbert polynomial of ``O_D`` for effective ``D``."""
        return self.effective_ideal().hilbert_polynomial()

    def to_dict(self) -> dict:
        out = {"ideal": str(self.J), "den": str(self.den)}
        if self.twist is not None:
            out["twist"] = self.twist
        return out

    def __repr__(self):
        return f"Divisor({self.J}, den={self.den})"


def _canonical(X: AmbientScheme, J: Ideal, den: Polynomial) -> Divisor:
    """Normal form: hull the numerator; clear the denominator when effective."""
    J = Ideal(X.ring, list(J.gens) + list(X.ideal.gens))
    if den.is_constant():
        return Divisor(X, X.hull(J))
    D = Divisor(X, J, den)
    if D.is_effective():
        return Divisor(X, D.effective_ideal())
    return Divisor(X, X.hull(J), den)


def zero_divisor(X: AmbientScheme) -> Divisor:
    return Divisor(X, Ideal(X.ring, [X.ring.one()]))


def effective_divisor_from_subscheme(X: AmbientScheme, J: Ideal) -> Divisor:
    """The effective divisor of a pure codimension-one subscheme of ``X``."""
    if not X.contains(J):
        raise DivisorError("the ideal must contain I_X")
    if J.is_unit():
        return zero_divisor(X)
    if codimension(J) <= X.codim:
        raise DegenerateError("the subscheme contains a component of X")
    if not saturation(J).is_subset(J):
        raise DivisorError("the ideal must be saturated")
    H = X.hull(J)
    if H != J:
        raise NotS2Error("the subscheme is not pure of codimension one; try its hull", H)
    return Divisor(X, J)


def hyperplane_divisor(X: AmbientScheme, form: Polynomial | None = None, m: int = 1) -> Divisor:
    """``m H`` cut by ``form`` (default: the fixed linear form of ``X``)."""
    f = form if form is not None else X.linear_form
    if not X.is_nonzerodivisor(f):
        raise DegenerateError(f"{f} is a zerodivisor modulo I_X")
    if m >= 0:
        return Divisor(X, X.hull(Ideal(X.ring, [f**m]) + X.ideal))
    return Divisor(X, Ideal(X.ring, [X.ring.one()]), f ** (-m))


def principal_divisor(X: AmbientScheme, a: Polynomial, b: Polynomial) -> Divisor:
    """The divisor of ``a / b``, whose ideal is ``(b / a) O_X``."""
    if not (X.is_nonzerodivisor(a) and X.is_nonzerodivisor(b)):
        raise DegenerateError("numerator and denominator must be nonzerodivisors")
    return _canonical(X, Ideal(X.ring, [b]), a)


def divisor_sum(D1: Divisor, D2: Divisor) -> Divisor:
    _same(D1, D2)
    X = D1.X
    return _canonical(X, D1.J * D2.J + X.ideal, D1.den * D2.den)


def divisor_sub(D1: Divisor, D2: Divisor, u: Polynomial | None = None) -> Divisor:
    """``D1(-D2)``: the S2-hull of the fractional colon ``I_1 : I_2``.

    With ``u`` a nonzerodivisor in ``J_2`` the colon is
    ``((u J_1 + I_X) : J_2) * g_2 / (u g_1)``.
    """
    _same(D1, D2)
    X = D1.X
    if D2.J.is_unit():
        # I_2 = g_2^{-1} O_X, so the colon is g_2 I_1
        return _canonical(X, D1.J * D2.den + X.ideal, D1.den)
    if u is None:
        u = X.find_nonzerodivisor(D2.J)
    N = ideal_quotient(D1.J * u + X.ideal, D2.J)
    return _canonical(X, N * D2.den + X.ideal, u * D1.den)


def divisor_negate(D: Divisor, u: Polynomial | None = None) -> Divisor:
    return divisor_sub(zero_divisor(D.X), D, u)


def twist_by_H(D: Divisor, m: int) -> Divisor:
    """``D + mH`` with ``H`` cut by the fixed linear form of ``X``."""
    if m == 0:
        return D
    ell = D.X.linear_form
    if m > 0:
        return _canonical(D.X, D.J * (ell**m) + D.X.ideal, D.den)
    return Divisor(D.X, D.J, D.den * ell ** (-m))


def _same(D1: Divisor, D2: Divisor):
    if D1.X is not D2.X and D1.X.ideal != D2.X.ideal:
        raise DivisorError("divisors live on different ambient schemes")


# -- linear equivalence -------------------------------------------------------------------


@dataclass
class Multiplier:
    """``f = a / b`` with ``I_{D2} = f * I_{D1}``; ``shift = deg a - deg b``."""

    a: Polynomial
    b: Polynomial

    @property
    def shift(self) -> int:
        return self.a.degree() - self.b.degree()

    def inverse(self) -> Multiplier:
        return Multiplier(self.b, self.a)

    def compose(self, other: Multiplier) -> Multiplier:
        """``self`` followed by ``other``."""
        return Multiplier(self.a * other.a, self.b * other.b)

    def to_dict(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "shift": self.shift}


def check_multiplier(D1: Divisor, D2: Divisor, f: Multiplier) -> bool:
    """Whether ``I_{D2} = (a/b) I_{D1}``, i.e. ``b g_1 J_2 = a g_2 J_1`` modulo ``I_X``."""
    X = D1.X
    if not (X.is_nonzerodivisor(f.a) and X.is_nonzerodivisor(f.b)):
        return False
    lhs = saturation(D2.J * (f.b * D1.den) + X.ideal)
    rhs = saturation(D1.J * (f.a * D2.den) + X.ideal)
    return lhs == rhs


def linearly_equivalent(
    D1: Divisor, D2: Divisor, shift: int = 0, seed: int = 0, tries: int = 8
) -> Multiplier | None:
    """A multiplier ``f`` of degree ``shift`` with ``I_{D2} = f I_{D1}``, or ``None``.

    ``shift = h`` tests ``D2 ~ D1 + hH``.  Candidates are random elements of
    the colon ``(hull(u J_2 + I_X) : J_1)``, ``u`` a nonzerodivisor in ``J_1``, in the one degree that can work.
    """
    _same(D1, D2)
    X = D1.X
    if _divisor_codim(D1) != _divisor_codim(D2):
        return None
    if D1.same_as(D2) and shift == 0:
        one = X.ring.one()
        return Multiplier(one, one)
    # u in J_1 makes D2 + div(u) - D1 effective, so k exists in a single degree
    u = X.find_nonzerodivisor(D1.J)
    target = X.hull(D2.J * u + X.ideal)
    N = ideal_quotient(target, D1.J)
    d = shift + u.degree() + D2.den.degree() - D1.den.degree()
    if d < 0:
        return None
    rng = random.Random(seed)
    gens = [g for g in N.gens if g.degree() <= d and not X.ideal.contains(g)]
    if not gens:
        return None
    exact = [g for g in gens if g.degree() == d]
    for attempt in range(len(exact) + tries):
        if attempt < len(exact):
            k = exact[attempt]
            if not X.is_nonzerodivisor(k):
                continue
            if X.hull(D1.J * k + X.ideal) == target:
                return Multiplier(k * D1.den, u * D2.den)
            continue
        k = X.ring.zero()
        for g in gens:
            k = k + X.ring.random_form(d - g.degree(), rng) * g
        if not k or not X.is_nonzerodivisor(k):
            continue
        if X.hull(D1.J * k + X.ideal) == target:
            f = Multiplier(k * D1.den, u * D2.den)
            return f
    return None


def _divisor_codim(D: Divisor) -> int:
    if D.J.is_unit():
        return D.X.codim + 1
    return codimension(D.J)


def random_effective_representative(D: Divisor, h: int = 0, seed: int = 0, tries: int = 8) -> Divisor | None:
    """A random effective divisor linearly equivalent to ``D + hH``."""
    X = D.X
    A = X.coordinate_ring
    rng = random.Random(seed)
    src, gen_vecs = subquotient(X.ring, [0], [{(0, e): c for e, c in g._terms.items()} for g in D.J.gens], [
        {(0, e): c for e, c in g._terms.items()} for g in X.ideal.gens
    ])
    H = hom(src, A)
    d = h + D.den.degree()
    for _ in range(tries):
        phi = H.random_map(d, rng)
        if not phi:
            continue
        imgs = H.images_of_generators(phi)
        polys = [Polynomial(X.ring, {e: c for (_, e), c in v.items()}) for v in imgs]
        K = Ideal(X.ring, polys) + X.ideal
        if K.is_unit() or codimension(K) != X.codim + 1:
            continue
        E = Divisor(X, X.hull(K))
        return E
    return None


# -- canonical-module constructions ------------------------------------------------------


def _ideal_module(X: AmbientScheme, J: Ideal):
    """``J / I_X`` as a module presented on its minimal generators."""
    vec = lambda g: {(0, e): c for e, c in g._terms.items()}
    M, gens = subquotient(X.ring, [0], [vec(g) for g in J.gens], [vec(g) for g in X.ideal.gens])
    return M, gens


def _image_ideal(X: AmbientScheme, H, phi) -> Ideal:
    imgs = H.images_of_generators(phi)
    return _vectors_to_ideal(X, imgs)


def _vectors_to_ideal(X: AmbientScheme, imgs, module_gens=None) -> Ideal:
    polys = []
    for v in imgs:
        polys.append(Polynomial(X.ring, {e: c for (_, e), c in v.items()}))
    return Ideal(X.ring, polys) + X.ideal


def anticanonical_divisor(X: AmbientScheme, seed: int = 0, max_twist: int = 8, tries: int = 6) -> Divisor:
    """An anticanonical divisor ``M`` from a random embedding of ``omega_X``.

    A random degree-``d`` map ``omega_X -> R/I_X`` is drawn for the smallest
    ``d >= 0`` whose image is a proper ideal cutting a pure codimension-one
    subscheme; the result is stored as ``(J, l^d)`` (so ``J`` is ``M + dH``)
    and records ``d`` in ``twist``.
    """
    rng = random.Random(seed)
    H = hom(X.omega, X.coordinate_ring)
    for d in range(0, max_twist + 1):
        if not H.module.basis(d):
            continue
        for _ in range(tries):
            phi = H.random_map(d, rng)
            if not phi:
                continue
            J = _image_ideal(X, H, phi)
            if J.is_unit() or codimension(J) != X.codim + 1:
                continue
            if X.hull(J) != J:
                continue
            D = Divisor(X, J, X.linear_form**d if d else None, label="anticanonical")
            D.twist = d
            return D
    raise DivisorError(f"no embedding of omega found up to twist {max_twist}; raise the bound")


@dataclass
class SectionsReport:
    window: tuple
    hom_dims: list
    omega_dims: list
    omega_D_dims: list
    exact: bool

    def to_dict(self) -> dict:
        return {
            "window": list(self.window),
            "M_dims": self.hom_dims,
            "omega_X_dims": self.omega_dims,
            "omega_D_dims": self.omega_D_dims,
            "sequence_exact": self.exact,
        }


def sections_of_M(D: Divisor, X: AmbientScheme | None = None, window: Sequence[int] = (-5, 10)) -> SectionsReport:
    """Graded dimensions of ``M(D) = Hom(I_D, omega_X)``, checked against
    ``dim (omega_X)_d + dim (omega_D)_d``."""
    X = X or D.X
    J = D.effective_ideal()
    lo, hi = window
    omega = X.omega
    if J.is_unit():
        dims = [omega.hilbert_function(d) for d in range(lo, hi + 1)]
        zeros = [0] * len(dims)
        return SectionsReport(tuple(window), dims, dims, zeros, True)
    src, _ = _ideal_module(X, J)
    Hm = hom(src, omega).module
    omega_D = ext_module(J, X.codim + 1).twist(-X.ring.nvars)
    hd = [Hm.hilbert_function(d) for d in range(lo, hi + 1)]
    od = [omega.hilbert_function(d) for d in range(lo, hi + 1)]
    dd = [omega_D.hilbert_function(d) for d in range(lo, hi + 1)]
    exact = all(a == b + c for a, b, c in zip(hd, od, dd))
    return SectionsReport(tuple(window), hd, od, dd, exact)


def linear_system_dimension(D: Divisor) -> int:
    """``dim Hom(J/I_X, R/I_X)_0`` for an effective divisor with ideal ``J``."""
    X = D.X
    J = D.effective_ideal()
    if J.is_unit():
        return X.coordinate_ring.hilbert_function(0)
    src, _ = _ideal_module(X, J)
    return hom(src, X.coordinate_ring).module.hilbert_function(0)
