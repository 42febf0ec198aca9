"""Free resolutions, Betti tables, Ext, canonical modules and the derived
tests (ACM, AG, S2, omega-reflexivity, unmixed hull, Rao dimensions)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._hilbert import eval_poly, hilbert_function, reduce_numerator
from .groebner import Ideal, codimension, saturation
from .modules import (
    GradedModule,
    compose_is_surjective,
    hom,
    in_submodule,
    map_kernel,
    minimal_subset,
    polys_from_vec,
    subquotient,
    syzygies,
    vdeg,
)
from .ring import PolyRing


class NotSaturatedError(ValueError):
    pass


class NotEquidimensionalError(ValueError):
    pass


# -- Betti tables -----------------------------------------------------------------


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]``: rank of ``F_i`` in degree ``j``."""

    beta: dict

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.beta.items() if a == i)

    @property
    def length(self) -> int:
        return max((i for (i, _) in self.beta), default=-1)

    def numerator(self) -> dict:
        """Alternating sum ``sum (-1)^i beta_{ij} t^j``."""
        out: dict = {}
        for (i, j), v in self.beta.items():
            out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: v for j, v in out.items() if v}

    def to_text(self) -> str:
        if not self.beta:
            return "0"
        cols = range(self.length + 1)
        rows = sorted({j - i for (i, j) in self.beta})
        cells = [[str(i) for i in cols], [str(self.total(i)) for i in cols]]
        labels = ["", "total:"]
        for r in range(rows[0], rows[-1] + 1):
            labels.append(f"{r}:")
            cells.append([str(self.beta.get((i, i + r), 0) or ".") for i in cols])
        w = max(len(c) for row in cells for c in row)
        lw = max(len(s) for s in labels)
        lines = []
        for lab, row in zip(labels, cells):
            lines.append(lab.rjust(lw) + " " + " ".join(c.rjust(w) for c in row))
        return "\n".join(line.rstrip() for line in lines)

    def __str__(self):
        return self.to_text()

    def to_dict(self) -> dict:
        return {f"{i},{j}": v for (i, j), v in sorted(self.beta.items())}


# -- resolutions -------------------------------------------------------------------


@dataclass
class FreeResolution:
    """``F_0 <- F_1 <- ... <- F_l``; ``maps[i]`` lists the columns of ``F_{i+1} -> F_i``."""

    ring: PolyRing
    degrees: list
    maps: list
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.degrees) - 1 if self.degrees and self.degrees[0] else -1

    def betti(self) -> BettiTable:
        beta: dict = {}
        for i, ds in enumerate(self.degrees):
            for d in ds:
                beta[(i, d)] = beta.get((i, d), 0) + 1
        return BettiTable(beta)

    def matrix(self, i: int):
        """Matrix of ``F_{i+1} -> F_i`` as rows of polynomials."""
        rank = len(self.degrees[i])
        cols = [polys_from_vec(self.ring, v, rank) for v in self.maps[i]]
        return [[c[r] for c in cols] for r in range(rank)]

    def check_complex(self) -> bool:
        p = self.ring.field.p
        from .modules import vadd, vmul_term

        for i in range(1, len(self.maps)):
            prev = self.maps[i - 1]
            for col in self.maps[i]:
                acc: dict = {}
                for (j, u), a in col.items():
                    acc = vadd(acc, vmul_term(prev[j], u, a, p), p)
                if acc:
                    return False
        return True

    def check_minimal(self) -> bool:
        for i, cols in enumerate(self.maps):
            for col in cols:
                for (j, u), _ in col.items():
                    if sum(u) == 0:
                        return False
        return True

    def to_dict(self) -> dict:
        return {
            "degrees": [list(d) for d in self.degrees],
            "matrices": [[[str(f) for f in row] for row in self.matrix(i)] for i in range(len(self.maps))],
            "minimal": self.minimal,
            "betti": self.betti().to_dict(),
        }


def free_resolution(M, minimal: bool = True) -> FreeResolution:
    """Resolution of a module (or of ``R/I`` when given an ideal)."""
    if isinstance(M, Ideal):
        M = GradedModule.quotient(M)
    ring = M.ring
    P = M.minimal_presentation() if minimal else M
    degrees = [list(P.degrees)]
    maps = []
    cols = list(P.relations)
    cur_deg = list(P.degrees)
    while cols:
        col_deg = [vdeg(c, cur_deg) for c in cols]
        if minimal:
            # order columns by degree so the resolution prints stably
            perm = sorted(range(len(cols)), key=lambda k: col_deg[k])
            cols = [cols[k] for k in perm]
            col_deg = [col_deg[k] for k in perm]
        maps.append(cols)
        degrees.append(col_deg)
        cols = syzygies(ring, cols, cur_deg, col_deg, minimal=minimal)
        cur_deg = col_deg
        if len(degrees) > ring.nvars + 2:
            raise RuntimeError("resolution longer than the number of variables")
    if degrees == [[]]:
        degrees = []
    return FreeResolution(ring, degrees, maps, minimal)


# -- Hilbert data ---------------------------------------------------------------------


@dataclass
class HilbertData:
    numerator: dict
    krull_dimension: int
    degree: int
    hilbert_polynomial: list
    genus: int | None
    nvars: int = 0

    def hilbert_function(self, d: int) -> int:
        return hilbert_function(self.numerator, self.nvars, d)

    def polynomial_value(self, m) -> Fraction:
        return eval_poly(self.hilbert_polynomial, m)

    def polynomial_str(self) -> str:
        return poly_to_str(self.hilbert_polynomial)

    def to_dict(self) -> dict:
        return {
            "numerator": {str(k): v for k, v in sorted(self.numerator.items())},
            "krull_dimension": self.krull_dimension,
            "degree": self.degree,
            "hilbert_polynomial": [str(c) for c in self.hilbert_polynomial],
            "hilbert_polynomial_text": self.polynomial_str(),
            "genus": self.genus,
        }


def poly_to_str(coeffs, var: str = "m") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if mag == 1 else f"{mag}*{mon}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, b in terms[1:]:
        out += f" {s} {b}"
    return out


def hilbert_data(I) -> HilbertData:
    """Hilbert series data of ``R/I`` (or of a module)."""
    M = GradedModule.quotient(I) if isinstance(I, Ideal) else I
    if isinstance(I, Ideal):
        num = I.hilbert_numerator()
        nv = I.ring.nvars
    else:
        num = M.hilbert_numerator()
        nv = M.ring.nvars
    h, d = reduce_numerator(num, nv)
    krull = d if h else -1
    degree = sum(h.values()) if h else 0
    from ._hilbert import hilbert_polynomial

    hp = hilbert_polynomial(num, nv)
    genus = None
    if krull >= 2:
        genus = int((-1) ** (krull - 1) * (eval_poly(hp, 0) - 1))
    return HilbertData(num, krull, degree, hp, genus, nv)


# -- Ext and canonical modules ------------------------------------------------------------


def _dual_columns(maps_i, rank_target: int) -> list[dict]:
    """Columns of the transpose of ``F_{i+1} -> F_i`` (a map ``F_i^* -> F_{i+1}^*``)."""
    out = [dict() for _ in range(rank_target)]
    for k, col in enumerate(maps_i):
        for (j, u), a in col.items():
            out[j][(k, u)] = a
    return out


def ext_module(M, i: int, resolution: FreeResolution | None = None) -> GradedModule:
    """``Ext^i_R(M, R)`` as the cohomology of the dual of a minimal resolution."""
    if i < 0:
        raise ValueError("Ext index must be non-negative")
    if isinstance(M, Ideal):
        M = GradedModule.quotient(M)
    ring = M.ring
    F = resolution or free_resolution(M)
    if i >= len(F.degrees):
        return GradedModule(ring, [], [])
    zero = (0,) * ring.nvars
    dual_deg = [-d for d in F.degrees[i]]
    # kernel of d_{i+1}^*: F_i^* -> F_{i+1}^*
    if i < len(F.maps):
        tgt = [-d for d in F.degrees[i + 1]]
        cols = _dual_columns(F.maps[i], len(F.degrees[i]))
        kernel = []
        nz = [(j, c) for j, c in enumerate(cols) if c]
        for j, c in enumerate(cols):
            if not c:
                kernel.append({(j, zero): 1})
        if nz:
            syz = syzygies(ring, [c for _, c in nz], tgt, [dual_deg[j] for j, _ in nz], minimal=False)
            for s in syz:
                kernel.append({(nz[k][0], u): a for (k, u), a in s.items()})
    else:
        kernel = [{(j, zero): 1} for j in range(len(dual_deg))]
    # image of d_i^*: F_{i-1}^* -> F_i^*
    image = _dual_columns(F.maps[i - 1], len(F.degrees[i - 1])) if i >= 1 else []
    E, _ = subquotient(ring, dual_deg, kernel, image)
    return E


def canonical_module(I: Ideal, check: bool = True) -> GradedModule:
    """``omega = Ext^c(R/I, R)(-(n+1))`` for ``I`` of codimension ``c``."""
    ring = I.ring
    c = codimension(I)
    if check:
        hull = equidimensional_hull(I)
        if hull != saturation(I):
            raise NotEquidimensionalError("the ideal has components of different dimensions")
    E = ext_module(I, c)
    return E.twist(-ring.nvars)


def is_ACM(I: Ideal, resolution: FreeResolution | None = None) -> bool:
    if not saturation(I).is_subset(I):
        raise NotSaturatedError("saturate the ideal first")
    F = resolution or free_resolution(I)
    return F.length == codimension(I)


def is_AG(I: Ideal, resolution: FreeResolution | None = None) -> tuple[bool, int | None]:
    """``(flag, ell)`` with ``omega_Y = O_Y(ell)`` when ``Y`` is AG."""
    F = resolution or free_resolution(I)
    if not is_ACM(I, F):
        return False, None
    last = F.degrees[-1]
    if len(last) != 1:
        return False, None
    return True, last[0] - I.ring.nvars


def satisfies_S2(M, ambient_dim: int | None = None) -> bool:
    """Serre's condition S2 through the Ext criterion.

    ``M`` satisfies S2 when ``dim Ext^{N-j}(M, R) <= j - 2`` for every
    ``j < dim M`` (``N`` = number of variables, zero modules always pass).
    Given ``ambient_dim`` (the Krull dimension of the ring ``M`` lives
    over) a module of smaller dimension fails, since it is torsion there.
    """
    if isinstance(M, Ideal):
        M = GradedModule.quotient(M)
    if M.is_zero():
        return True
    d = M.dimension()
    if ambient_dim is not None and d < ambient_dim:
        return False
    N = M.ring.nvars
    F = free_resolution(M)
    for j in range(d):
        if N - j >= len(F.degrees):
            continue
        E = ext_module(M, N - j, F)
        if E.is_zero():
            continue
        if E.dimension() > j - 2:
            return False
    return True


def is_omega_reflexive(M: GradedModule, omega: GradedModule) -> bool:
    """Whether ``M -> Hom(Hom(M, omega), omega)`` is an isomorphism."""
    ring = M.ring
    p = ring.field.p
    M = M.minimal_presentation()
    if M.is_zero():
        return True
    Hd = hom(M, omega)
    dual = Hd.module
    if dual.is_zero():
        return False
    # generators of M* as maps F0 -> G0, then M** inside Hom(F0', G0)
    phis = [Hd.element({(k, (0,) * ring.nvars): 1}) for k in range(dual.rank)]
    H2 = hom(dual, omega)
    s0 = omega.rank
    ev = []
    for j in range(M.rank):
        v = {}
        for l, phi in enumerate(phis):
            for (c, e), a in phi.items():
                jj, i = divmod(c, s0)
                if jj == j:
                    v[(l * s0 + i, e)] = a
        ev.append(v)
    rels = []
    for l in range(dual.rank):
        for col in omega.relations:
            rels.append({(l * s0 + i, e): a for (i, e), a in col.items()})
    amb = H2.ambient_degrees
    # surjective: every generator of M** is in the span of ev(e_j) and rels
    if not in_submodule(ring, amb, ev + rels, H2.gen_maps):
        return False
    # injective: the kernel of F0 -> M** lies in the relations of M
    kernel = map_kernel(ring, ev, amb, rels, M.degrees)
    return in_submodule(ring, M.degrees, M.relations, kernel)


def equidimensional_hull(I: Ideal) -> Ideal:
    """Intersection of the top-dimensional primary components, as ``Ann Ext^c(R/I, R)``."""
    c = codimension(I)
    E = ext_module(I, c)
    A = E.annihilator()
    return Ideal(I.ring, A.minimal_generators())


def rao_dimensions(I: Ideal, i: int, window: Sequence[int] = (-5, 10)) -> list[int]:
    """``dim H^i_*(I_V)_d`` for ``d`` in the window, via graded local duality:
    it equals ``dim Ext^{n+1-i}(R/I_V, R)`` in degree ``-d-n-1``."""
    ring = I.ring
    Nv = ring.nvars
    dimV = I.krull_dimension() - 1
    if i < 1 or i > dimV:
        raise ValueError(f"Rao index must lie in 1..{dimV}")
    E = ext_module(I, Nv - i)
    lo, hi = window
    return [E.hilbert_function(-d - Nv) for d in range(lo, hi + 1)]
