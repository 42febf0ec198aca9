"""Finitely presented graded modules and the linear algebra behind them.

Vectors of a graded free module ``F = R(-a_0) + ... + R(-a_{r-1})`` are
sparse dicts ``{(component, exponents): coefficient}``; the degree of the
term ``x^u e_j`` is ``|u| + a_j``.  A :class:`GradedModule` is the cokernel
of a list of homogeneous relation vectors in such a free module.
"""

from __future__ import annotations

import random
from typing import Sequence

from . import _gb
from ._hilbert import (
    _padd,
    hilbert_function,
    hilbert_numerator,
    hilbert_polynomial,
    krull_dimension,
    reduce_numerator,
)
from .groebner import Ideal, intersect
from .ring import Polynomial, PolyRing


def vdeg(vec: dict, degrees: Sequence[int]) -> int:
    """Degree of a homogeneous vector."""
    t = next(iter(vec))
    return sum(t[1]) + degrees[t[0]]


def _neg(vec: dict, p: int) -> dict:
    return {t: ((-c) % p if p else -c) for t, c in vec.items()}


def vadd(a: dict, b: dict, p: int, scale=1) -> dict:
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + scale * c
        if p:
            v %= p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vmul_poly(vec: dict, f: Polynomial) -> dict:
    """``f * vec``."""
    p = f.ring.field.p
    out: dict = {}
    for (c, e), a in vec.items():
        for u, b in f._terms.items():
            t = (c, tuple(x + y for x, y in zip(e, u)))
            v = out.get(t, 0) + a * b
            if p:
                v %= p
            out[t] = v
    return {t: v for t, v in out.items() if v}


def vmul_term(vec: dict, u: tuple, coeff, p: int) -> dict:
    out = {}
    for (c, e), a in vec.items():
        v = a * coeff % p if p else a * coeff
        if v:
            out[(c, tuple(x + y for x, y in zip(e, u)))] = v
    return out


def vec_from_polys(polys: Sequence[Polynomial]) -> dict:
    out = {}
    for j, f in enumerate(polys):
        for e, c in f._terms.items():
            out[(j, e)] = c
    return out


def polys_from_vec(ring: PolyRing, vec: dict, rank: int) -> list[Polynomial]:
    parts: list[dict] = [dict() for _ in range(rank)]
    for (c, e), v in vec.items():
        parts[c][e] = v
    return [Polynomial(ring, d) for d in parts]


def module_gb(ring: PolyRing, degrees: Sequence[int], vecs) -> _gb.GBResult:
    order = _gb.Order(ring.nvars, comp_degrees=list(degrees))
    return _gb.groebner([v for v in vecs if v], order, ring.field.p)


def minimal_subset(ring: PolyRing, degrees: Sequence[int], vecs) -> list[int]:
    """Indices of a minimal generating subset (homogeneous input)."""
    order = _gb.Order(ring.nvars, comp_degrees=list(degrees))
    res = _gb.groebner(list(vecs), order, ring.field.p, minimal=True, reduced=False)
    return sorted(res.kept)


def syzygies(ring: PolyRing, cols, degrees: Sequence[int], col_degrees=None, minimal: bool = True) -> list[dict]:
    """Generators of the syzygy module of homogeneous vectors ``cols``.

    Returned vectors live in the free module with one component per column
    (degrees ``col_degrees``).  With ``minimal`` the generators are minimal.
    """
    degrees = list(degrees)
    cols = list(cols)
    if col_degrees is None:
        col_degrees = [vdeg(c, degrees) if c else 0 for c in cols]
    r, m = len(degrees), len(cols)
    if m == 0:
        return []
    zero = (0,) * ring.nvars
    order = _gb.Order(ring.nvars, comp_degrees=degrees + list(col_degrees), comp_blocks=[0] * r + [1] * m)
    aug = []
    for j, c in enumerate(cols):
        v = dict(c)
        v[(r + j, zero)] = 1
        aug.append(v)
    res = _gb.groebner(aug, order, ring.field.p)
    syz = []
    for b in res.basis:
        if all(c >= r for (c, _) in b):
            syz.append({(c - r, e): v for (c, e), v in b.items()})
    if minimal and syz:
        keep = minimal_subset(ring, col_degrees, syz)
        syz = [syz[i] for i in keep]
    return syz


class GradedModule:
    """Cokernel of homogeneous relations in ``R(-d_0) + ... + R(-d_{r-1})``."""

    def __init__(self, ring: PolyRing, degrees: Sequence[int], relations=()):
        self.ring = ring
        self.degrees = [int(d) for d in degrees]
        rels = [dict(v) for v in relations if v]
        for v in rels:
            if not _gb.is_homogeneous(v, _gb.Order(ring.nvars, comp_degrees=self.degrees)):
                raise ValueError("relation is not homogeneous")
        self.relations = rels
        self._gb = None
        self._numerator = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def free(cls, ring: PolyRing, degrees: Sequence[int]) -> GradedModule:
        return cls(ring, degrees, [])

    @classmethod
    def quotient(cls, I: Ideal) -> GradedModule:
        """``R/I``."""
        return cls(I.ring, [0], [{(0, e): c for e, c in g._terms.items()} for g in I.gens])

    @classmethod
    def from_ideal(cls, I: Ideal) -> GradedModule:
        """``I`` as an ``R``-module, presented on its minimal generators."""
        M, _ = subquotient(I.ring, [0], [{(0, e): c for e, c in g._terms.items()} for g in I.gens], [])
        return M

    @classmethod
    def from_matrix(cls, ring: PolyRing, rows, degrees: Sequence[int]) -> GradedModule:
        """Cokernel of a matrix given as a list of rows of polynomials."""
        rows = [[ring(f) for f in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        cols = [vec_from_polys([rows[i][j] for i in range(len(rows))]) for j in range(ncols)]
        return cls(ring, degrees, cols)

    # -- basic data -------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def p(self) -> int:
        return self.ring.field.p

    def column_degrees(self) -> list[int]:
        return [vdeg(v, self.degrees) for v in self.relations]

    def matrix(self) -> list[list[Polynomial]]:
        cols = [polys_from_vec(self.ring, v, self.rank) for v in self.relations]
        return [[c[i] for c in cols] for i in range(self.rank)]

    def gb(self) -> _gb.GBResult:
        if self._gb is None:
            self._gb = module_gb(self.ring, self.degrees, self.relations)
        return self._gb

    def reduce(self, vec: dict) -> dict:
        return self.gb().reduce(vec) if vec else {}

    def is_zero_element(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def hilbert_numerator(self) -> dict:
        if self._numerator is None:
            by_comp: dict[int, list] = {j: [] for j in range(self.rank)}
            for c, e in self.gb().leads():
                by_comp[c].append(e)
            total: dict = {}
            for j, d in enumerate(self.degrees):
                total = _padd(total, hilbert_numerator(by_comp[j], self.ring.nvars), shift=d)
            self._numerator = total
        return self._numerator

    def dimension(self) -> int:
        """Krull dimension; ``-1`` for the zero module."""
        return krull_dimension(self.hilbert_numerator(), self.ring.nvars)

    def is_zero(self) -> bool:
        return not reduce_numerator(self.hilbert_numerator(), self.ring.nvars)[0]

    def hilbert_function(self, d: int) -> int:
        return hilbert_function(self.hilbert_numerator(), self.ring.nvars, d)

    def hilbert_polynomial(self):
        return hilbert_polynomial(self.hilbert_numerator(), self.ring.nvars)

    def twist(self, k: int) -> GradedModule:
        """``M(k)``, whose degree ``d`` piece is ``M_{d+k}``."""
        return GradedModule(self.ring, [d - k for d in self.degrees], self.relations)

    def basis(self, d: int) -> list[tuple[int, tuple]]:
        """Standard monomials ``(component, exponents)`` spanning ``M_d``."""
        leads = self.gb().leads()
        out = []
        for j, a in enumerate(self.degrees):
            if d - a < 0:
                continue
            for u in self.ring.monomials_of_degree(d - a):
                if not any(c == j and all(x <= y for x, y in zip(e, u)) for c, e in leads):
                    out.append((j, u))
        return out

    def minimal_presentation(self) -> GradedModule:
        zero = (0,) * self.ring.nvars
        units = [{(j, zero): 1} for j in range(self.rank)]
        M, _ = subquotient(self.ring, self.degrees, units, self.relations)
        return M

    def annihilator(self) -> Ideal:
        """``Ann M`` as the intersection of ``(im A : e_j)``."""
        ring = self.ring
        zero = (0,) * ring.nvars
        out = None
        for j in range(self.rank):
            cols = [{(j, zero): 1}] + self.relations
            syz = syzygies(ring, cols, self.degrees, minimal=False)
            gens = [Polynomial(ring, {e: c for (cc, e), c in s.items() if cc == 0}) for s in syz]
            Q = Ideal(ring, gens)
            out = Q if out is None else intersect(out, Q)
        if out is None:
            return Ideal(ring, [ring.one()])
        return out

    def betti_numbers(self):
        from .resolve import free_resolution

        return free_resolution(self).betti()

    # -- serialization ---------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "matrix": [[str(f) for f in row] for row in self.matrix()],
        }

    @classmethod
    def from_dict(cls, ring: PolyRing, data: dict) -> GradedModule:
        rows = [[ring.parse(s) for s in row] for row in data["matrix"]]
        return cls.from_matrix(ring, rows, data["degrees"])

    def __repr__(self):
        return f"GradedModule(rank={self.rank}, degrees={self.degrees}, relations={len(self.relations)})"


def subquotient(ring: PolyRing, degrees: Sequence[int], gens, rels) -> tuple[GradedModule, list[dict]]:
    """Minimal presentation of ``(<gens> + <rels>) / <rels>``.

    Returns the module together with the ambient vectors of its generators.
    """
    degrees = list(degrees)
    rels = [dict(v) for v in rels if v]
    gens = [dict(v) for v in gens]
    nr = len(rels)
    order = _gb.Order(ring.nvars, comp_degrees=degrees)
    res = _gb.groebner(rels + gens, order, ring.field.p, minimal=True, reduced=False)
    kept = sorted(i - nr for i in res.kept if i >= nr)
    G = [gens[i] for i in kept]
    if not G:
        return GradedModule(ring, [], []), []
    gdeg = [vdeg(g, degrees) for g in G]
    rdeg = [vdeg(r, degrees) for r in rels]
    syz = syzygies(ring, G + rels, degrees, gdeg + rdeg, minimal=False)
    k = len(G)
    proj = []
    for s in syz:
        v = {(c, e): a for (c, e), a in s.items() if c < k}
        if v:
            proj.append(v)
    if proj:
        keep = minimal_subset(ring, gdeg, proj)
        proj = [proj[i] for i in keep]
    return GradedModule(ring, gdeg, proj), G


def in_submodule(ring: PolyRing, degrees, vecs, targets) -> bool:
    """Whether every target vector lies in the submodule spanned by ``vecs``."""
    res = module_gb(ring, degrees, vecs)
    return all(not res.reduce(t) for t in targets if t)


# -- Hom -------------------------------------------------------------------------


class HomModule:
    """``Hom_R(M, N)`` together with the maps representing its generators.

    A map is stored as a vector in ``Hom(F0, G0)`` whose component
    ``j * s + i`` holds the coefficient of generator ``i`` of ``N`` in the
    image of generator ``j`` of ``M`` (``s`` = rank of ``G0``).
    """

    def __init__(self, source: GradedModule, target: GradedModule, module: GradedModule, gen_maps, ambient_degrees):
        self.source = source
        self.target = target
        self.module = module
        self.gen_maps = gen_maps
        self.ambient_degrees = ambient_degrees

    def dimension_in_degree(self, d: int) -> int:
        return self.module.hilbert_function(d)

    def element(self, coords: dict) -> dict:
        """The map of the presentation vector ``coords``."""
        p = self.source.p
        out: dict = {}
        for (k, u), c in coords.items():
            out = vadd(out, vmul_term(self.gen_maps[k], u, c, p), p)
        return out

    def basis_maps(self, d: int) -> list[dict]:
        return [self.element({t: 1}) for t in self.module.basis(d)]

    def random_map(self, d: int, rng) -> dict:
        field = self.source.ring.field
        coords = {t: field.random_element(rng) for t in self.module.basis(d)}
        return self.element({t: c for t, c in coords.items() if c})

    def apply(self, phi: dict, vec: dict) -> dict:
        """Image in ``G0`` of a vector of ``F0`` under the map ``phi``."""
        return apply_map(phi, vec, self.target.rank, self.source.p)

    def images_of_generators(self, phi: dict) -> list[dict]:
        s = self.target.rank
        out = [dict() for _ in range(self.source.rank)]
        for (c, e), v in phi.items():
            j, i = divmod(c, s)
            out[j][(i, e)] = v
        return out


def apply_map(phi: dict, vec: dict, s: int, p: int) -> dict:
    cols: dict[int, dict] = {}
    for (c, e), v in phi.items():
        j, i = divmod(c, s)
        cols.setdefault(j, {})[(i, e)] = v
    out: dict = {}
    for (j, u), a in vec.items():
        col = cols.get(j)
        if col:
            out = vadd(out, vmul_term(col, u, a, p), p)
    return out


def hom(M: GradedModule, N: GradedModule) -> HomModule:
    ring = M.ring
    p = ring.field.p
    r0, s0 = M.rank, N.rank
    a, b = M.degrees, N.degrees
    amb = [b[i] - a[j] for j in range(r0) for i in range(s0)]
    zero = (0,) * ring.nvars
    if r0 == 0 or s0 == 0:
        return HomModule(M, N, GradedModule(ring, []), [], amb)
    A = M.relations
    B = N.relations
    k1 = len(A)
    if k1:
        # alpha(E_ij) = E_ij o A, a vector of Hom(F1, G0)
        tgt_deg = [b[i] - vdeg(A[k], a) for k in range(k1) for i in range(s0)]
        alpha = []
        for j in range(r0):
            for i in range(s0):
                v = {}
                for k, col in enumerate(A):
                    for (c, e), coef in col.items():
                        if c == j:
                            v[(k * s0 + i, e)] = coef
                alpha.append(v)
        U = []
        for k in range(k1):
            for col in B:
                U.append({(k * s0 + i, e): coef for (i, e), coef in col.items()})
        cols = alpha + U
        col_degrees = amb + [vdeg(u, tgt_deg) for u in U]
        syz = syzygies(ring, cols, tgt_deg, col_degrees, minimal=False)
        n_amb = r0 * s0
        gens = []
        for s in syz:
            v = {(c, e): val for (c, e), val in s.items() if c < n_amb}
            if v:
                gens.append(v)
    else:
        gens = [{(c, zero): 1} for c in range(r0 * s0)]
    rels = []
    for j in range(r0):
        for col in B:
            rels.append({(j * s0 + i, e): coef for (i, e), coef in col.items()})
    module, gmaps = subquotient(ring, amb, gens, rels)
    return HomModule(M, N, module, gmaps, amb)


def compose_is_surjective(ring: PolyRing, degrees, image_vecs, target: GradedModule) -> bool:
    """Whether ``image_vecs`` generate ``target`` (a cokernel on ``degrees``)."""
    zero = (0,) * ring.nvars
    units = [{(j, zero): 1} for j in range(len(degrees))]
    return in_submodule(ring, degrees, list(image_vecs) + target.relations, units)


def map_kernel(ring: PolyRing, images, target_degrees, target_rels, source_degrees) -> list[dict]:
    """Generators of the kernel of ``F -> coker(target_rels)`` sending ``e_j`` to ``images[j]``."""
    n = len(images)
    cols = list(images) + [dict(r) for r in target_rels]
    cdeg = list(source_degrees) + [vdeg(r, target_degrees) for r in target_rels]
    cols = [c for c in cols]
    syz = syzygies(ring, cols, target_degrees, cdeg, minimal=False)
    out = []
    for s in syz:
        v = {(c, e): a for (c, e), a in s.items() if c < n}
        if v:
            out.append(v)
    return out


def random_rng(seed) -> random.Random:
    return random.Random(seed)
