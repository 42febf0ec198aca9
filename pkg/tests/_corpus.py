"""Shared test objects: small curves in P^3 and modules over them."""

from __future__ import annotations

import random

from biliaison import Ideal, PolyRing
from biliaison.divisor import AmbientScheme, _ideal_module
from biliaison.groebner import intersect, parse_ideal
from biliaison.modules import GradedModule
from biliaison.resolve import canonical_module

R4 = PolyRing("x,y,z,w")

CURVES = {
    "three_axes": "x*y; x*z; y*z",
    "two_lines": "x*y; z",
    "skew_lines": "x*z; x*w; y*z; y*w",
    "quadric": "x*w - y*z",
}


def ambient(name: str) -> AmbientScheme:
    return AmbientScheme(parse_ideal(R4, CURVES[name]))


def _vec(f):
    return {(0, e): c for e, c in f.as_dict().items()}


def _sum(M: GradedModule, N: GradedModule) -> GradedModule:
    r = M.rank
    rels = list(M.relations) + [{(i + r, e): c for (i, e), c in v.items()} for v in N.relations]
    return GradedModule(M.ring, list(M.degrees) + list(N.degrees), rels)


def module_corpus() -> list[tuple[str, GradedModule, GradedModule, int]]:
    """``(label, M, omega_X, dim X)`` for modules with and without embedded primes."""
    out = []
    for name in ("three_axes", "two_lines", "quadric"):
        X = ambient(name)
        I = X.ideal
        w = canonical_module(I)
        d = I.krull_dimension()
        A = GradedModule.quotient(I)
        x, y, z, t = R4.gens()
        m = Ideal(R4, R4.gens())
        items = [
            ("R/I", A),
            ("omega", w),
            ("omega(2)", w.twist(2)),
            ("maximal ideal", _ideal_module(X, m + I)[0]),
            ("embedded point", GradedModule.quotient(intersect(I, m**3))),
            ("R/I + omega", _sum(A, w)),
        ]
        for label, J in {
            "three_axes": [("point", "x; y; z"), ("square", "x^2; y^2; z^2; x*y; x*z; y*z"), ("axis", "y; z")],
            "two_lines": [("point", "x; y; z"), ("line", "x; z")],
            "quadric": [("line", "x; y"), ("conic", "x; y*z"), ("cubic", "x*z - y^2; y*w - z^2; x*w - y*z")],
        }[name]:
            Jd = parse_ideal(R4, J) + I
            items.append((f"ideal of {label}", _ideal_module(X, Jd)[0]))
        rng = random.Random(len(name))
        f, g = R4.random_form(1, rng), R4.random_form(1, rng)
        rels = [{(0, e): c for e, c in f.as_dict().items()} | {(1, e): c for e, c in g.as_dict().items()}]
        for r in I.gens:
            rels += [{(0, e): c for e, c in r.as_dict().items()}, {(1, e): c for e, c in r.as_dict().items()}]
        items.append(("cokernel", GradedModule(R4, [0, 0], rels)))
        out += [(f"{name}: {label}", M, w, d) for label, M in items]
    return out
