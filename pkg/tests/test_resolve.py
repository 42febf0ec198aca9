from __future__ import annotations

import random

import pytest

from biliaison import Ideal, PolyRing
from biliaison.groebner import parse_ideal
from biliaison.modules import GradedModule
from biliaison.resolve import (
    NotEquidimensionalError,
    NotSaturatedError,
    canonical_module,
    equidimensional_hull,
    ext_module,
    free_resolution,
    hilbert_data,
    is_ACM,
    is_AG,
    rao_dimensions,
    satisfies_S2,
)

R = PolyRing("x,y,z,w")
CUBIC = "x*z - y^2; y*w - z^2; x*w - y*z"


def betti(text):
    return free_resolution(parse_ideal(R, text)).betti().beta


def test_twisted_cubic_betti_table():
    assert betti(CUBIC) == {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_koszul_complex_of_three_variables():
    assert betti("x; y; z") == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}


def test_complete_intersection_of_quadrics():
    assert betti("x*y - z*w; x^2 + y^2 + z^2 + w^2") == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_rational_normal_quartic():
    S = PolyRing("a,b,c,d,e")
    from biliaison.determinantal import HomogeneousMatrix, determinantal_ideal

    a, b, c, d, e = S.gens()
    I = determinantal_ideal(HomogeneousMatrix(S, [[a, b, c, d], [b, c, d, e]]), 2)
    F = free_resolution(I)
    assert [F.betti().total(i) for i in range(4)] == [1, 6, 8, 3]


@pytest.mark.parametrize("text", [CUBIC, "x*y; x*z; y*z", "x*z; x*w; y*z; y*w", "x^2; x*y; y^3 - z^2*w"])
def test_resolution_is_minimal_complex_with_correct_numerator(text):
    I = parse_ideal(R, text)
    F = free_resolution(I)
    assert F.check_complex()
    assert F.check_minimal()
    assert F.length <= R.nvars
    assert F.betti().numerator() == {k: v for k, v in I.hilbert_numerator().items() if v}


def test_random_module_resolution_properties():
    rng = random.Random(3)
    for _ in range(3):
        rels = []
        for _ in range(3):
            f, g = R.random_form(2, rng), R.random_form(1, rng)
            rels.append({(0, e): c for e, c in f.as_dict().items()} | {(1, e): c for e, c in g.as_dict().items()})
        M = GradedModule(R, [0, 1], rels)
        F = free_resolution(M)
        assert F.check_complex() and F.check_minimal()
        assert F.betti().numerator() == M.hilbert_numerator()


def test_hilbert_data_twisted_cubic():
    hd = hilbert_data(parse_ideal(R, CUBIC))
    assert (hd.degree, hd.genus, hd.krull_dimension) == (3, 0, 2)
    assert hd.polynomial_str() == "3*m + 1"


def test_hilbert_data_plane_cubic_genus_one():
    S = PolyRing("x,y,z")
    hd = hilbert_data(parse_ideal(S, "x^3 + y^3 + z^3"))
    assert (hd.degree, hd.genus) == (3, 1)


def test_canonical_module_of_quadric_and_cubic():
    w = canonical_module(parse_ideal(R, "x*w - y*z"))
    assert w.degrees == [2] and w.minimal_presentation().rank == 1
    wc = canonical_module(parse_ideal(R, CUBIC))
    # omega_C = O_{P^1}(-2) has two sections in degree 1
    assert sorted(wc.degrees) == [1, 1]
    axes = canonical_module(parse_ideal(R, "x*y; x*z; y*z"))
    assert sorted(axes.degrees) == [1, 1]


def test_canonical_module_rejects_mixed_dimension():
    with pytest.raises(NotEquidimensionalError):
        canonical_module(parse_ideal(R, "x*y; x*z"))


def test_acm_and_ag():
    assert is_ACM(parse_ideal(R, CUBIC))
    assert not is_ACM(parse_ideal(R, "x*z; x*w; y*z; y*w"))
    assert is_AG(parse_ideal(R, "x*w - y*z")) == (True, -2)
    assert is_AG(parse_ideal(R, "x*y - z*w; x^2 + w^2")) == (True, 0)
    assert is_AG(parse_ideal(R, CUBIC)) == (False, None)
    with pytest.raises(NotSaturatedError):
        is_ACM(parse_ideal(R, "x^2; x*y; x*z; x*w"))


def test_ext_of_point_is_in_top_degree():
    E = ext_module(parse_ideal(R, "x; y; z; w"), 4)
    assert E.degrees == [-4] and E.hilbert_function(-4) == 1


def test_s2_and_hull():
    assert satisfies_S2(parse_ideal(R, "x*y; x*z; y*z"))
    assert not satisfies_S2(parse_ideal(R, "x^2; x*y"))
    assert equidimensional_hull(parse_ideal(R, "x^2; x*y")) == parse_ideal(R, "x")
    H = equidimensional_hull(parse_ideal(R, "x*y; x*z"))
    assert H == parse_ideal(R, "x")


def test_s2_ambient_dimension_guard():
    M = GradedModule.quotient(parse_ideal(R, "x*y; x*z; y*z; x + y + z"))
    assert satisfies_S2(M)
    assert not satisfies_S2(M, ambient_dim=2)


def test_rao_module_of_skew_lines():
    skew = parse_ideal(R, "x*z; x*w; y*z; y*w")
    dims = rao_dimensions(skew, 1, (-5, 10))
    assert dims[5] == 1 and sum(dims) == 1
    assert sum(rao_dimensions(parse_ideal(R, CUBIC), 1)) == 0


def test_rao_module_of_rational_quartic():
    # (s^4, s^3 t, s t^3, t^4) misses the quadrics by one section
    quartic = parse_ideal(R, "x*w - y*z; y^3 - x^2*z; z^3 - y*w^2; x*z^2 - y^2*w")
    dims = rao_dimensions(quartic, 1, (-5, 10))
    assert dims[6] == 1 and sum(dims) == 1
