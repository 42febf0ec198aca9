"""Randomized invariants: Groebner bases, colons, hulls, divisor axioms and links.

Every property bumps ``CASES`` so the acceptance suite can report how many
randomized cases ran.
"""

from __future__ import annotations

import random
from collections import Counter

from hypothesis import HealthCheck, given, settings, strategies as st

from biliaison import Ideal, PolyRing, groebner_basis, ideal_quotient, intersect, normal_form, saturation
from biliaison.divisor import (
    AmbientScheme,
    Divisor,
    anticanonical_divisor,
    divisor_negate,
    divisor_sub,
    divisor_sum,
    effective_divisor_from_subscheme,
    hyperplane_divisor,
    zero_divisor,
)
from biliaison.groebner import parse_ideal
from biliaison.liaison import link

CASES: Counter = Counter()

R3 = PolyRing("x,y,z")
R4 = PolyRing("x,y,z,w")
x, y, z, w = R4.gens()

QUICK = settings(max_examples=80, deadline=None, derandomize=True, suppress_health_check=list(HealthCheck))
SLOW = settings(max_examples=25, deadline=None, derandomize=True, suppress_health_check=list(HealthCheck))


# -- strategies ----------------------------------------------------------------------------


@st.composite
def forms(draw, ring=R3, max_degree=3, max_terms=3):
    d = draw(st.integers(1, max_degree))
    mons = ring.monomials_of_degree(d)
    picked = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(-5, 5).filter(bool), min_size=len(picked), max_size=len(picked)))
    return ring.from_dict(dict(zip(picked, coeffs)))


@st.composite
def ideals(draw, ring=R3, max_gens=3):
    return Ideal(ring, draw(st.lists(forms(ring), min_size=1, max_size=max_gens)))


# -- Groebner bases and colons -------------------------------------------------------------


@QUICK
@given(ideals(), st.randoms(use_true_random=False))
def test_reduced_gb_independent_of_presentation(I, rnd):
    CASES["gb_uniqueness"] += 1
    gens = list(I.gens)
    rnd.shuffle(gens)
    scaled = [g * R3.constant(rnd.randint(1, 100)) for g in gens]
    # add a redundant multiple of a generator
    J = Ideal(R3, scaled + [gens[0] * R3.gens()[rnd.randrange(3)]])
    assert groebner_basis(I).gens == groebner_basis(J).gens


@QUICK
@given(ideals(), forms())
def test_gb_and_normal_form_idempotent(I, f):
    CASES["gb_idempotence"] += 1
    G = groebner_basis(I)
    assert groebner_basis(G).gens == G.gens
    r = normal_form(f, I)
    assert normal_form(r, I) == r
    assert I.contains(f - r)


@QUICK
@given(ideals(), ideals(max_gens=2))
def test_colon_times_divisor_lands_in_ideal(I, J):
    CASES["colon_product"] += 1
    Q = ideal_quotient(I, J)
    assert (Q * J).is_subset(I)
    assert I.is_subset(Q)


@QUICK
@given(ideals())
def test_saturation_idempotent(I):
    CASES["saturation_idempotence"] += 1
    S = saturation(I)
    assert saturation(S) == S
    assert I.is_subset(S)


@QUICK
@given(ideals(max_gens=2), ideals(max_gens=2))
def test_intersection_methods_agree(I, J):
    CASES["intersection"] += 1
    K = intersect(I, J)
    assert K == intersect(I, J, method="syzygy")
    assert K.is_subset(I) and K.is_subset(J)


# -- divisors on the smooth quadric and on three concurrent lines ------------------------

_CACHE: dict = {}


def quadric() -> AmbientScheme:
    if "Q" not in _CACHE:
        _CACHE["Q"] = AmbientScheme(parse_ideal(R4, "x*w - y*z"))
    return _CACHE["Q"]


def axes() -> AmbientScheme:
    if "A" not in _CACHE:
        _CACHE["A"] = AmbientScheme(parse_ideal(R4, "x*y; x*z; y*z"))
    return _CACHE["A"]


def anticanonical() -> Divisor:
    if "M" not in _CACHE:
        _CACHE["M"] = anticanonical_divisor(quadric())
    return _CACHE["M"]


small = st.integers(-3, 3)


@st.composite
def quadric_lines(draw):
    """A line from either ruling of ``xw = yz``."""
    a = draw(small)
    X = quadric()
    if draw(st.booleans()):
        J = Ideal(R4, [x - R4.constant(a) * y, z - R4.constant(a) * w])
    else:
        J = Ideal(R4, [x - R4.constant(a) * z, y - R4.constant(a) * w])
    return effective_divisor_from_subscheme(X, J + X.ideal)


@st.composite
def linear_forms(draw):
    c = draw(st.lists(small, min_size=4, max_size=4).filter(lambda v: any(v)))
    return sum((R4.constant(ci) * g for ci, g in zip(c, R4.gens())), R4.zero())


@st.composite
def quadric_divisors(draw):
    X = quadric()
    kind = draw(st.sampled_from(["line", "line", "plane", "zero"]))
    if kind == "line":
        return draw(quadric_lines())
    if kind == "plane":
        return hyperplane_divisor(X, draw(linear_forms()))
    return zero_divisor(X)


@st.composite
def quadric_cartier(draw):
    """Every divisor on the smooth quadric is Cartier; mix effective and negative ones."""
    D = draw(quadric_divisors())
    return divisor_negate(D) if draw(st.booleans()) else D


@st.composite
def axis_points(draw):
    """A point on one of the three axes away from the vertex, hence Cartier."""
    a = draw(st.integers(1, 4))
    X = axes()
    axis = draw(st.integers(0, 2))
    others = [g for i, g in enumerate((x, y, z)) if i != axis]
    J = Ideal(R4, others + [(x, y, z)[axis] - R4.constant(a) * w])
    return effective_divisor_from_subscheme(X, J + X.ideal)


@SLOW
@given(quadric_divisors(), quadric_divisors(), quadric_divisors())
def test_sum_commutative_and_associative(D1, D2, D3):
    CASES["divisor_sum_axioms"] += 1
    assert divisor_sum(D1, D2) == divisor_sum(D2, D1)
    assert divisor_sum(divisor_sum(D1, D2), D3) == divisor_sum(D1, divisor_sum(D2, D3))


@SLOW
@given(st.one_of(quadric_divisors(), axis_points()))
def test_zero_is_neutral(D):
    CASES["divisor_zero"] += 1
    assert divisor_sum(D, zero_divisor(D.X)) == D
    assert divisor_sub(D, zero_divisor(D.X)) == D


@SLOW
@given(st.one_of(quadric_cartier(), axis_points()))
def test_cartier_has_inverse(D):
    CASES["divisor_inverse"] += 1
    assert divisor_sum(D, divisor_negate(D)).is_zero_divisor()
    assert divisor_sub(D, D).is_zero_divisor()


def test_vertex_of_three_axes_has_no_inverse():
    CASES["divisor_inverse"] += 1
    X = axes()
    P = effective_divisor_from_subscheme(X, parse_ideal(R4, "x; y; z"))
    assert not divisor_sum(P, divisor_negate(P)).is_zero_divisor()


@SLOW
@given(quadric_divisors(), quadric_cartier())
def test_negation_distributes_with_cartier(D, E):
    CASES["divisor_negation"] += 1
    assert divisor_negate(divisor_sum(D, E)) == divisor_sum(divisor_negate(D), divisor_negate(E))


@SLOW
@given(axis_points())
def test_negation_distributes_on_singular_curve(E):
    CASES["divisor_negation"] += 1
    X = axes()
    P = effective_divisor_from_subscheme(X, parse_ideal(R4, "x; y; z"))
    assert divisor_negate(divisor_sum(P, E)) == divisor_sum(divisor_negate(P), divisor_negate(E))


@SLOW
@given(st.one_of(quadric_divisors(), axis_points()))
def test_colon_against_zero(D):
    CASES["colon_zero"] += 1
    zero = zero_divisor(D.X)
    assert divisor_sub(zero, D) == divisor_negate(D)
    assert divisor_sub(D, zero) == D


@SLOW
@given(quadric_divisors(), quadric_divisors(), quadric_cartier())
def test_colon_absorbs_cartier_summand(D1, D2, E):
    CASES["colon_cartier"] += 1
    assert divisor_sub(divisor_sum(D1, E), D2) == divisor_sum(divisor_sub(D1, D2), E)


@SLOW
@given(quadric_divisors())
def test_anticanonical_double_dual(D):
    CASES["anticanonical_duality"] += 1
    M = anticanonical()
    assert divisor_sub(M, divisor_sub(M, D)) == D


@SLOW
@given(st.sampled_from(["quadric", "axes"]), st.lists(linear_forms(), min_size=1, max_size=2), st.integers(1, 2))
def test_hull_idempotent(which, ls, k):
    CASES["hull_idempotence"] += 1
    X = quadric() if which == "quadric" else axes()
    J = Ideal(R4, [f**k for f in ls]) + X.ideal
    H = X.hull(J)
    assert X.hull(H) == H
    assert saturation(J).is_subset(H)


# -- linkage -------------------------------------------------------------------------------

CUBIC = parse_ideal(R4, "x*z - y^2; y*w - z^2; x*w - y*z")


@SLOW
@given(st.randoms(use_true_random=False))
def test_double_link_returns_curve(rnd):
    CASES["double_link"] += 1
    g = CUBIC.gens
    rng = random.Random(rnd.random())
    for _ in range(10):
        q1 = sum((R4.constant(rng.randint(-3, 3)) * f for f in g), R4.zero())
        q2 = sum((R4.constant(rng.randint(-3, 3)) * f for f in g), R4.zero())
        cubic_form = sum((R4.random_form(1, rng) * f for f in g), R4.zero())
        for pair in ((q1, q2), (q1, cubic_form)):
            Y = Ideal(R4, pair)
            if all(pair) and Y.codim() == 2:
                V2, cert = link(Y, CUBIC)
                V1, _ = link(Y, V2)
                assert cert.ok and V1 == CUBIC
                return
    raise AssertionError("no complete intersection found")


PROPERTY_TESTS = [
    test_reduced_gb_independent_of_presentation,
    test_gb_and_normal_form_idempotent,
    test_colon_times_divisor_lands_in_ideal,
    test_saturation_idempotent,
    test_intersection_methods_agree,
    test_sum_commutative_and_associative,
    test_zero_is_neutral,
    test_cartier_has_inverse,
    test_vertex_of_three_axes_has_no_inverse,
    test_negation_distributes_with_cartier,
    test_negation_distributes_on_singular_curve,
    test_colon_against_zero,
    test_colon_absorbs_cartier_summand,
    test_anticanonical_double_dual,
    test_hull_idempotent,
    test_double_link_returns_curve,
]
