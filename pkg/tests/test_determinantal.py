from __future__ import annotations

import itertools

import pytest

from biliaison import QQ, Ideal, PolyRing
from biliaison.determinantal import (
    GaetaError,
    HomogeneousMatrix,
    MatrixError,
    det_bareiss,
    det_expansion,
    determinant,
    determinantal_ideal,
    determinantal_report,
    gaeta_chain,
    gaeta_step,
    lemma42_all,
    lemma42_check,
    maximal_minors,
    minor,
    parse_matrix,
    predicted_sign,
    random_matrix,
)
from biliaison.groebner import codimension, parse_ideal
from biliaison.liaison import verify_elementary_biliaison
from biliaison.resolve import hilbert_data

sympy = pytest.importorskip("sympy")

R = PolyRing("x,y,z,w")


def cubic_matrix():
    x, y, z, w = R.gens()
    return HomogeneousMatrix(R, [[x, y, z], [y, z, w]])


def test_parse_and_print_matrix():
    M = parse_matrix(R, "matrix rows=2 cols=3 { x, y, z ; y, z, w }")
    assert M == cubic_matrix()
    assert parse_matrix(R, M.to_text()) == M
    assert M.col_degrees == [1, 1, 1]


def test_degree_vectors_inferred_and_checked():
    x, y, z, w = R.gens()
    M = HomogeneousMatrix(R, [[x, y, z**2], [z, w, x**2]])
    assert [M.row_degrees[i] + M.col_degrees[j] for i in range(2) for j in range(3)] == [1, 1, 2, 1, 1, 2]
    with pytest.raises(MatrixError):
        HomogeneousMatrix(R, [[x, y], [z, w**2]])
    with pytest.raises(MatrixError):
        parse_matrix(R, "matrix rows=3 cols=2 { x, y ; z, w }")


def test_small_minors():
    x, y, z, w = R.gens()
    M = HomogeneousMatrix(R, [[x, y], [z, w]])
    assert minor(M, [0], [0]) == w
    assert minor(M) == x * w - y * z
    with pytest.raises(MatrixError):
        minor(M, [0], [])


def test_expansion_and_bareiss_agree_with_sympy():
    S = PolyRing("x,y,z", QQ)
    for seed in range(3):
        M = random_matrix(S, 4, 4, seed)
        a = det_expansion(M.entries)
        assert a == det_bareiss(M.entries)
        syms = sympy.symbols("x y z")
        loc = dict(zip(S.variables, syms))
        sm = sympy.Matrix([[sympy.sympify(str(e).replace("^", "**"), locals=loc) for e in row] for row in M.entries])
        assert S.parse(str(sympy.expand(sm.det())).replace("**", "^")) == a


def test_expansion_and_bareiss_agree_mod_p():
    S = PolyRing("x,y,z")
    for seed in range(5):
        M = random_matrix(S, 4, 4, seed)
        assert det_expansion(M.entries) == det_bareiss(M.entries)


def test_maximal_minors_match_determinants():
    M = random_matrix(R, 3, 5, seed=2)
    for cols, f in maximal_minors(M).items():
        assert f == determinant(M.submatrix(range(3), cols))


def test_determinantal_ideal_of_twisted_cubic():
    rep = determinantal_report(cubic_matrix(), 2)
    assert rep.ideal == parse_ideal(R, "x*z - y^2; y*w - z^2; x*w - y*z")
    assert rep.codimension == rep.expected_codimension == 2 and rep.standard


def test_determinantal_ideal_t_equals_one_is_entries():
    I = determinantal_ideal(cubic_matrix(), 1)
    assert I == Ideal(R, R.gens())


def test_example_matrix_degree_and_genus():
    S = PolyRing("x0,x1,x2,x3,x4")
    I = determinantal_ideal(random_matrix(S, 4, 6, seed=0), 4)
    hd = hilbert_data(I)
    assert (codimension(I), hd.degree, hd.genus) == (3, 20, 26)


def test_minor_identity_two_by_two():
    x, y, z, w = R.gens()
    M = HomogeneousMatrix(R, [[x, y], [z, w]])
    res = lemma42_check(M, 0, 0, 1, 1)
    assert res.holds and res.sign == 1


def test_minor_identity_symbolic_three_by_three():
    S = PolyRing("a,b,c,d,e,f,g,h,i", QQ)
    M = HomogeneousMatrix(S, [S.gens()[0:3], S.gens()[3:6], S.gens()[6:9]])
    results = lemma42_all(M)
    assert len(results) == 36
    assert all(r.holds and r.sign == predicted_sign(*r.indices) for r in results)


def test_minor_identity_random_four_by_four():
    S = PolyRing("x,y,z")
    for seed in range(10):
        M = random_matrix(S, 4, 4, seed)
        assert all(r.holds and r.sign == predicted_sign(*r.indices) for r in lemma42_all(M))


def test_minor_identity_index_errors():
    M = random_matrix(R, 3, 3, 0)
    with pytest.raises(MatrixError):
        lemma42_check(M, 0, 1, 0, 2)
    with pytest.raises(MatrixError):
        lemma42_check(random_matrix(R, 2, 3, 0), 0, 0, 1, 1)


def test_gaeta_step_twisted_cubic():
    st = gaeta_step(cubic_matrix())
    assert st.I_S == parse_ideal(R, "x*z - y^2")
    assert st.I_V_prime == parse_ideal(R, "x; y")
    assert st.m == 1 and st.ok and st.pairs_ok
    assert st.certificate.verify()


def test_gaeta_step_degree_two_entry():
    x, y, z, w = R.gens()
    A = HomogeneousMatrix(R, [[x, y, z**2], [z, w, x**2]])
    st = gaeta_step(A)
    assert st.m == 2 and st.ok
    PV, PS, PVp = (I.hilbert_polynomial() for I in (st.I_V, st.I_S, st.I_V_prime))
    from biliaison.liaison import biliaison_hilbert_identity

    assert biliaison_hilbert_identity(PS, PVp, PV, 2)


def test_gaeta_step_retries_after_zero_divisor():
    x, y, z, w = R.gens()
    zero = R.zero()
    A = HomogeneousMatrix(R, [[x, zero, z], [zero, y, w]], [0, 0], [1, 1, 1])
    st = gaeta_step(A, seed=3)
    assert st.attempts > 1 and st.ok


def test_gaeta_step_rejects_single_row():
    x, y, z, w = R.gens()
    with pytest.raises(GaetaError):
        gaeta_step(HomogeneousMatrix(R, [[x, y]]))


def test_gaeta_step_rejects_non_standard():
    x, y, z, w = R.gens()
    with pytest.raises(GaetaError):
        gaeta_step(HomogeneousMatrix(R, [[x, y, z], [x, y, z]]))


def test_gaeta_certificate_replays_as_elementary_biliaison():
    from biliaison.divisor import AmbientScheme, effective_divisor_from_subscheme

    st = gaeta_step(cubic_matrix())
    X = AmbientScheme(st.I_S)
    V1 = effective_divisor_from_subscheme(X, st.I_V_prime + st.I_S)
    V2 = effective_divisor_from_subscheme(X, st.I_V)
    assert verify_elementary_biliaison(V1, V2, X, st.m).ok


def test_gaeta_chain_three_by_four():
    A = random_matrix(R, 3, 4, seed=1)
    ch = gaeta_chain(A)
    assert ch.length == 2 and ch.ok and ch.terminal_is_ci
    assert len(ch.terminal_ideal.gens) == 2
    assert hilbert_data(ch.steps[0].I_V).degree == 6
    assert ch.replay_hilbert()


def test_multiplier_pairs_all_checked():
    A = random_matrix(R, 3, 5, seed=4)
    st = gaeta_step(A)
    n = len(st.N)
    assert st.pairs_checked == n * (n - 1) // 2 and st.pairs_ok
    for i, j in itertools.combinations(range(n), 2):
        assert st.I_S.normal_form(st.N[i] * st.N_prime[j] - st.N[j] * st.N_prime[i]).is_zero()
