from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import small_rationals
from weylcyc.chernweil import (HElement, WnrElement, ahat_components_gl, ahat_components_sp,
                               ahatch, ahat_series, ce_differential, check_normal_form,
                               chern_character, chern_weil_chi, compare_chern_weil,
                               curvature_C, ev1, mul_series, polarize_eval, pr_projection)
from weylcyc.cocycle import tau_family_build
from weylcyc.weyl import (MatrixElement, WeylPoly, gl_embed, mat_commutator, mat_mul,
                          mat_trace, quad_to_sp_matrix)

p1, q1 = WeylPoly.p(1, 1), WeylPoly.q(1, 1)


def quadratics(n):
    return st.lists(small_rationals, min_size=n * (2 * n + 1), max_size=n * (2 * n + 1)).map(
        lambda cs: _quadratic(n, cs))


def _quadratic(n, cs):
    exps = [e for e in _exponents(2 * n, 2)]
    return WeylPoly(n, dict(zip(exps, cs)))


def _exponents(m, d):
    if m == 1:
        yield (d,)
        return
    for i in range(d, -1, -1):
        for rest in _exponents(m - 1, d - i):
            yield (i,) + rest


def test_projection():
    v = p1 * q1 * q1 + p1 * q1 + WeylPoly.constant(1, 3) + q1
    h = pr_projection(v)
    assert h.sp_part == p1 * q1
    assert h.gl_part == ((3,),)


def test_projection_of_matrices_averages_the_trace():
    v = MatrixElement([[p1 * p1, p1], [WeylPoly.constant(1, 2), q1 * q1 + WeylPoly.constant(1, 1)]])
    h = pr_projection(v)
    assert h.sp_part == (p1 * p1 + q1 * q1).scale(Fraction(1, 2))
    assert h.gl_part == ((0, 0), (2, 1))


def test_curvature_example():
    c = curvature_C(p1 * q1 * q1, p1)
    assert c.sp_part == (p1 * q1).scale(2)
    assert curvature_C(p1 * q1, q1 * q1).is_zero()


def test_helement_rejects_non_quadratics():
    with pytest.raises(ValueError):
        HElement(p1 * q1 * q1, ((0,),))


@given(st.sampled_from([1, 2]).flatmap(quadratics))
def test_ahat_matches_log_sinh_series(x):
    X = quad_to_sp_matrix(x)
    assert ahat_components_sp(X, 6) == oracles.ahat_series(X, 6)


@given(st.lists(small_rationals, min_size=4, max_size=4))
def test_ahat_gl_squares_to_ahat_sp(cs):
    x = [cs[:2], cs[2:]]
    sp = ahat_components_sp(quad_to_sp_matrix(gl_embed(x, 2).poly), 6)
    gl = ahat_components_gl(x, 6)
    assert mul_series(gl, gl, 6) == sp


def test_chern_character_of_diagonal():
    h = HElement.make(n=1, gl=[[2, 0], [0, 3]])
    comps = chern_character(4).components(h)
    assert comps == [Fraction(2 ** k + 3 ** k, factorial(k)) for k in range(5)]


@given(quadratics(1), st.integers(1, 3))
def test_polarization_diagonal(x, k):
    h = HElement.make(sp=x, r=1)
    for P in (ahat_series(3), ahatch(3)):
        assert polarize_eval(P, k, [h] * k) == factorial(k) * P.component(k, h)


def test_polarization_degree_zero():
    assert polarize_eval(ahatch(1), 0, [], r=3) == 3
    assert polarize_eval(ahat_series(1), 0, [], r=3) == 1
    with pytest.raises(ValueError):
        polarize_eval(ahatch(1), 2, [HElement.make(n=1, r=1)])


def test_chi_degree_one_is_the_curvature_value():
    u, v = p1 * q1 * q1, p1 * p1 * q1
    P = ahatch(1)
    expected = P.polarized(1, [curvature_C(u, v)])
    assert chern_weil_chi(P, 1, [u, v]) == expected
    assert chern_weil_chi(P, 1, [v, u]) == -expected


def _matrices(size):
    return st.lists(st.lists(st.integers(-3, 3), min_size=size, max_size=size), min_size=size, max_size=size)


@given(st.lists(_matrices(2), min_size=4, max_size=4), _matrices(2), _matrices(2))
def test_ce_differential_squares_to_zero(xs, A, B):
    def phi(ys):
        x, y = ys
        return mat_trace(mat_mul(mat_mul(x, A), mat_mul(y, B))) - mat_trace(mat_mul(mat_mul(y, A), mat_mul(x, B)))

    def dphi(ys):
        return ce_differential(phi, ys, mat_commutator)

    assert ce_differential(dphi, xs, mat_commutator) == 0


def test_ev1_and_degree_zero_comparison():
    tau2 = tau_family_build(1).component(1)
    assert ev1(tau2, [p1, q1]) == 1
    out = compare_chern_weil(1, 1, 0, [])
    assert out["rhs"] == 1 and out["equal_up_to_sign"]


def test_normal_form_checks():
    t = [WnrElement("p", (1,)), WnrElement("qM", (1,), ((1, 0), (0, 2)))]
    assert check_normal_form(1, t) == 0
    with pytest.raises(ValueError):
        check_normal_form(1, [WnrElement("p", (1,)), WnrElement("p", (1,))])
    with pytest.raises(ValueError):
        WnrElement("qM", (1,))
    assert str(t[1]) == "q1(x)[1,0;0,2]"


def test_degree_two_uses_the_unnormalized_polarization():
    t = [WnrElement("p", (1,)), WnrElement("p", (2,)),
         WnrElement("pqq", (1, 1, 2)), WnrElement("pqq", (2, 1, 2))]
    raw = compare_chern_weil(2, 1, 2, t)
    assert raw["lhs"] != 0 and raw["equal_up_to_sign"]
    halved = compare_chern_weil(2, 1, 2, t, normalized=True)
    assert not halved["equal_up_to_sign"]
