from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from strategies import balanced, monomial_entries, weyl_polys
from weylcyc.bernoulli import Region
from weylcyc.cocycle import (count_plans, hm_eval, pi_apply, s_expand, tau_eval,
                             tau_family_build, tau_matrix_eval, tau_sigma_eval)
from weylcyc.errors import DegreeError
from weylcyc.hochschild import wedge_embed
from weylcyc.weyl import MatrixElement, WeylPoly

one, p1, q1 = WeylPoly.constant(1, 1), WeylPoly.p(1, 1), WeylPoly.q(1, 1)


def _oracle(n, entries, sigma=None):
    xs = oracles.base_symbols(n)
    order = Region.from_permutation(sigma).order if sigma else None
    return oracles.tau(n, [oracles.to_sympy(e, xs) for e in entries], order)


def test_small_values():
    assert tau_eval(1, [one, p1, q1]) == Fraction(1, 2)
    assert tau_eval(1, [one, q1, p1]) == Fraction(-1, 2)
    assert tau_eval(1, wedge_embed([p1, q1])) == 1
    assert tau_eval(1, [one, p1, p1]) == 0


def test_wrong_length():
    with pytest.raises(DegreeError):
        tau_eval(1, [one, p1])


word_n1 = st.tuples(weyl_polys(1, 2, 2), monomial_entries(1, 3), monomial_entries(1, 3))


@given(word_n1)
def test_tau_matches_literal_oracle(entries):
    assume(balanced(1, entries[1:]) or len(entries[0].terms) > 1)
    assert tau_eval(1, list(entries)) == _oracle(1, entries)


@given(word_n1)
def test_tau_on_general_polynomial_head(entries):
    head = entries[0] + WeylPoly.monomial((1, 1), 2)
    word = [head, *entries[1:]]
    assert tau_eval(1, word) == _oracle(1, word)


@given(word_n1, st.permutations([1, 2]))
def test_chamber_variant_matches_oracle(entries, sigma):
    sigma = tuple(sigma)
    assert tau_sigma_eval(1, sigma, list(entries)) == _oracle(1, entries, sigma)


@pytest.mark.slow
@pytest.mark.parametrize("sigma", [None, (2, 1, 4, 3), (4, 3, 2, 1)])
def test_tau4_matches_oracle(sigma):
    n = 2
    p, q = [WeylPoly.p(2, j) for j in (1, 2)], [WeylPoly.q(2, j) for j in (1, 2)]
    one2 = WeylPoly.constant(2, 1)
    words = [[one2, p[0], q[0], p[1], q[1]],
             [p[0] * q[0], q[0], p[0] * p[1], q[1], q[0]],
             [one2 + q[1] * p[1], p[1] * q[0], q[1], p[0], q[1] * p[1]]]
    for w in words:
        ours = tau_sigma_eval(n, sigma, w) if sigma else tau_eval(n, w)
        assert ours == _oracle(n, w, sigma)


def test_identity_permutation_gives_tau():
    w = [p1 * q1, q1 * q1, p1 * p1]
    assert tau_sigma_eval(1, (1, 2), w) == tau_eval(1, w)


def test_determinant_step():
    assert pi_apply([one, p1 * p1, q1]) == [(1, [one, p1.scale(2), one])]
    assert pi_apply([one, q1, p1]) == [(-1, [one, one, one])]
    with pytest.raises(DegreeError):
        pi_apply([one, p1])


def test_exponential_plans():
    (plan,) = s_expand([p1, q1])
    assert plan.edges == (((0, 1), 1),) and plan.weight == -1
    (plan,) = s_expand([one, p1 * q1, p1 * q1])
    assert plan.integrand_factors() == [(1, 2, 2)] and plan.weight == -1
    assert s_expand([one, p1, p1]) == []


def test_plan_count():
    assert count_plans(1, wedge_embed([p1, q1])) > 0


def test_matrix_extension():
    r = 2
    E = lambda i, j, f: MatrixElement.unit(1, r, i, j, f)
    ident = MatrixElement.identity(1, r)
    scalar = tau_eval(1, [one, p1, q1])
    assert tau_matrix_eval(1, r, [E(0, 1, one), E(1, 0, p1), E(0, 0, q1)]) == scalar
    assert tau_matrix_eval(1, r, [E(0, 1, one), E(0, 1, p1), E(1, 0, q1)]) == 0
    assert tau_matrix_eval(1, r, [ident, MatrixElement.from_poly(p1, r), MatrixElement.from_poly(q1, r)]) == r * scalar


def test_family_components():
    fam = tau_family_build(1)
    assert fam.u_power(0) == 1 and fam.u_power(1) == 0
    assert fam.component(1).evaluate(one, p1, q1) == tau_eval(1, [one, p1, q1])
    # iota_omega inserts p_j first, then q_j
    expected = -(tau_eval(1, [one, q1, p1]) - tau_eval(1, [one, p1, q1]))
    assert fam.component(0).evaluate(one) == expected
    assert tau_family_build(1, sign=1).component(0).evaluate(one) == -expected
    with pytest.raises(DegreeError):
        fam.component(2)


def test_cube_evaluation():
    assert hm_eval([]) == 1
    assert hm_eval([p1 * q1]) == 0
    assert hm_eval([p1 * p1, q1 * q1]) == hm_eval([q1 * q1, p1 * p1])
