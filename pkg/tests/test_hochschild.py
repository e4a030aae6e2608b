from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import weyl_polys
from weylcyc.errors import DegreeError, DimensionError
from weylcyc.hochschild import (MatrixWeylAlgebra, WeylAlgebra, cochain_B, cochain_d,
                                cochain_iota, connes_Bprime, cyclic_boundary_dual, insert_dual,
                                normalize, perm_sign, wedge_embed)
from weylcyc.suites import random_cochain
from weylcyc.weyl import MatrixElement, WeylPoly

A1 = WeylAlgebra(1)
one, p1, q1 = WeylPoly.constant(1, 1), WeylPoly.p(1, 1), WeylPoly.q(1, 1)


def words(k, n=1):
    return st.lists(weyl_polys(n, 2, 2), min_size=k, max_size=k).map(lambda es: normalize(es, WeylAlgebra(n)))


def test_constants_in_later_slots_vanish():
    assert normalize([p1, one]).is_zero()
    assert normalize([p1, q1 + one]) == normalize([p1, q1])
    assert not normalize([one, p1]).is_zero()


def test_boundary_example():
    b = cyclic_boundary_dual(normalize([one, p1, q1]))
    expected = normalize([p1, q1]) - normalize([one, p1 * q1]) + normalize([q1, p1])
    assert b == expected


def test_bprime_example():
    out = connes_Bprime(normalize([p1, q1]))
    assert out == normalize([one, p1, q1]) - normalize([one, q1, p1])


def test_insert_example():
    out = insert_dual(normalize([one, p1]), q1)
    assert out == normalize([one, q1, p1]) - normalize([one, p1, q1])


def test_wedge_embed():
    assert wedge_embed([p1, q1]) == normalize([one, p1, q1]) - normalize([one, q1, p1])
    assert wedge_embed([p1, p1]).is_zero()


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((1, 2, 0)) == 1


@given(words(4))
def test_boundary_squares_to_zero(c):
    assert cyclic_boundary_dual(cyclic_boundary_dual(c)).is_zero()


@given(words(3))
def test_bprime_squares_to_zero_and_anticommutes_with_b(c):
    assert connes_Bprime(connes_Bprime(c)).is_zero()
    mixed = cyclic_boundary_dual(connes_Bprime(c)) + connes_Bprime(cyclic_boundary_dual(c))
    assert mixed.is_zero()


@given(words(4), st.integers(0, 10**6))
def test_cochain_d_squares_to_zero(c, tag):
    assert cochain_d(cochain_d(random_cochain(A1, 1, tag)))(c) == 0


@given(words(3), st.integers(0, 10**6))
def test_cochain_B_squares_to_zero(c, tag):
    assert cochain_B(cochain_B(random_cochain(A1, 4, tag)))(c) == 0


@given(words(4), st.integers(0, 10**6))
def test_cochain_d_and_B_anticommute(c, tag):
    psi = random_cochain(A1, 3, tag)
    assert (cochain_d(cochain_B(psi)) + cochain_B(cochain_d(psi)))(c) == 0


def test_cochain_degree_checks():
    phi = random_cochain(A1, 2, "x")
    with pytest.raises(DegreeError):
        phi(normalize([one, p1]))
    with pytest.raises(DegreeError):
        cochain_B(random_cochain(A1, 0, "x"))
    with pytest.raises(DegreeError):
        cochain_iota(random_cochain(A1, 0, "x"), p1)
    with pytest.raises(DegreeError):
        normalize([one, p1]) + normalize([one, p1, q1])
    with pytest.raises(DimensionError):
        phi(normalize([WeylPoly.constant(2, 1), WeylPoly.p(2, 1), WeylPoly.q(2, 2)]))


def test_matrix_algebra_words():
    alg = MatrixWeylAlgebra(1, 2)
    e12 = MatrixElement.unit(1, 2, 0, 1, p1)
    ident = MatrixElement.identity(1, 2)
    # the unit is a sum of letters, so matrix words are not normalized
    assert normalize([e12, MatrixElement.from_poly(one, 2)], alg).terms
    c = normalize([ident, e12, MatrixElement.unit(1, 2, 1, 0, q1), e12], alg)
    assert cyclic_boundary_dual(cyclic_boundary_dual(c)).is_zero()


def test_chain_scaling():
    c = normalize([one, p1, q1])
    assert c.scale(Fraction(1, 2)).terms == {w: Fraction(1, 2) for w in c.terms}
    assert (c - c).is_zero()
