from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import weyl_polys
from weylcyc.errors import DimensionError
from weylcyc.parsing import parse_poly
from weylcyc.weyl import (MatrixElement, WeylPoly, eval_at_zero, gl_embed, mat_arith,
                          mat_commutator, mat_mul, mat_trace, moyal_bracket, moyal_product,
                          partial_derivative, poly_arith, quad_to_sp_matrix, sp_basis,
                          symplectic_form, symplectic_form_inverse)

p1, q1 = WeylPoly.p(1, 1), WeylPoly.q(1, 1)


def test_canonical_relation():
    assert moyal_product(p1, q1) == p1 * q1 + WeylPoly.constant(1, Fraction(1, 2))
    assert moyal_bracket(p1, q1) == WeylPoly.constant(1, 1)


def test_poly_arith_and_derivatives():
    a = p1 * p1 * q1 + WeylPoly.constant(1, 3)
    assert poly_arith(a, p1, "sub") == a - p1
    assert poly_arith(a, Fraction(1, 3), "scale").constant_term() == 1
    assert partial_derivative(a, 1) == (p1 * q1).scale(2)
    assert partial_derivative(a, 2) == p1 * p1
    assert eval_at_zero(a) == 3
    with pytest.raises(IndexError):
        partial_derivative(a, 3)
    with pytest.raises(ValueError):
        poly_arith(a, a, "div")


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        p1 + WeylPoly.p(2, 1)
    with pytest.raises(DimensionError):
        moyal_product(p1, WeylPoly.q(2, 2))


def _sym(a, n):
    return oracles.to_sympy(a, oracles.base_symbols(n))


@given(st.sampled_from([1, 2]).flatmap(lambda n: st.tuples(st.just(n), weyl_polys(n), weyl_polys(n))))
def test_star_matches_exponential_oracle(args):
    n, a, b = args
    expected = oracles.moyal(_sym(a, n), _sym(b, n), n)
    assert sympy.expand(_sym(a.star(b), n) - expected) == 0


@given(weyl_polys(1, 3), weyl_polys(1, 3), weyl_polys(1, 3))
def test_star_associative(a, b, c):
    assert a.star(b).star(c) == a.star(b.star(c))


@given(weyl_polys(2, 2, 2), weyl_polys(2, 2, 2), weyl_polys(2, 2, 2))
def test_bracket_jacobi(a, b, c):
    total = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
    assert total.is_zero()


def test_sp_basis_sizes_and_closure():
    for n in (1, 2):
        basis = sp_basis(n)
        assert len(basis) == n * (2 * n + 1)
        for a in basis:
            for b in basis:
                c = a.poly.bracket(b.poly)
                assert c.is_zero() or c.is_homogeneous(2)


@pytest.mark.parametrize("n", [1, 2])
def test_quad_to_sp_matrix_is_a_lie_map(n):
    basis = [a.poly for a in sp_basis(n)]
    for a in basis:
        for b in basis:
            lhs = quad_to_sp_matrix(a.bracket(b))
            rhs = mat_commutator(quad_to_sp_matrix(a), quad_to_sp_matrix(b))
            assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2])
def test_quad_matrices_are_symplectic(n):
    om = symplectic_form(n)
    inv = symplectic_form_inverse(n)
    size = 2 * n
    assert mat_mul(om, inv) == [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for a in sp_basis(n):
        X = quad_to_sp_matrix(a.poly)
        XtO = mat_mul([list(r) for r in zip(*X)], om)
        OX = mat_mul(om, X)
        assert all(XtO[i][j] + OX[i][j] == 0 for i in range(size) for j in range(size))


def test_gl_embed_traces():
    x = [[1, 2], [3, 4]]
    X = quad_to_sp_matrix(gl_embed(x, 2).poly)
    assert mat_trace(X) == 0
    assert mat_trace(mat_mul(X, X)) == 2 * mat_trace(mat_mul(x, x))


def test_matrix_elements():
    a = MatrixElement.unit(1, 2, 0, 1, p1)
    b = MatrixElement.unit(1, 2, 1, 0, q1)
    ab = mat_arith(a, b, "moyal_mul")
    assert ab == MatrixElement.unit(1, 2, 0, 0, p1.star(q1))
    assert ab.trace() == p1.star(q1)
    assert (a.star(b) - b.star(a)).trace() == WeylPoly.constant(1, 1)
    assert mat_arith(a, Fraction(2), "scale") == MatrixElement.unit(1, 2, 0, 1, p1.scale(2))
    with pytest.raises(DimensionError):
        a.star(MatrixElement.identity(1, 3))


@given(weyl_polys(2, 3, 4))
def test_str_round_trip(a):
    assert parse_poly(str(a), 2) == a
