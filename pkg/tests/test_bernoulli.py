from fractions import Fraction
from math import factorial, prod

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import small_rationals
from weylcyc.bernoulli import (PiecewisePoly, Region, UPoly, bernoulli_numbers, bernoulli_poly,
                               circle_convolve, convolution_power, cube_integrate,
                               cycle_integral, cycle_weight_formula, region_integrate,
                               simplex_integrate)
from weylcyc.config import caps
from weylcyc.errors import CapExceeded


def test_bernoulli_numbers_match_generating_function():
    assert bernoulli_numbers(8) == oracles.bernoulli_numbers(8)
    assert bernoulli_numbers(4)[:3] == [1, Fraction(-1, 2), Fraction(1, 6)]


@pytest.mark.parametrize("j", range(9))
def test_bernoulli_polynomials(j):
    x = sympy.Symbol("x")
    ours = sum(sympy.Rational(c.numerator, c.denominator) * x ** e[0] for e, c in bernoulli_poly(j).items())
    assert sympy.expand(ours - oracles.bernoulli_poly(j)) == 0


def upolys(k):
    exps = st.lists(st.integers(0, 3), min_size=k, max_size=k).map(tuple)
    return st.dictionaries(exps, small_rationals, min_size=1, max_size=3).map(lambda d: UPoly(k, d))


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(st.just(k), upolys(k))))
def test_simplex_integral_matches_iterated_integration(args):
    k, f = args
    us = sympy.symbols(f"u1:{k + 1}")
    expr = oracles.to_sympy(f, us)
    for i in range(k):
        upper = us[i + 1] if i + 1 < k else 1
        expr = sympy.integrate(expr, (us[i], 0, upper))
    assert simplex_integrate(f) == Fraction(str(sympy.Rational(expr)))


@given(st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), upolys(k))))
def test_chambers_partition_the_cube(args):
    k, f = args
    expected = sum((c / prod(e + 1 for e in exp) for exp, c in f.items()), Fraction(0))
    assert cube_integrate([], k, extra=f) == expected


def test_simplex_volume():
    for k in range(1, 6):
        assert simplex_integrate(UPoly.constant(k, 1)) == Fraction(1, factorial(k))


@pytest.mark.parametrize("m", range(7))
def test_b1_power_integrals(m):
    # u_2 - u_1 is uniform mod 1, so the cube integral is the mean of b1^m
    expected = Fraction(1, 2 ** m * (m + 1)) if m % 2 == 0 else Fraction(0)
    assert cube_integrate([(1, 2, m)], 2) == expected
    assert cube_integrate([(0, 1, m)], 1) == expected


def test_region_from_permutation():
    region = Region.from_permutation((2, 3, 1))
    assert region.order == (3, 1, 2)
    assert region.less(3, 1) and region.less(0, 3)
    with pytest.raises(ValueError):
        Region((1, 1))


def test_region_integral_single_chamber():
    # on 0 < u1 < u2 < 1, b1(u2 - u1) = u2 - u1 - 1/2
    assert region_integrate([(1, 2, 1)], region=Region.standard(2)) == Fraction(-1, 12)
    assert region_integrate([(1, 2, 1)], region=Region((2, 1))) == Fraction(1, 12)


@pytest.mark.parametrize("l", range(2, 7))
def test_cycle_integral_matches_fourier_series(l):
    assert cycle_integral(l) == oracles.cycle_integral_fourier(l)


def test_cycle_weight_formula_values():
    assert [cycle_weight_formula(l) for l in range(2, 7)] == [
        Fraction(1, 12), 0, Fraction(-1, 720), 0, Fraction(1, 30240)]


def test_cycle_integral_against_formula():
    # the cube integral carries the opposite sign to the closed form in every nonzero case
    for l in range(2, 7):
        assert cycle_integral(l) == -cycle_weight_formula(l)


def test_chamber_cap():
    with caps(chambers=3):
        with pytest.raises(CapExceeded):
            cube_integrate([], 4)


def _as_sympy(f):
    x = sympy.Symbol("x")
    assert len(f.pieces) == 1
    return sum((sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(f.pieces[0])),
               sympy.Integer(0))


coeff_lists = st.lists(small_rationals, min_size=1, max_size=4)


@given(coeff_lists, coeff_lists)
def test_convolution_of_polynomials_matches_oracle(a, b):
    f, g = PiecewisePoly.polynomial(a), PiecewisePoly.polynomial(b)
    h = circle_convolve(f, g)
    assert h == circle_convolve(g, f)
    x = sympy.Symbol("x")
    expected = oracles.periodic_convolution(_as_sympy(f), _as_sympy(g))
    for t in (Fraction(0), Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)):
        assert h(t) == Fraction(str(sympy.Rational(expected.subs(x, sympy.Rational(t.numerator, t.denominator)))))


def test_convolution_with_a_breakpoint():
    step = PiecewisePoly((0, Fraction(1, 2), 1), [[1], [0]])
    h = circle_convolve(step, step)
    # triangle wave: overlap of [0, 1/2) with its translate by t
    assert h(0) == 0
    assert h(Fraction(1, 4)) == Fraction(1, 4)
    assert h(Fraction(1, 2)) == Fraction(1, 2)
    assert h(Fraction(3, 4)) == Fraction(1, 4)


@pytest.mark.parametrize("j", range(1, 5))
def test_bernoulli_functions_as_convolution_powers(j):
    b1 = PiecewisePoly.bernoulli(1)
    assert convolution_power(b1.scale(-1), j).scale(factorial(j)) == PiecewisePoly.bernoulli(j).scale(-1)


@pytest.mark.parametrize("j", range(1, 8))
def test_periodic_bernoulli_properties(j):
    b = PiecewisePoly.bernoulli(j)
    assert b.integral() == 0
    assert b.derivative() == PiecewisePoly.bernoulli(j - 1).scale(j)
    assert b(Fraction(1, 3) + 2) == b(Fraction(1, 3))


def test_piecewise_refine_and_arithmetic():
    f = PiecewisePoly.bernoulli(2)
    assert f.refine([Fraction(1, 3)]) == f
    assert (f - f) == PiecewisePoly.constant(0)
    with pytest.raises(ValueError):
        PiecewisePoly((0, 2), [[1]])
