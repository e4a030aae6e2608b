from fractions import Fraction

import pytest

from weylcyc.errors import ParseError
from weylcyc.parsing import parse_chain_lines, parse_chain_terms, parse_matrix, parse_poly
from weylcyc.weyl import MatrixElement, WeylPoly

p1, q1 = WeylPoly.p(1, 1), WeylPoly.q(1, 1)


def test_polynomial_grammar():
    assert parse_poly("(p1+q1)^2") == p1 * p1 + (p1 * q1).scale(2) + q1 * q1
    assert parse_poly("y3 - p2", 2).is_zero()
    assert parse_poly("3/4").constant_term() == Fraction(3, 4)
    assert parse_poly("-p1*q1 + 2") == WeylPoly.constant(1, 2) - p1 * q1


def test_n_is_inferred_from_the_largest_index():
    assert parse_poly("q2").n == 2
    assert parse_poly("y3").n == 2
    assert parse_poly("7").n == 1


def test_matrix_units():
    m = parse_matrix("2*E(1,2)*p1 + q1", 1, 2)
    assert m == MatrixElement([[q1, p1.scale(2)], [WeylPoly(1), q1]])


@pytest.mark.parametrize("text,where", [("p1 + * q1", 5), ("p1 +", 4), ("x1", 0), ("1/0", 2), ("(p1", 3)])
def test_errors_carry_positions(text, where):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.position == where
    caret = info.value.diagnostic().splitlines()[-1]
    assert caret.index("^") - 2 == where


def test_out_of_range_indices():
    with pytest.raises(ParseError):
        parse_poly("p3", 1)
    with pytest.raises(ParseError):
        parse_matrix("E(3,1)", 1, 2)


def test_chains():
    terms = parse_chain_terms("[1; p1; q1] - 1/2*[1; q1; p1]")
    assert [c for c, _ in terms] == [1, Fraction(-1, 2)]
    assert terms[1][1] == [WeylPoly.constant(1, 1), q1, p1]


@pytest.mark.parametrize("text", ["[1; p1", "[1; p1] [1]", "", "3 [p1]", "[1; p1] + "])
def test_malformed_chains(text):
    with pytest.raises(ParseError):
        parse_chain_terms(text)


def test_chain_lines_skip_comments_and_blanks():
    chains = parse_chain_lines("# header\n[1; p1; q1]\n\n[1; q1; p1]  # trailing\n")
    assert len(chains) == 2
    assert chains[1][0][1][1] == q1
