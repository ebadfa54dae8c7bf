from fractions import Fraction

import pytest

from common.utils.exceptions import DomainException
from lieperiod.arith import (
    PolyQ,
    bernoulli_number,
    bernoulli_polynomial,
    binomial,
    format_rational,
    integer_normalize,
    parse_rational,
)


@pytest.mark.parametrize(
    "n, expected",
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (3, Fraction(0)),
        (4, Fraction(-1, 30)),
        (12, Fraction(-691, 2730)),
        (-3, Fraction(0)),
    ],
)
def test_bernoulli_number_values(n, expected):
    assert bernoulli_number(n) == expected


def test_bernoulli_numbers_match_sympy():
    sympy = pytest.importorskip("sympy")
    # sympy's b_1 convention changed across releases, so start at 2
    for n in range(2, 40):
        expected = sympy.bernoulli(n)
        assert bernoulli_number(n) == Fraction(int(expected.p), int(expected.q))


@pytest.mark.parametrize("n, k, expected", [(5, 2, 10), (3, -1, 0), (3, 4, 0), (-1, 0, 0), (0, 0, 1)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_pascal_rule():
    for n in range(1, 51):
        for k in range(-50, 51):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_bernoulli_polynomial_two():
    assert bernoulli_polynomial(2) == PolyQ.from_coeffs([Fraction(1, 6), -1, 1])
    assert bernoulli_polynomial(2).to_text() == "1*t^2 - 1*t + 1/6"


@pytest.mark.parametrize("n", range(31))
def test_bernoulli_polynomial_difference(n):
    B = bernoulli_polynomial(n)
    expected = PolyQ.monomial(n - 1, n) if n else PolyQ.zero()
    assert B.compose(PolyQ.linear(1, 1)) - B == expected


@pytest.mark.parametrize("n", range(31))
def test_bernoulli_polynomial_endpoints(n):
    B = bernoulli_polynomial(n)
    assert B(0) == bernoulli_number(n)
    assert B(1) == (-1) ** n * bernoulli_number(n)


def test_polyq_trims_and_compares():
    assert PolyQ.from_coeffs([1, 2, 0, 0]) == PolyQ.from_coeffs([1, 2])
    assert PolyQ.from_coeffs([0, 0]).is_zero()
    assert PolyQ.zero().degree == -1
    assert not PolyQ.zero()


def test_polyq_arithmetic():
    t = PolyQ.monomial(1)
    assert (t + 1) * (t - 1) == t**2 - 1
    assert 2 * t == t + t
    assert (t**2 - 1)(3) == 8
    assert (t / 2).coeff(1) == Fraction(1, 2)
    with pytest.raises(DomainException):
        t ** -1


def test_polyq_reversal():
    P = PolyQ.from_coeffs([1, 2, 3])
    assert P.reversal(2) == PolyQ.from_coeffs([3, 2, 1])
    assert P.reversal(4) == PolyQ.from_coeffs([0, 0, 3, 2, 1])
    with pytest.raises(DomainException):
        P.reversal(1)


def test_polyq_parity():
    t = PolyQ.monomial(1)
    assert (t**2 - 1).parity() == 1
    assert (t**3 - t).parity() == -1
    assert (t + 1).parity() is None
    assert PolyQ.zero().parity() == 1


def test_polyq_primitive_part_and_proportionality():
    P = PolyQ.from_coeffs([0, 0, Fraction(-1, 5760), 0, Fraction(3, 5760), 0, Fraction(-3, 5760), 0, Fraction(1, 5760)])
    assert P.primitive_part() == PolyQ.from_coeffs([0, 0, -1, 0, 3, 0, -3, 0, 1])
    assert P.is_proportional(-7 * P)


def test_integer_normalize():
    assert integer_normalize([Fraction(3, 2), 1]) == [3, 2]
    assert integer_normalize([2, -3]) == [-2, 3]
    assert integer_normalize([Fraction(-7, 3), Fraction(3, 2)]) == [-14, 9]
    assert integer_normalize([0, 0]) == [0, 0]


def test_rational_text_forms():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert parse_rational(" 3/4 ") == Fraction(3, 4)
    with pytest.raises(DomainException):
        parse_rational("x")
    with pytest.raises(DomainException):
        parse_rational("1/0")


@pytest.mark.parametrize("text", ["1.5", "1e3", "3/4.0", "1/2/3", ""])
def test_parse_rational_rejects_inexact_forms(text):
    with pytest.raises(DomainException):
        parse_rational(text)


def test_parse_rational_reads_what_format_rational_writes():
    for x in [Fraction(0), Fraction(-14), Fraction(-1, 5760), Fraction(691, 2730)]:
        assert parse_rational(format_rational(x)) == x
