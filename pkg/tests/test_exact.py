from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matroid_euler.exact import (
    ExactArithmeticError,
    binomial,
    factorial,
    falling_product,
    format_rat,
    parse_rat,
    rat,
)


@pytest.mark.parametrize("n, expected", [(0, 1), (5, 120), (10, 3628800)])
def test_factorial(n, expected):
    assert factorial(n) == expected


def test_factorial_recurrence():
    for n in range(1, 31):
        assert factorial(n) == n * factorial(n - 1)


def test_factorial_negative():
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize("a, k, n, expected", [
    (4, 2, 2, 1),
    (4, 2, 3, 1),
    (9, 2, 4, 30),
])
def test_falling_product(a, k, n, expected):
    assert falling_product(a, k, n) == expected


def test_falling_product_allows_negative_factors():
    # (3-2)(3-3)... hits zero; (2-3)(2-4) = 2 stays signed
    assert falling_product(3, 1, 4) == 0
    assert falling_product(2, 2, 4) == 2
    assert falling_product(2, 2, 3) == -1


@given(st.integers(-50, 50), st.integers(0, 10), st.integers(0, 10))
def test_falling_product_step(a, k, extra):
    n = k + extra
    assert falling_product(a, k, n) * (a - (n + 1)) == falling_product(a, k, n + 1)


@pytest.mark.parametrize("n, k, expected", [(4, 2, 6), (3, 0, 1), (3, 5, 0), (3, -1, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_zero_denominator_is_reported():
    with pytest.raises(ExactArithmeticError, match="zero denominator"):
        rat(1, 0)


def test_format_roundtrip():
    assert format_rat(Fraction(-1, 21)) == "-1/21"
    assert format_rat(Fraction(3)) == "3/1"
    assert format_rat(Fraction(3), short_int=True) == "3"
    assert parse_rat("-1/21") == Fraction(-1, 21)
    assert parse_rat("7") == 7
    assert parse_rat("2/-4") == Fraction(-1, 2)


rats = st.fractions(max_denominator=10**6).filter(lambda x: abs(x.numerator) < 10**12)


@given(rats)
def test_reduction_idempotent(x):
    y = rat(x.numerator, x.denominator)
    assert (y.numerator, y.denominator) == (x.numerator, x.denominator)
    assert y.denominator > 0


@given(rats, rats, rats)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a
