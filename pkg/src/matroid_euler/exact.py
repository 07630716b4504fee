"""Exact integer and rational helpers.

Integers are plain Python ints (unbounded) and rationals are
:class:`fractions.Fraction`, which is always kept in lowest terms with a
positive denominator.
"""

import math
from fractions import Fraction

__all__ = [
    "ExactArithmeticError",
    "rat",
    "factorial",
    "falling_product",
    "binomial",
    "format_rat",
    "parse_rat",
]


class ExactArithmeticError(ZeroDivisionError):
    """Raised for an undefined rational such as ``x/0``."""


def rat(num, den=1):
    """Build a reduced rational, reporting a zero denominator explicitly."""
    if den == 0:
        raise ExactArithmeticError(f"rational with zero denominator: {num}/0")
    return Fraction(num, den)


def factorial(n):
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def falling_product(a, k, n):
    """Return ``prod_{j=k+1}^{n} (a - j)``; the empty product (n == k) is 1.

    Factors may be zero or negative, nothing is clamped.
    """
    if n < k:
        raise ValueError(f"falling_product needs n >= k, got k={k}, n={n}")
    out = 1
    for j in range(k + 1, n + 1):
        out *= a - j
        if out == 0:
            return 0
    return out


def binomial(n, k):
    """Binomial coefficient, 0 outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def format_rat(x, short_int=False):
    """Serialize as ``"num/den"``; with ``short_int`` integers drop the ``/1``."""
    x = Fraction(x)
    if short_int and x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s):
    """Inverse of :func:`format_rat`; accepts ``"n"`` and ``"n/d"``."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return rat(int(num), int(den))
    return Fraction(int(s))
