"""Exact rational plumbing shared by every module that promises exactness.

All exact arithmetic in the package runs on ``fractions.Fraction``.  The helpers
here cover serialization ("p/q" strings), floor/fractional-part utilities, and
high-precision rational stand-ins for the quadratic irrationals used in tests
and demos (golden ratio, sqrt(2), sqrt(5)).  The stand-ins are continued
fraction convergents, so their error is smaller than 1/den^2 and is tracked by
``denominator`` size rather than by floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions, floats and 'p/q' / decimal strings to Fraction.

    Floats convert exactly (no re-rounding), so a float input keeps the exact
    binary value it already had.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(s)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q) -> str:
    """Serialize a number as 'p/q' (exact for Fraction/int, repr for float)."""
    if isinstance(q, int):
        return f"{q}/1"
    if isinstance(q, Fraction):
        return f"{q.numerator}/{q.denominator}"
    return repr(q)


def frac_part(x):
    """Fractional part {x} = x - floor(x), exact for Fraction input."""
    if isinstance(x, Fraction):
        return x - (x.numerator // x.denominator)
    return x - floor(x)


def nearest_int_dist(x):
    """Distance from x to the nearest integer, in [0, 1/2]; exact for Fraction."""
    f = frac_part(x)
    return min(f, 1 - f)


def cf_convergent(digits) -> Fraction:
    """Value of the continued fraction [a0; a1, a2, ...] given as a digit list."""
    p_prev, p = 1, digits[0]
    q_prev, q = 0, 1
    for a in digits[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return Fraction(p, q)


def golden_ratio(terms: int = 200) -> Fraction:
    """Rational approximation of (1+sqrt 5)/2 with error below 1/F(terms)^2."""
    return cf_convergent([1] * terms)


def sqrt2(terms: int = 200) -> Fraction:
    """Rational approximation of sqrt(2) from the [1; 2, 2, ...] expansion."""
    return cf_convergent([1] + [2] * terms)


def sqrt5(terms: int = 200) -> Fraction:
    """Rational approximation of sqrt(5) from the [2; 4, 4, ...] expansion."""
    return cf_convergent([2] + [4] * terms)
