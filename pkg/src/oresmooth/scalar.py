"""Exact rational scalars.

The coefficient field is the rationals, represented by :class:`fractions.Fraction`,
which already keeps every value reduced with a positive denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def as_scalar(value) -> Fraction:
    """Coerce an int, Fraction or rational string to a Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    """Parse ``-3/4``, ``7`` or ``0``. Floats are rejected."""
    m = _RATIONAL.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def inv(value: Fraction) -> Fraction:
    if value == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / value
