"""Rational helpers on top of :class:`fractions.Fraction`.

``Fraction`` already keeps values reduced with a positive denominator, so
this module only adds the string encoding used by every JSON file.
"""

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = ["Fraction", "as_fraction", "format_rational", "parse_rational", "is_scalar"]


def is_scalar(x):
    return isinstance(x, _RationalABC) and not isinstance(x, bool)


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, _RationalABC):
        raise TypeError(f"not an exact rational: {x!r}")
    return Fraction(x)


def format_rational(x):
    """Encode as ``"num/den"``; the denominator is always written."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"expected 'num/den' string, got {s!r}")
    num, sep, den = s.partition("/")
    if not sep:
        return Fraction(int(num))
    return Fraction(int(num), int(den))
