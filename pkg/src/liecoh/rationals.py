"""Exact scalars: arbitrary-precision rationals and their "p/q" string form.

Every number in the library is a ``fractions.Fraction`` (or a plain ``int``,
which Fraction arithmetic absorbs).  JSON never carries floats; rationals are
serialized as strings ``"p"`` or ``"p/q"`` with q > 0 and gcd(p, q) = 1.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

Scalar = Fraction


def parse_rational(text) -> Fraction:
    """Parse "p" or "p/q" (also accepts ints for convenience)."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"expected rational string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
