"""Exact rational parsing/formatting used by every document format.

Times and fractional action indices are `fractions.Fraction` throughout; float
literals are rejected so results never depend on binary rounding.
"""

from fractions import Fraction

from .errors import ParseError


def to_rational(value, where="value"):
    """Parse an int or a string like '3/2' or '99.5' into a Fraction."""
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ParseError(
            f"{where}: float literals are not accepted; write the number as a "
            f'string, e.g. "99.5" or "199/2"'
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: not a rational: {value!r}") from exc
    raise ParseError(f"{where}: not a rational: {value!r}")


def rat_str(q):
    """Render a Fraction compactly ('3', '3/2')."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
