"""Parsing and rendering of exact rationals as ``"num/den"`` strings."""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

from .errors import InvalidArgument


def to_fraction(value) -> Fraction:
    """Convert ints, ``"a/b"`` strings, decimal strings or Decimals exactly.

    Floats are rejected: their binary expansion is rarely the value the user
    meant, and boundary comparisons must be exact.
    """
    if isinstance(value, bool):
        raise InvalidArgument(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        raise InvalidArgument(f"floats are not accepted, write {value!r} as a string")
    raise InvalidArgument(f"cannot interpret {value!r} as a rational")


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def to_json_number(x: Fraction) -> dict:
    """Exact value plus a decimal convenience field."""
    x = Fraction(x)
    return {"exact": fmt(x), "decimal": float(x)}
