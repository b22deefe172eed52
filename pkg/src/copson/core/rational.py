from __future__ import annotations

from fractions import Fraction


def parse_rational(text) -> Fraction:
    """Exact rational from ``"17/50"``, ``"0.34"``, ``"3"`` or an int/Fraction.

    Decimal strings are read as exact decimal fractions, never through float.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floats are not accepted as exact rationals")
    s = str(text).strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
