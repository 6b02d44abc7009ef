"""Exact rational helpers.

All game values and parameters are `fractions.Fraction` — arbitrary precision,
always in lowest terms with positive denominator, so equality and comparisons
are exact. Nothing in the solvers ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

Q = Fraction  # rational type alias


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse "a/b" or a finite decimal literal ("0.55") into a Fraction.

    Fraction already accepts both forms exactly; this wrapper normalises the
    error into a ValidationError with the offending text.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Canonical text form: "a/b", or just "a" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
