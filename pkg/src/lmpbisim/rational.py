"""Exact rational values.

All probability mass in the engine is a `fractions.Fraction`; this module
only adds the parsing/formatting conventions used by the file format and
the CLI ("p/q" strings, exact decimal conversion) and the range checks
required of kernel entries and thresholds.
"""

from fractions import Fraction

from .errors import FileFormatError

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text):
    """Parse "p/q", an integer literal, or a decimal literal, exactly.

    Fraction("0.2") is exact (1/5); no float ever enters the engine.
    """
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise FileFormatError(f"rational value must be a string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"not a rational literal: {text!r}") from exc


def format_rational(value):
    """Canonical "p/q" form; integers render without a denominator."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def check_unit_interval(value, what="value"):
    """Kernel entries and thresholds must lie in [0,1]."""
    if not (ZERO <= value <= ONE):
        raise FileFormatError(f"{what} {format_rational(value)} outside [0,1]")
    return value
