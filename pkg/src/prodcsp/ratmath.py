"""Small helpers for exact-rational bookkeeping and display."""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction


def frac_log2(value: Fraction) -> float:
    """log2 of a positive rational, safe for numerators/denominators beyond float range."""
    if value <= 0:
        raise ValueError("log2 requires a positive value")
    num, den = value.numerator, value.denominator
    # Shift both into float range, then correct by the shift counts.
    nb, db = num.bit_length(), den.bit_length()
    return (nb - db) + math.log2(num / (1 << nb)) - math.log2(den / (1 << db))


def frac_to_decimal_str(value: Fraction, digits: int = 12) -> str:
    """Render a rational as a decimal string with `digits` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(value.numerator) / Decimal(value.denominator)
    return str(d)


def format_fraction(value: Fraction) -> str:
    """Canonical p/q text (plain integer when the denominator is 1)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_weight(token: str) -> Fraction:
    """Parse `3/2` or `1.5` (or `2`) as an exact rational."""
    return Fraction(token)


def rel_close(a: Fraction | float, b: Fraction | float, rel_tol: float) -> bool:
    """Relative closeness with exact equality short-circuit (handles zero exactly)."""
    if a == b:
        return True
    fa, fb = float(a), float(b)
    scale = max(abs(fa), abs(fb))
    return abs(fa - fb) <= rel_tol * scale
