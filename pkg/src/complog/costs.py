"""Complexity values in bits.

Weights are exact :class:`decimal.Decimal` values. Unreachability is the
distinguished value :data:`INF` (a Decimal infinity); callers test it with
:func:`is_finite` and never feed it into subtraction.
"""

from __future__ import annotations

import math
from decimal import Decimal

ZERO = Decimal(0)
INF = Decimal("Infinity")


def is_finite(value) -> bool:
    if isinstance(value, Decimal):
        return value.is_finite()
    return math.isfinite(value)


def to_cost(value) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return Decimal(repr(value))
    return Decimal(value)


def fmt_cost(value, places: int | None = None) -> str:
    """Render a cost without exponent notation.

    ``places`` caps the number of printed decimals (rounding half-even);
    ``None`` prints full precision.
    """
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        if value == float("-inf"):
            return "-inf"
        value = Decimal(repr(value))
    if value.is_infinite():
        return "inf" if value > 0 else "-inf"
    if places is not None:
        exp = value.as_tuple().exponent
        if isinstance(exp, int) and -exp > places:
            value = value.quantize(Decimal(1).scaleb(-places))
    text = format(value.normalize(), "f")
    return "0" if text in ("-0", "") else text
