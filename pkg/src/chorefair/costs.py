"""Exact cost values.

Finite costs are ``int`` or :class:`fractions.Fraction`; the infinite cost is
``math.inf``, which already absorbs addition and compares above every finite
rational. Floats are never produced by arithmetic on these values.
"""

import math
from fractions import Fraction
from numbers import Rational

INF = math.inf


def is_inf(x):
    return x == INF


def as_cost(x):
    """Coerce ``x`` to an exact cost value.

    Accepts ints, Fractions, the string ``"inf"``, rational strings such as
    ``"3/7"`` or ``"0.25"``, and floats (converted through their decimal
    repr so that ``0.1`` becomes ``1/10``).
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not costs")
    if isinstance(x, str):
        if x.strip().lower() == "inf":
            return INF
        x = Fraction(x)
    elif isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"invalid cost {x!r}")
        x = Fraction(repr(x))
    elif isinstance(x, Rational):
        x = Fraction(x)
    else:
        raise TypeError(f"cannot interpret {x!r} as a cost")
    if x < 0:
        raise ValueError(f"costs must be non-negative, got {x}")
    return x.numerator if x.denominator == 1 else x


def cost_to_json(x):
    """Serialise a cost: ints stay ints, other rationals become ``"p/q"``."""
    if is_inf(x):
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def ratio(num, den):
    """``num / den`` with the conventions 0/0 = 0, x/0 = INF, INF/INF = 1."""
    if is_inf(num):
        return Fraction(1) if is_inf(den) else INF
    if is_inf(den):
        return Fraction(0)
    if den == 0:
        return Fraction(0) if num == 0 else INF
    return Fraction(num) / Fraction(den)


def leq_scaled(lhs, factor, rhs):
    """Decide ``lhs <= factor * rhs`` exactly, with ``INF * 0 = 0``."""
    if is_inf(lhs):
        return is_inf(rhs) and factor > 0 or is_inf(factor) and rhs > 0
    if lhs == 0:
        return True
    if factor == 0 or rhs == 0:
        return False
    if is_inf(factor) or is_inf(rhs):
        return True
    return Fraction(lhs) <= Fraction(factor) * Fraction(rhs)


def to_float(x):
    return math.inf if is_inf(x) else float(x)


def fmt(x):
    """Human-readable form used in tables and reports."""
    if is_inf(x):
        return "INF"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
