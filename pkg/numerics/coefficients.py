"""
Uniform treatment of the two coefficient kinds.

A coefficient is either an exact rational (``fractions.Fraction``; plain
ints are accepted wherever a rational is) or a ``BallReal``. Arithmetic
between the two kinds promotes to a ball.
"""
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Union

import mpmath
from django.db import models
from mpmath import mpf

from .balls import BallReal, Sign, ball_sign, with_precision
from .precision import default_bits

ExactRational = Fraction

Coefficient = Union[int, Fraction, BallReal]


class CoefficientKind(models.TextChoices):
    EXACT = "EXACT", "Exact rational"
    BALL = "BALL", "Ball real"


def kind_of(value: Coefficient) -> CoefficientKind:
    if isinstance(value, BallReal):
        return CoefficientKind.BALL
    return CoefficientKind.EXACT


def common_kind(values: Iterable[Coefficient]) -> CoefficientKind:
    for value in values:
        if isinstance(value, BallReal):
            return CoefficientKind.BALL
    return CoefficientKind.EXACT


def sign_of(value: Coefficient) -> Sign:
    if isinstance(value, BallReal):
        return ball_sign(value)
    if value > 0:
        return Sign.POSITIVE
    if value < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


def is_zero(value: Coefficient) -> bool:
    """True only for a certified zero."""
    return sign_of(value) == Sign.ZERO


def is_nonzero(value: Coefficient) -> bool:
    """True only when the value is certified different from zero."""
    return sign_of(value) in (Sign.POSITIVE, Sign.NEGATIVE)


def precision_of(values: Iterable[Coefficient]) -> Optional[int]:
    """Largest ball precision among ``values``, None when all are exact."""
    bits = [v.bits for v in values if isinstance(v, BallReal)]
    return max(bits) if bits else None


def to_ball(value: Coefficient, bits: Optional[int] = None) -> BallReal:
    bits = bits or default_bits()
    if isinstance(value, BallReal):
        return value if value.bits >= bits else with_precision(value, bits)
    return BallReal.from_rational(value, bits)


def lift(values: Iterable[Coefficient], bits: int) -> List[BallReal]:
    """Turn every coefficient into a ball of at least ``bits`` precision."""
    return [to_ball(value, bits) for value in values]


def to_exact(value: Coefficient) -> Fraction:
    if isinstance(value, BallReal):
        raise TypeError("a ball has no exact rational value")
    return Fraction(value)


def to_mpmath(value: Coefficient, prec: Optional[int] = None) -> mpf:
    """Approximate value as an mpf: the midpoint of a ball, a rounded rational otherwise."""
    if isinstance(value, BallReal):
        return value.mid
    q = Fraction(value)
    return mpmath.fdiv(q.numerator, q.denominator, prec=prec or default_bits())


def pochhammer(x: Coefficient, k: int) -> Coefficient:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1)."""
    result: Coefficient = Fraction(1)
    for i in range(k):
        result = result * (x + i)
    return result


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------


def rational_to_string(value: Union[int, Fraction]) -> str:
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def coefficient_to_json(value: Coefficient) -> Any:
    if isinstance(value, BallReal):
        return value.to_dict()
    return rational_to_string(value)


def coefficient_from_json(data: Any) -> Coefficient:
    if isinstance(data, dict):
        return BallReal.from_dict(data)
    return parse_rational(data)
