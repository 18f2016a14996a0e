"""
Midpoint-radius real balls on top of mpmath.

Every primitive rounds the midpoint to nearest at the working precision and
adds one ulp of the rounded result plus the propagated operand radii to the
radius. Radii carry RADIUS_BITS of mantissa and are always rounded upward,
so the true result of the operands' intervals stays inside the output ball.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Union

import mpmath
from django.db import models
from mpmath import mpf
from mpmath.libmp import from_str, repr_dps, to_rational

from .exceptions import SignUnknown

RADIUS_BITS = 32

_ZERO = mpf(0)

Rational = Union[int, Fraction]


class Sign(models.TextChoices):
    POSITIVE = "POSITIVE", "Positive"
    NEGATIVE = "NEGATIVE", "Negative"
    ZERO = "ZERO", "Zero"
    UNKNOWN = "UNKNOWN", "Unknown"


def mpf_to_fraction(x: mpf) -> Fraction:
    """Exact rational value of a finite mpf."""
    numerator, denominator = to_rational(x._mpf_)
    return Fraction(int(numerator), int(denominator))


def mantissa_bits(x: mpf) -> int:
    return max(int(x._mpf_[3]), 1)


def _round_up(x: mpf) -> mpf:
    return mpmath.fadd(x, 0, prec=RADIUS_BITS, rounding="u")


def _radius_sum(*terms: mpf) -> mpf:
    total = _ZERO
    for term in terms:
        if term:
            total = mpmath.fadd(total, term, prec=RADIUS_BITS, rounding="u")
    return total


def _radius_product(a: mpf, b: mpf) -> mpf:
    return mpmath.fmul(a, b, prec=RADIUS_BITS, rounding="u")


def _ulp(x: mpf, bits: int) -> mpf:
    # |x| * 2^(1-bits) bounds the nearest-rounding error of a bits-bit result.
    if not x:
        return _ZERO
    return mpmath.ldexp(_round_up(abs(x)), 1 - bits)


def _decimal(x: mpf, bits: int) -> str:
    return mpmath.nstr(x, repr_dps(bits), strip_zeros=False, min_fixed=1, max_fixed=0)


def _parse_decimal(text: str, bits: int) -> mpf:
    return mpmath.mp.make_mpf(from_str(text, bits, "n"))


@dataclass(frozen=True)
class BallReal:
    """
    A real number known to lie in [mid - rad, mid + rad].

    ``mid`` must be representable with ``bits`` bits of mantissa; use the
    constructors below rather than building balls by hand.
    """

    mid: mpf
    rad: mpf
    bits: int

    def __post_init__(self):
        if self.bits < 2:
            raise ValueError("precision must be at least 2 bits")
        if self.rad < 0:
            raise ValueError("ball radius must be non-negative")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_rational(cls, value: Rational, bits: int) -> "BallReal":
        q = Fraction(value)
        mid = mpmath.fdiv(q.numerator, q.denominator, prec=bits, rounding="n")
        rad = _ZERO if mpf_to_fraction(mid) == q else _ulp(mid, bits)
        return cls(mid, rad, bits)

    @classmethod
    def from_mpf(cls, value: mpf, bits: int) -> "BallReal":
        """Exact ball around an mpf; precision grows to hold its mantissa."""
        value = mpmath.mpmathify(value)
        return cls(value, _ZERO, max(bits, mantissa_bits(value)))

    @classmethod
    def from_interval(cls, lo: mpf, hi: mpf, bits: int) -> "BallReal":
        """Smallest convenient ball containing the closed interval [lo, hi]."""
        if hi < lo:
            raise ValueError("interval endpoints are reversed")
        mid = mpmath.ldexp(mpmath.fadd(lo, hi, prec=bits, rounding="n"), -1)
        rad = max(
            mpmath.fsub(hi, mid, prec=RADIUS_BITS, rounding="c"),
            mpmath.fsub(mid, lo, prec=RADIUS_BITS, rounding="c"),
            _ZERO,
        )
        return cls(mid, rad, bits)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BallReal":
        bits = int(data["bits"])
        return cls(
            _parse_decimal(data["mid"], bits),
            _parse_decimal(data["rad"], max(bits, RADIUS_BITS)),
            bits,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mid": _decimal(self.mid, self.bits),
            "rad": _decimal(self.rad, max(self.bits, RADIUS_BITS)),
            "bits": self.bits,
        }

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def sign(self) -> Sign:
        return ball_sign(self)

    def lower(self) -> mpf:
        return mpmath.fsub(self.mid, self.rad, prec=self.bits, rounding="f")

    def upper(self) -> mpf:
        return mpmath.fadd(self.mid, self.rad, prec=self.bits, rounding="c")

    def exact_bounds(self):
        mid = mpf_to_fraction(self.mid)
        rad = mpf_to_fraction(self.rad)
        return mid - rad, mid + rad

    def contains(self, value: Rational) -> bool:
        lo, hi = self.exact_bounds()
        return lo <= Fraction(value) <= hi

    def overlaps(self, other: "BallReal") -> bool:
        lo, hi = self.exact_bounds()
        other_lo, other_hi = other.exact_bounds()
        return lo <= other_hi and other_lo <= hi

    def is_exact(self) -> bool:
        return not self.rad

    def relative_radius(self) -> Optional[mpf]:
        if not self.mid:
            return None
        return mpmath.fdiv(self.rad, abs(self.mid), prec=RADIUS_BITS, rounding="u")

    def with_precision(self, bits: int) -> "BallReal":
        return with_precision(self, bits)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other) -> Optional["BallReal"]:
        if isinstance(other, BallReal):
            return other
        if isinstance(other, (int, Fraction)):
            return BallReal.from_rational(other, self.bits)
        if isinstance(other, mpf):
            return BallReal.from_mpf(other, self.bits)
        return None

    def __neg__(self) -> "BallReal":
        return BallReal(-self.mid, self.rad, self.bits)

    def __pos__(self) -> "BallReal":
        return self

    def __abs__(self) -> "BallReal":
        return -self if self.mid < 0 else self

    def __add__(self, other) -> "BallReal":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        bits = max(self.bits, other.bits)
        mid = mpmath.fadd(self.mid, other.mid, prec=bits, rounding="n")
        return BallReal(mid, _radius_sum(self.rad, other.rad, _ulp(mid, bits)), bits)

    __radd__ = __add__

    def __sub__(self, other) -> "BallReal":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BallReal":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "BallReal":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        bits = max(self.bits, other.bits)
        mid = mpmath.fmul(self.mid, other.mid, prec=bits, rounding="n")
        rad = _radius_sum(
            _radius_product(abs(self.mid), other.rad),
            _radius_product(abs(other.mid), self.rad),
            _radius_product(self.rad, other.rad),
            _ulp(mid, bits),
        )
        return BallReal(mid, rad, bits)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BallReal":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        divisor_sign = ball_sign(other)
        if divisor_sign == Sign.ZERO:
            raise ZeroDivisionError("division by the exact zero ball")
        if divisor_sign == Sign.UNKNOWN:
            raise SignUnknown("divisor ball contains zero")
        bits = max(self.bits, other.bits)
        mid = mpmath.fdiv(self.mid, other.mid, prec=bits, rounding="n")
        rad = _ulp(mid, bits)
        if self.rad or other.rad:
            divisor = abs(other.mid)
            # |x/y - a/b| <= (|b| ra + |a| rb) / (|b| (|b| - rb))
            numerator = _radius_sum(
                _radius_product(divisor, self.rad),
                _radius_product(abs(self.mid), other.rad),
            )
            smallest = mpmath.fsub(divisor, other.rad, prec=RADIUS_BITS, rounding="d")
            denominator = mpmath.fmul(divisor, smallest, prec=RADIUS_BITS, rounding="d")
            propagated = mpmath.fdiv(numerator, denominator, prec=RADIUS_BITS, rounding="u")
            rad = _radius_sum(propagated, rad)
        return BallReal(mid, rad, bits)

    def __rtruediv__(self, other) -> "BallReal":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "BallReal":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return BallReal.from_rational(1, self.bits) / (self ** (-exponent))
        result = BallReal.from_rational(1, self.bits)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return "BallReal({} +/- {}, {} bits)".format(
            mpmath.nstr(self.mid, 20), mpmath.nstr(self.rad, 3), self.bits
        )


def ball_sign(x: BallReal) -> Sign:
    """
    Certified sign of a ball.

    Args:
        x: The ball

    Returns:
        POSITIVE or NEGATIVE when the whole ball lies on one side of zero,
        ZERO for the exact zero ball, UNKNOWN otherwise
    """
    if not x.mid and not x.rad:
        return Sign.ZERO
    # Exact comparisons: mid - rad > 0 iff mid > rad.
    if x.mid > x.rad:
        return Sign.POSITIVE
    if -x.mid > x.rad:
        return Sign.NEGATIVE
    return Sign.UNKNOWN


def with_precision(x: BallReal, bits: int) -> BallReal:
    """Re-round a ball's midpoint to ``bits``; the radius absorbs the rounding error."""
    if bits < 2:
        raise ValueError("precision must be at least 2 bits")
    mid = mpmath.fadd(x.mid, 0, prec=bits, rounding="n")
    rad = x.rad if mid == x.mid else _radius_sum(x.rad, _ulp(mid, bits))
    return BallReal(mid, rad, bits)
