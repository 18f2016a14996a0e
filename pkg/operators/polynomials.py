"""
Dense univariate polynomials over exact rationals or balls.

Coefficients are stored in ascending powers. Exact zeros at the top are
stripped on construction; on the ball path the certified degree is the
largest index whose ball excludes zero, and ``possibly_zero_tail`` records
whether balls above it still contain zero.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
import sympy

from numerics.balls import BallReal, Sign
from numerics.coefficients import (
    Coefficient,
    CoefficientKind,
    coefficient_from_json,
    coefficient_to_json,
    common_kind,
    is_zero,
    precision_of,
    sign_of,
    to_exact,
    to_mpmath,
)
from numerics.precision import default_bits


def _normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, BallReal):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class RealPoly:
    coeffs: Tuple[Coefficient, ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        values = [_normalize(c) for c in self.coeffs]
        while values and is_zero(values[-1]):
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Coefficient], label: str = "") -> "RealPoly":
        return cls(tuple(coeffs), label)

    @classmethod
    def monomial(cls, j: int, coefficient: Coefficient = 1) -> "RealPoly":
        return cls((0,) * j + (coefficient,))

    @classmethod
    def constant(cls, value: Coefficient) -> "RealPoly":
        return cls((value,))

    @classmethod
    def from_roots(cls, roots: Sequence[Coefficient], leading: Coefficient = 1) -> "RealPoly":
        poly = cls.constant(leading)
        for root in roots:
            poly = poly * cls((-root, 1))
        return poly

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RealPoly":
        return cls(tuple(coefficient_from_json(c) for c in data["coeffs"]), data.get("label", ""))

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "kind": self.kind.value,
            "coeffs": [coefficient_to_json(c) for c in self.coeffs],
        }
        if self.label:
            data["label"] = self.label
        return data

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def kind(self) -> CoefficientKind:
        return common_kind(self.coeffs)

    @property
    def is_exact(self) -> bool:
        return self.kind == CoefficientKind.EXACT

    @property
    def bits(self) -> Optional[int]:
        return precision_of(self.coeffs)

    def is_zero(self) -> bool:
        """Certified zero polynomial."""
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Certified degree; -1 for a polynomial with no certified nonzero coefficient."""
        for j in range(len(self.coeffs) - 1, -1, -1):
            if sign_of(self.coeffs[j]) in (Sign.POSITIVE, Sign.NEGATIVE):
                return j
        return -1

    @property
    def possibly_zero_tail(self) -> bool:
        """True when some ball above the certified degree may still be nonzero."""
        return len(self.coeffs) - 1 > self.degree

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int) -> Coefficient:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    def leading_coefficient(self) -> Coefficient:
        if self.degree < 0:
            return Fraction(0)
        return self.coeffs[self.degree]

    def certified(self) -> "RealPoly":
        """Drop coefficients above the certified degree (the caller has decided they vanish)."""
        return RealPoly(self.coeffs[: self.degree + 1], self.label)

    def with_label(self, label: str) -> "RealPoly":
        return RealPoly(self.coeffs, label)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __neg__(self) -> "RealPoly":
        return RealPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "RealPoly":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return RealPoly(tuple(self[j] + other[j] for j in range(size)))

    __radd__ = __add__

    def __sub__(self, other) -> "RealPoly":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RealPoly":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "RealPoly":
        if isinstance(other, (int, Fraction, BallReal)):
            return self.scale(other)
        if not isinstance(other, RealPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RealPoly()
        product: List[Coefficient] = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return RealPoly(tuple(product))

    def __rmul__(self, other) -> "RealPoly":
        if isinstance(other, (int, Fraction, BallReal)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "RealPoly":
        result = RealPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: Coefficient) -> "RealPoly":
        return RealPoly(tuple(c * factor for c in self.coeffs))

    def derivative(self) -> "RealPoly":
        return RealPoly(tuple(j * self.coeffs[j] for j in range(1, len(self.coeffs))))

    def shift_down(self) -> "RealPoly":
        """p(x) / x for p with p(0) = 0; the constant term is discarded."""
        return RealPoly(self.coeffs[1:])

    def compose_scaled_square(self, factor: Coefficient) -> "RealPoly":
        """p(factor * x^2)"""
        values: List[Coefficient] = []
        power: Coefficient = Fraction(1)
        for c in self.coeffs:
            values.extend([c * power, Fraction(0)])
            power = power * factor
        return RealPoly(tuple(values))

    def dilate(self, factor: Coefficient) -> "RealPoly":
        """p(factor * x)"""
        values: List[Coefficient] = []
        power: Coefficient = Fraction(1)
        for c in self.coeffs:
            values.append(c * power)
            power = power * factor
        return RealPoly(tuple(values))

    # ------------------------------------------------------------------
    # Evaluation and conversion
    # ------------------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact, ball or mpmath depending on the argument."""
        if isinstance(x, (float, complex, mpmath.mpf, mpmath.mpc)):
            return self.evaluate_mp(x)
        total: Coefficient = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def evaluate_mp(self, x, prec: Optional[int] = None):
        prec = prec or self.bits or default_bits()
        with mpmath.workprec(prec):
            if not self.coeffs:
                return mpmath.mpf(0)
            return mpmath.polyval(self.mp_coefficients(prec)[::-1], mpmath.mpmathify(x))

    def mp_coefficients(self, prec: Optional[int] = None) -> List[mpmath.mpf]:
        """Ascending mpmath approximations (ball midpoints)."""
        return [to_mpmath(c, prec) for c in self.coeffs]

    def exact_coefficients(self) -> List[Fraction]:
        return [to_exact(c) for c in self.coeffs]

    def to_sympy(self, symbol: Optional[sympy.Symbol] = None) -> sympy.Poly:
        """sympy Poly over QQ (exact path only)."""
        x = symbol or sympy.Symbol("x")
        values = [sympy.Rational(q.numerator, q.denominator) for q in reversed(self.exact_coefficients())]
        return sympy.Poly(values or [0], x, domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "RealPoly":
        values = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(tuple(values))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if not isinstance(c, BallReal) and c == 0:
                continue
            text = str(c) if not isinstance(c, BallReal) else mpmath.nstr(c.mid, 8)
            terms.append(text if j == 0 else f"{text}*x^{j}")
        return " + ".join(terms) or "0"


def _as_poly(value) -> Optional[RealPoly]:
    if isinstance(value, RealPoly):
        return value
    if isinstance(value, (int, Fraction, BallReal)):
        return RealPoly.constant(value)
    return None


def polynomials_to_dicts(polys: Sequence[RealPoly]) -> List[Dict[str, Any]]:
    return [p.to_dict() for p in polys]
