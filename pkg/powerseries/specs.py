"""
Descriptors of the named power series.

A ``SeriesSpec`` is an immutable description; ``powerseries.series.coefficients``
turns it into a ``TruncatedSeries``. The module-level builders below are the
intended way to create specs.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from django.db import models

from numerics.coefficients import (
    Coefficient,
    CoefficientKind,
    coefficient_to_json,
    is_zero,
    rational_to_string,
)

from .exceptions import InvalidParameter


class SeriesKind(models.TextChoices):
    EXP = "EXP", "exp(z)"
    HYPERGEOMETRIC_0FQ = "HYPERGEOMETRIC_0FQ", "0Fq(;phi;z)"
    DUNKL_E = "DUNKL_E", "Dunkl kernel E_mu"
    GEOMETRIC = "GEOMETRIC", "1/(1-z)"
    BQ = "BQ", "sum q^(n^2) z^n"
    TRIVIAL_RATIONAL = "TRIVIAL_RATIONAL", "rational series with trivial RRP"
    LOG_LIKE = "LOG_LIKE", "1 + sum z^n/n"
    ZETA_RELATIVE = "ZETA_RELATIVE", "xi-derived series"
    EXPLICIT = "EXPLICIT", "explicit coefficients"
    SHIFTED = "SHIFTED", "normalized Lambda_C^s A"
    STABILITY = "STABILITY", "stability series C(z)"
    PARTIAL_THETA = "PARTIAL_THETA", "sum z^n / a^(n^2)"
    PARTIAL_THETA_FACTORIAL = "PARTIAL_THETA_FACTORIAL", "sum z^n / (n! a^(n^2))"
    Q_EXP_SMALL = "Q_EXP_SMALL", "1/(z;q)_inf"
    Q_EXP_LARGE = "Q_EXP_LARGE", "(-z;q)_inf"


@dataclass(frozen=True)
class SeriesSpec:
    kind: SeriesKind
    coefficient_kind: CoefficientKind = CoefficientKind.EXACT
    phi: Tuple[Fraction, ...] = ()
    mu: Optional[Fraction] = None
    # q of BQ and the q-exponentials, a of the partial theta series
    q: Optional[Fraction] = None
    # derivative order of ZETA_RELATIVE, shift order of SHIFTED
    s: int = 0
    coeffs: Tuple[Coefficient, ...] = ()
    base: Optional["SeriesSpec"] = None
    operator: Optional["SeriesSpec"] = None
    # A(lambda z) when set
    dilation: Optional[Coefficient] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        kind = self.kind
        if kind == SeriesKind.HYPERGEOMETRIC_0FQ:
            if not self.phi:
                raise InvalidParameter("0Fq needs at least one parameter phi")
            if any(p <= 0 for p in self.phi):
                raise InvalidParameter(f"0Fq parameters must be positive, got {self.phi}")
        elif kind == SeriesKind.DUNKL_E:
            if self.mu is None:
                raise InvalidParameter("the Dunkl kernel needs mu")
            if self.mu.denominator == 1 and self.mu <= -1:
                raise InvalidParameter(f"mu must not be a negative integer, got {self.mu}")
        elif kind == SeriesKind.BQ:
            if self.q is None or self.q <= 1:
                raise InvalidParameter(f"B_q needs q > 1, got {self.q}")
        elif kind in (SeriesKind.PARTIAL_THETA, SeriesKind.PARTIAL_THETA_FACTORIAL):
            if self.q is None or self.q <= 0:
                raise InvalidParameter(f"partial theta needs a > 0, got {self.q}")
        elif kind in (SeriesKind.Q_EXP_SMALL, SeriesKind.Q_EXP_LARGE):
            if self.q is None or not 0 < self.q < 1:
                raise InvalidParameter(f"q-exponentials need 0 < q < 1, got {self.q}")
        elif kind == SeriesKind.ZETA_RELATIVE:
            if self.s < 0:
                raise InvalidParameter(f"derivative order must be >= 0, got {self.s}")
        elif kind == SeriesKind.EXPLICIT:
            if not self.coeffs:
                raise InvalidParameter("explicit series need at least one coefficient")
            if is_zero(self.coeffs[0]):
                raise InvalidParameter("explicit series need a nonzero constant term")
        elif kind == SeriesKind.SHIFTED:
            if self.base is None or self.operator is None:
                raise InvalidParameter("shifted series need a base A and an operator series C")
            if self.s < 0:
                raise InvalidParameter(f"shift order must be >= 0, got {self.s}")
        elif kind == SeriesKind.STABILITY:
            if self.base is None:
                raise InvalidParameter("the stability series needs a base series")

    @property
    def is_polynomial(self) -> bool:
        return self.kind == SeriesKind.EXPLICIT

    def describe(self) -> Dict[str, Any]:
        """JSON-ready descriptor (the spec part of a serialized series)."""
        data: Dict[str, Any] = {"kind": self.kind.value, "coefficient_kind": self.coefficient_kind.value}
        if self.phi:
            data["phi"] = [rational_to_string(p) for p in self.phi]
        if self.mu is not None:
            data["mu"] = rational_to_string(self.mu)
        if self.q is not None:
            data["q"] = rational_to_string(self.q)
        if self.kind in (SeriesKind.ZETA_RELATIVE, SeriesKind.SHIFTED):
            data["s"] = self.s
        if self.coeffs:
            data["coeffs"] = [coefficient_to_json(c) for c in self.coeffs]
        if self.base is not None:
            data["base"] = self.base.describe()
        if self.operator is not None:
            data["operator"] = self.operator.describe()
        if self.dilation is not None:
            data["dilation"] = coefficient_to_json(self.dilation)
        if self.label:
            data["label"] = self.label
        return data


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------


def exp_series() -> SeriesSpec:
    return SeriesSpec(SeriesKind.EXP)


def hypergeometric_0fq(phi: Sequence) -> SeriesSpec:
    return SeriesSpec(SeriesKind.HYPERGEOMETRIC_0FQ, phi=tuple(Fraction(p) for p in phi))


def dunkl_e(mu) -> SeriesSpec:
    return SeriesSpec(SeriesKind.DUNKL_E, mu=Fraction(mu))


def geometric() -> SeriesSpec:
    return SeriesSpec(SeriesKind.GEOMETRIC)


def bq(q) -> SeriesSpec:
    return SeriesSpec(SeriesKind.BQ, q=Fraction(q))


def trivial_rational() -> SeriesSpec:
    return SeriesSpec(SeriesKind.TRIVIAL_RATIONAL)


def log_like() -> SeriesSpec:
    return SeriesSpec(SeriesKind.LOG_LIKE)


def zeta_relative(s: int = 0) -> SeriesSpec:
    return SeriesSpec(SeriesKind.ZETA_RELATIVE, coefficient_kind=CoefficientKind.BALL, s=s)


def explicit(coeffs: Sequence[Coefficient], label: str = "") -> SeriesSpec:
    values = tuple(c if not isinstance(c, (int, str)) else Fraction(c) for c in coeffs)
    kind = CoefficientKind.EXACT
    if any(not isinstance(c, Fraction) for c in values):
        kind = CoefficientKind.BALL
    return SeriesSpec(SeriesKind.EXPLICIT, coefficient_kind=kind, coeffs=values, label=label)


def shifted(base: SeriesSpec, operator: SeriesSpec, s: int) -> SeriesSpec:
    kind = CoefficientKind.EXACT
    if CoefficientKind.BALL in (base.coefficient_kind, operator.coefficient_kind):
        kind = CoefficientKind.BALL
    return SeriesSpec(SeriesKind.SHIFTED, coefficient_kind=kind, base=base, operator=operator, s=s)


def stability(base: SeriesSpec) -> SeriesSpec:
    return SeriesSpec(SeriesKind.STABILITY, coefficient_kind=base.coefficient_kind, base=base)


def partial_theta(a, factorial: bool = False) -> SeriesSpec:
    kind = SeriesKind.PARTIAL_THETA_FACTORIAL if factorial else SeriesKind.PARTIAL_THETA
    return SeriesSpec(kind, q=Fraction(a))


def q_exponential(q, large: bool = False) -> SeriesSpec:
    return SeriesSpec(SeriesKind.Q_EXP_LARGE if large else SeriesKind.Q_EXP_SMALL, q=Fraction(q))


def as_ball(spec: SeriesSpec) -> SeriesSpec:
    """The same series, generated as balls."""
    if spec.coefficient_kind == CoefficientKind.BALL:
        return spec
    return replace(spec, coefficient_kind=CoefficientKind.BALL)
