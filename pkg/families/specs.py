"""
Descriptors of the named polynomial families.

The gamma-based families read gamma_0, gamma_1, ... from a coefficient
table (or any positive sequence standing in for it); BRENKE and
APPELL_DUNKL are built from series specs.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Optional

from django.db import models

from numerics.coefficients import rational_to_string
from powerseries.specs import SeriesSpec

from .exceptions import InvalidParameter


class FamilyKind(models.TextChoices):
    JENSEN = "JENSEN", "Jensen polynomials"
    JENSEN_SHIFTED = "JENSEN_SHIFTED", "shifted Jensen polynomials q_{n,s}"
    QHAT = "QHAT", "q-hat_{N,n}"
    P_ALPHA = "P_ALPHA", "p^alpha_{n,s}"
    Q_ALPHA = "Q_ALPHA", "q^alpha_{n,s}"
    APPELL_DUNKL = "APPELL_DUNKL", "Appell-Dunkl polynomials"
    BRENKE = "BRENKE", "Brenke polynomials"


SHIFTED_KINDS = (FamilyKind.JENSEN_SHIFTED, FamilyKind.P_ALPHA, FamilyKind.Q_ALPHA)


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    n_max: int
    s: int = 0
    N: Optional[Fraction] = None
    alpha: Optional[Fraction] = None
    mu: Optional[Fraction] = None
    # generator of BRENKE / APPELL_DUNKL, or the series of a non-gamma JENSEN family
    A: Optional[SeriesSpec] = None
    B: Optional[SeriesSpec] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n_max < 0:
            raise InvalidParameter(f"n_max must be >= 0, got {self.n_max}")
        if self.s < 0:
            raise InvalidParameter(f"shift s must be >= 0, got {self.s}")
        kind = self.kind
        if kind == FamilyKind.QHAT and (self.N is None or self.N < 0):
            raise InvalidParameter(f"q-hat needs N >= 0, got {self.N}")
        if kind in (FamilyKind.P_ALPHA, FamilyKind.Q_ALPHA) and (self.alpha is None or self.alpha <= -1):
            raise InvalidParameter(f"alpha must be > -1, got {self.alpha}")
        if kind == FamilyKind.APPELL_DUNKL:
            if self.mu is None or (self.mu.denominator == 1 and self.mu <= -1):
                raise InvalidParameter(f"mu must not be a negative integer, got {self.mu}")
            if self.A is None:
                raise InvalidParameter("Appell-Dunkl families need a generating series A")
        if kind == FamilyKind.BRENKE and (self.A is None or self.B is None):
            raise InvalidParameter("Brenke families need both A and B")

    @property
    def uses_gamma(self) -> bool:
        if self.kind == FamilyKind.JENSEN:
            return self.A is None
        return self.kind in (FamilyKind.QHAT, *SHIFTED_KINDS)

    @property
    def gamma_order(self) -> int:
        """Largest gamma index the family reads."""
        return self.n_max + (self.s if self.kind in SHIFTED_KINDS else 0)

    def with_shift(self, s: int) -> "FamilySpec":
        return replace(self, s=s)

    def describe(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value, "n_max": self.n_max}
        if self.kind in SHIFTED_KINDS:
            data["s"] = self.s
        if self.N is not None:
            data["N"] = rational_to_string(self.N)
        if self.alpha is not None:
            data["alpha"] = rational_to_string(self.alpha)
        if self.mu is not None:
            data["mu"] = rational_to_string(self.mu)
        if self.A is not None:
            data["A"] = self.A.describe()
        if self.B is not None:
            data["B"] = self.B.describe()
        if self.label:
            data["label"] = self.label
        return data

    def __str__(self) -> str:
        return self.label or self.kind.label


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------


def jensen(n_max: int, A: Optional[SeriesSpec] = None) -> FamilySpec:
    return FamilySpec(FamilyKind.JENSEN, n_max, A=A)


def jensen_shifted(s: int, n_max: int) -> FamilySpec:
    return FamilySpec(FamilyKind.JENSEN_SHIFTED, n_max, s=s)


def qhat(N, n_max: int) -> FamilySpec:
    return FamilySpec(FamilyKind.QHAT, n_max, N=Fraction(N))


def p_alpha(alpha, s: int, n_max: int) -> FamilySpec:
    return FamilySpec(FamilyKind.P_ALPHA, n_max, s=s, alpha=Fraction(alpha))


def q_alpha(alpha, s: int, n_max: int) -> FamilySpec:
    return FamilySpec(FamilyKind.Q_ALPHA, n_max, s=s, alpha=Fraction(alpha))


def appell_dunkl(A: SeriesSpec, mu, n_max: int) -> FamilySpec:
    return FamilySpec(FamilyKind.APPELL_DUNKL, n_max, mu=Fraction(mu), A=A)


def brenke(A: SeriesSpec, B: SeriesSpec, n_max: int) -> FamilySpec:
    return FamilySpec(FamilyKind.BRENKE, n_max, A=A, B=B)
