"""Result types of the real-root certifier."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from django.db import models

from numerics.coefficients import rational_to_string

Interval = Tuple[Fraction, Fraction]


class RootStatus(models.TextChoices):
    REAL_ROOTED = "REAL_ROOTED", "Only real zeros"
    NOT_REAL_ROOTED = "NOT_REAL_ROOTED", "Has non-real zeros"
    INCONCLUSIVE = "INCONCLUSIVE", "Inconclusive"


class CertificateMethod(models.TextChoices):
    CONSTANT = "constant", "Constant polynomial"
    STURM = "sturm", "Sturm sequence"
    SIGN_CHANGES = "sign-changes", "Certified sign changes"
    NONE = "none", "No certificate"


class InterlacingRelation(models.TextChoices):
    STRICT = "STRICT", "Strict interlacing"
    WEAK = "WEAK", "Weak interlacing"
    STRICT_EXCEPT_COMMON_ZERO = "STRICT_EXCEPT_COMMON_ZERO_AT", "Strict except for a common zero"
    FAILS = "FAILS", "Does not interlace"
    UNKNOWN = "UNKNOWN", "Unknown"


def interval_to_json(interval: Interval) -> List[str]:
    return [rational_to_string(interval[0]), rational_to_string(interval[1])]


@dataclass(frozen=True)
class RootCertificate:
    """
    Certified real-zero count of one polynomial.

    ``isolating_intervals`` are half-open (lo, hi], or the point (r, r) for a
    rational zero, one per distinct real zero in increasing order, with
    ``multiplicities`` alongside; both are filled on the exact path only.
    ``all_simple_away_from_zero`` is None when simplicity cannot be decided.
    """

    status: RootStatus
    real_root_count: int
    degree_certified: int
    zero_multiplicity: int
    all_simple_away_from_zero: Optional[bool]
    isolating_intervals: Tuple[Interval, ...] = ()
    multiplicities: Tuple[int, ...] = ()
    precision_used: Optional[int] = None
    method: CertificateMethod = CertificateMethod.STURM
    positive_count: Optional[int] = None
    negative_count: Optional[int] = None
    note: str = field(default="", compare=False)

    @property
    def is_real_rooted(self) -> bool:
        return self.status == RootStatus.REAL_ROOTED

    @property
    def non_real_count(self) -> Optional[int]:
        if self.status == RootStatus.INCONCLUSIVE:
            return None
        return self.degree_certified - self.real_root_count

    def to_dict(self) -> Dict[str, Any]:
        simple = self.all_simple_away_from_zero
        data = {
            "status": self.status.value,
            "real_root_count": self.real_root_count,
            "degree_certified": self.degree_certified,
            "zero_multiplicity": self.zero_multiplicity,
            "all_simple_away_from_zero": "UNKNOWN" if simple is None else simple,
            "isolating_intervals": [interval_to_json(i) for i in self.isolating_intervals],
            "multiplicities": list(self.multiplicities),
            "precision_used": self.precision_used,
            "method": self.method.value,
        }
        if self.positive_count is not None:
            data["positive_count"] = self.positive_count
            data["negative_count"] = self.negative_count
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class InterlacingReport:
    relation: InterlacingRelation
    # the shared zero lambda of STRICT_EXCEPT_COMMON_ZERO_AT, as an interval
    common_zero: Optional[Interval] = None
    # (zero of q, zero of p) violating the order when the relation FAILS
    witness: Optional[Tuple[Interval, Interval]] = None
    note: str = field(default="", compare=False)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"relation": self.relation.value}
        if self.common_zero is not None:
            data["common_zero"] = interval_to_json(self.common_zero)
        if self.witness is not None:
            data["witness"] = {"q_zero": interval_to_json(self.witness[0]), "p_zero": interval_to_json(self.witness[1])}
        if self.note:
            data["note"] = self.note
        return data
