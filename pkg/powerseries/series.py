"""
Truncated power series: realization of a ``SeriesSpec`` to a fixed order.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple, Union

import mpmath

from numerics.balls import BallReal
from numerics.coefficients import (
    Coefficient,
    CoefficientKind,
    coefficient_to_json,
    common_kind,
    precision_of,
    to_mpmath,
)
from numerics.precision import default_bits

from .exceptions import InvalidParameter, TruncationTooShort
from .generators import dilated, generate
from .specs import SeriesSpec

logger = logging.getLogger(__name__)

Point = Union[int, Fraction, BallReal, mpmath.mpf, mpmath.mpc, complex, float]


@dataclass(frozen=True)
class TruncatedSeries:
    """The coefficients c_0 ... c_N of a normalized series (c_0 = 1)."""

    spec: SeriesSpec
    coeffs: Tuple[Coefficient, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise InvalidParameter("a truncated series needs at least c_0")
        head = self.coeffs[0]
        normalized = head.contains(1) if isinstance(head, BallReal) else head == 1
        if not normalized:
            raise InvalidParameter(f"series must be normalized to c_0 = 1, got {head}")

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def coefficient_kind(self) -> CoefficientKind:
        return common_kind(self.coeffs)

    @property
    def bits(self) -> Optional[int]:
        return precision_of(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Coefficient:
        if n > self.truncation_order:
            raise TruncationTooShort(f"coefficient {n} requested from a series truncated at {self.truncation_order}")
        return self.coeffs[n]

    def require(self, order: int) -> "TruncatedSeries":
        """Return self when it reaches ``order``; raise TruncationTooShort otherwise."""
        if self.truncation_order < order:
            raise TruncationTooShort(
                f"{self.spec.kind} truncated at {self.truncation_order}, order {order} needed"
            )
        return self

    def __str__(self) -> str:
        return self.spec.label or self.spec.kind.label


def coefficients(
    spec: SeriesSpec,
    n_max: int,
    bits: Optional[int] = None,
    table=None,
) -> TruncatedSeries:
    """
    Realize ``spec`` up to z^n_max.

    Args:
        spec: Series descriptor
        n_max: Truncation order N (>= 0)
        bits: Ball precision for BALL specs (defaults to the working precision)
        table: ZetaCoefficientTable used by zeta-derived specs

    Returns:
        TruncatedSeries with N + 1 coefficients
    """
    if n_max < 0:
        raise InvalidParameter(f"truncation order must be >= 0, got {n_max}")
    values = generate(spec, n_max, bits or default_bits(), table)
    return TruncatedSeries(spec, tuple(values))


def dilate(series: TruncatedSeries, factor: Coefficient) -> TruncatedSeries:
    """The series of A(factor * z), truncated at the same order."""
    previous = series.spec.dilation
    spec = replace(
        series.spec,
        dilation=factor if previous is None else previous * factor,
        coefficient_kind=common_kind([factor, *series.coeffs]),
    )
    return TruncatedSeries(spec, tuple(dilated(series.coeffs, factor)))


def evaluate(series: TruncatedSeries, z: Point):
    """
    Partial sum sum_{n <= N} c_n z^n.

    Exact coefficients and an exact point give an exact rational; a ball
    anywhere gives a ball enclosure of the partial sum; float and mpmath
    points (complex included) give an mpmath approximation at the working
    precision. No bound on the truncated tail is included.
    """
    if isinstance(z, (float, complex, mpmath.mpf, mpmath.mpc)):
        with mpmath.workprec(series.bits or default_bits()):
            return mpmath.polyval([to_mpmath(c) for c in reversed(series.coeffs)], mpmath.mpmathify(z))

    total: Coefficient = Fraction(0)
    for c in reversed(series.coeffs):
        total = total * z + c
    return total


def series_to_dict(series: TruncatedSeries) -> Dict[str, Any]:
    return {
        "spec": series.spec.describe(),
        "truncation_order": series.truncation_order,
        "coeffs": [coefficient_to_json(c) for c in series.coeffs],
    }
