"""
Coefficient diagnostics of a truncated series B = sum b_n z^n.

rho_n = b_{n-2} b_n / b_{n-1}^2 (n >= 2) and tau_n = b_n / b_{n+1} are the
quantities every Laguerre-Polya necessary condition here is phrased in.
Nothing in this module claims class membership: a finite window can only
pass or fail necessary conditions.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
from django.db import models

from numerics.balls import Sign
from numerics.coefficients import Coefficient, coefficient_to_json, is_nonzero, sign_of, to_mpmath
from powerseries.series import TruncatedSeries

from .exceptions import RatioUndefined

logger = logging.getLogger(__name__)


class SignPattern(models.TextChoices):
    CONSTANT = "CONSTANT", "Constant sign"
    ALTERNATING = "ALTERNATING", "Alternating sign"
    NEITHER = "NEITHER", "Neither"
    UNDETERMINED = "UNDETERMINED", "Undetermined"


class Trend(models.TextChoices):
    INCREASING = "INCREASING", "Increasing"
    DECREASING = "DECREASING", "Decreasing"
    NEITHER = "NEITHER", "Neither"
    UNDETERMINED = "UNDETERMINED", "Undetermined"


def _certified(sign: Sign, *allowed: Sign) -> Optional[bool]:
    """True/False for a decided sign, None for UNKNOWN."""
    if sign == Sign.UNKNOWN:
        return None
    return sign in allowed


def ratio(numerator: Coefficient, denominator: Coefficient) -> Optional[Coefficient]:
    if not is_nonzero(denominator):
        return None
    return numerator / denominator


def rho(B: TruncatedSeries, n: int) -> Optional[Coefficient]:
    """b_{n-2} b_n / b_{n-1}^2, None when b_{n-1} is not certified nonzero."""
    return ratio(B[n - 2] * B[n], B[n - 1] * B[n - 1])


def tau(B: TruncatedSeries, n: int) -> Optional[Coefficient]:
    return ratio(B[n], B[n + 1])


def sign_pattern(values: Sequence[Coefficient]) -> SignPattern:
    """
    Constant or alternating sign of a coefficient sequence; zeros are allowed anywhere.

    A contradiction between two certified signs decides NEITHER even when
    other signs are unknown.
    """
    signs = [sign_of(v) for v in values]
    decided = [(n, s) for n, s in enumerate(signs) if s in (Sign.POSITIVE, Sign.NEGATIVE)]
    constant = len({s for _, s in decided}) <= 1
    alternating = len({(s == Sign.POSITIVE) == (n % 2 == 0) for n, s in decided}) <= 1
    if not constant and not alternating:
        return SignPattern.NEITHER
    if Sign.UNKNOWN in signs:
        return SignPattern.UNDETERMINED
    return SignPattern.CONSTANT if constant else SignPattern.ALTERNATING


def log_concave_up_to(B: TruncatedSeries) -> int:
    """
    Largest n such that 0 <= b_{m-2} b_m < b_{m-1}^2 is certified for 2 <= m <= n.

    Indexing follows rho_m, so a window failing already at m = 2 gives 1.
    """
    last = 1
    for m in range(2, B.truncation_order + 1):
        product = B[m - 2] * B[m]
        nonnegative = _certified(sign_of(product), Sign.POSITIVE, Sign.ZERO)
        strict = _certified(sign_of(B[m - 1] * B[m - 1] - product), Sign.POSITIVE)
        if not (nonnegative and strict):
            break
        last = m
    return last


def coti_margin(B: TruncatedSeries, n: int) -> Optional[Coefficient]:
    """
    b_{n-1}^2 - (1 + 1/(n^2 - 1)) b_{n-2} b_n, scaled by the positive factor (n^2 - 1)/n^2.

    The inequality b_{n-1}^2 / (b_{n-2} b_n) >= 1 + 1/(n^2 - 1) together with
    b_{n-2} b_n > 0 holds exactly when the margin is >= 0 and the product is
    positive. None when b_{n-2} b_n is not certified positive.
    """
    product = B[n - 2] * B[n]
    if sign_of(product) != Sign.POSITIVE:
        return None
    return B[n - 1] * B[n - 1] * Fraction(n * n - 1, n * n) - product


def coti_satisfied_up_to(B: TruncatedSeries) -> int:
    last = 1
    for n in range(2, B.truncation_order + 1):
        margin = coti_margin(B, n)
        if margin is None or _certified(sign_of(margin), Sign.POSITIVE, Sign.ZERO) is not True:
            break
        last = n
    return last


def trend(values: Sequence[Coefficient]) -> Trend:
    if len(values) < 2:
        return Trend.UNDETERMINED
    steps = {sign_of(b - a) for a, b in zip(values, values[1:])}
    if steps == {Sign.POSITIVE}:
        return Trend.INCREASING
    if steps == {Sign.NEGATIVE}:
        return Trend.DECREASING
    if Sign.UNKNOWN in steps and len(steps - {Sign.UNKNOWN}) <= 1:
        return Trend.UNDETERMINED
    return Trend.NEITHER


def _json_map(values: Dict[int, Coefficient]) -> Dict[str, Any]:
    return {str(n): coefficient_to_json(v) for n, v in values.items()}


@dataclass(frozen=True)
class LPDiagnostics:
    sign_pattern: SignPattern
    log_concave_up_to: int
    rho: Dict[int, Coefficient]
    tau: Dict[int, Coefficient]
    rho_limit_estimate: Optional[Coefficient]
    rho_trend: Trend
    coti_satisfied_up_to: int
    # max rho over the second half of the window; the limsup is only observed here
    observed_limsup: Optional[Coefficient] = None
    truncation_order: int = field(default=0, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sign_pattern": self.sign_pattern.value,
            "log_concave_up_to": self.log_concave_up_to,
            "rho": _json_map(self.rho),
            "tau": _json_map(self.tau),
            "rho_limit_estimate": coefficient_to_json(self.rho_limit_estimate)
            if self.rho_limit_estimate is not None
            else None,
            "rho_trend": self.rho_trend.value,
            "coti_satisfied_up_to": self.coti_satisfied_up_to,
            "observed_limsup": coefficient_to_json(self.observed_limsup) if self.observed_limsup is not None else None,
            "truncation_order": self.truncation_order,
            "claim": f"necessary conditions checked up to N = {self.truncation_order}",
        }


def _window_max(values: List[Coefficient]) -> Optional[Coefficient]:
    best = None
    for value in values:
        if best is None or sign_of(value - best) == Sign.POSITIVE:
            best = value
    return best


def diagnose(B: TruncatedSeries) -> LPDiagnostics:
    """
    Sign pattern, log-concavity, rho_n, tau_n and the coti index of B.

    Fields that depend on undecided ball signs are reported as UNDETERMINED
    or stop the corresponding "up to" index; the call itself never fails
    beyond the truncation check.
    """
    B.require(4)
    N = B.truncation_order
    rhos = {n: value for n in range(2, N + 1) if (value := rho(B, n)) is not None}
    taus = {n: value for n in range(N) if (value := tau(B, n)) is not None}
    ordered = [rhos[n] for n in sorted(rhos)]
    tail = [rhos[n] for n in sorted(rhos) if n > N // 2]
    diagnostics = LPDiagnostics(
        sign_pattern=sign_pattern(B.coeffs),
        log_concave_up_to=log_concave_up_to(B),
        rho=rhos,
        tau=taus,
        rho_limit_estimate=ordered[-1] if ordered else None,
        rho_trend=trend(ordered),
        coti_satisfied_up_to=coti_satisfied_up_to(B),
        observed_limsup=_window_max(tail),
        truncation_order=N,
    )
    logger.info(
        "Diagnosed %s to N = %d: %s, log-concave up to %d",
        B,
        N,
        diagnostics.sign_pattern,
        diagnostics.log_concave_up_to,
    )
    return diagnostics


# ----------------------------------------------------------------------
# rho products and tau equivalence
# ----------------------------------------------------------------------


def scaled_ratio(B: TruncatedSeries, n: int, j: int) -> Coefficient:
    """b_{n-j} / (b_n tau_n^j) with tau_n = b_n / b_{n+1}."""
    if not 1 <= j <= n:
        raise RatioUndefined(f"need 1 <= j <= n, got j = {j}, n = {n}")
    t = tau(B, n)
    if t is None or not is_nonzero(B[n]) or not is_nonzero(t):
        raise RatioUndefined(f"tau_{n} is undefined")
    return B[n - j] / (B[n] * t**j)


def rho_product(B: TruncatedSeries, n: int, j: int) -> Coefficient:
    """prod_{i=0}^{j-1} rho_{n+1-i}^{j-i}; equals scaled_ratio(B, n, j)."""
    if not 1 <= j <= n:
        raise RatioUndefined(f"need 1 <= j <= n, got j = {j}, n = {n}")
    result: Coefficient = Fraction(1)
    for i in range(j):
        value = rho(B, n + 1 - i)
        if value is None:
            raise RatioUndefined(f"rho_{n + 1 - i} is undefined")
        result = result * value ** (j - i)
    return result


@dataclass(frozen=True)
class TauRow:
    n: int
    # b_{n-1} / (b_n tau_n) and tau_{n-1} / tau_n
    first: Coefficient
    second: Coefficient

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "first": coefficient_to_json(self.first), "second": coefficient_to_json(self.second)}


@dataclass(frozen=True)
class TauEquivalenceReport:
    rows: Tuple[TauRow, ...]
    first_trend_to_one: bool
    second_trend_to_one: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [row.to_dict() for row in self.rows],
            "first_trend_to_one": self.first_trend_to_one,
            "second_trend_to_one": self.second_trend_to_one,
        }


def _approaches_one(values: Sequence[Coefficient]) -> bool:
    """|1 - v| non-increasing over the last half of the values and smaller at the end than at the start."""
    if len(values) < 2:
        return False
    gaps = [abs(to_mpmath(v) - 1) for v in values]
    tail = gaps[len(gaps) // 2 :]
    return all(b <= a for a, b in zip(tail, tail[1:])) and gaps[-1] < gaps[0]


def tau_equivalence_report(B: TruncatedSeries) -> TauEquivalenceReport:
    """Both ratio limits tying tau_n = b_n / b_{n+1} to rho_n -> 1, on the computed window."""
    rows = []
    for n in range(2, B.truncation_order):
        t, previous = tau(B, n), tau(B, n - 1)
        if t is None or previous is None or not is_nonzero(B[n]) or not is_nonzero(t):
            continue
        rows.append(TauRow(n, B[n - 1] / (B[n] * t), previous / t))
    return TauEquivalenceReport(
        tuple(rows),
        _approaches_one([row.first for row in rows]),
        _approaches_one([row.second for row in rows]),
    )


# ----------------------------------------------------------------------
# Convergence of rho_n
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RhoRow:
    n: int
    rho: Coefficient
    gap: Coefficient
    gap_log: mpmath.mpf
    # D_n / b_n^2 - 1 with D_n = n b_n^2 - (n+1) b_{n-1} b_{n+1}
    grosswald: Optional[Coefficient] = None
    grosswald_log: Optional[mpmath.mpf] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "rho": coefficient_to_json(self.rho),
            "one_minus_rho": coefficient_to_json(self.gap),
            "one_minus_rho_log_n": mpmath.nstr(self.gap_log, 15),
            "grosswald": coefficient_to_json(self.grosswald) if self.grosswald is not None else None,
            "grosswald_log_n": mpmath.nstr(self.grosswald_log, 15) if self.grosswald_log is not None else None,
        }


@dataclass(frozen=True)
class RhoConvergenceReport:
    rows: Tuple[RhoRow, ...]
    rho_trend: Trend
    gap_trend: Trend
    toward_one: bool
    # max over the window of |D_n / b_n^2 - 1| log n
    grosswald_constant: Optional[mpmath.mpf]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [row.to_dict() for row in self.rows],
            "rho_trend": self.rho_trend.value,
            "gap_trend": self.gap_trend.value,
            "toward_one": self.toward_one,
            "grosswald_constant": mpmath.nstr(self.grosswald_constant, 15)
            if self.grosswald_constant is not None
            else None,
        }


def rho_convergence_report(B: TruncatedSeries) -> RhoConvergenceReport:
    """Tabulate rho_n, 1 - rho_n and (1 - rho_n) log n, with the Grosswald columns where b_{n+1} is known."""
    B.require(6)
    N = B.truncation_order
    rows = []
    for n in range(2, N + 1):
        value = rho(B, n)
        if value is None:
            continue
        gap = 1 - value
        log_n = mpmath.log(n)
        grosswald = grosswald_log = None
        if n < N and (following := rho(B, n + 1)) is not None:
            grosswald = n - (n + 1) * following - 1
            grosswald_log = abs(to_mpmath(grosswald)) * log_n
        rows.append(RhoRow(n, value, gap, to_mpmath(gap) * log_n, grosswald, grosswald_log))

    rho_trend = trend([row.rho for row in rows])
    gap_trend = trend([row.gap for row in rows])
    scaled = [row.grosswald_log for row in rows if row.grosswald_log is not None]
    return RhoConvergenceReport(
        rows=tuple(rows),
        rho_trend=rho_trend,
        gap_trend=gap_trend,
        toward_one=rho_trend == Trend.INCREASING and all(sign_of(row.gap) == Sign.POSITIVE for row in rows),
        grosswald_constant=max(scaled) if scaled else None,
    )
