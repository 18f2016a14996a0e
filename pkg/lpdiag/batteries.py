"""
Finite batteries of necessary conditions.

A battery generates a handful of test polynomial families and certifies
their real-rootedness. A failure is a proof that B misses the property; a
pass only says nothing was falsified up to the tested index.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Sequence, Tuple

from django.db import models

from numerics.balls import BallReal, Sign
from numerics.coefficients import Coefficient, coefficient_to_json, sign_of
from numerics.precision import default_jobs
from operators.brenke import brenke_polynomials, jensen_polynomials
from operators.polynomials import RealPoly
from powerseries.generators import stability_coefficients
from powerseries.series import TruncatedSeries, coefficients
from powerseries.specs import exp_series, explicit, stability
from realroots.certificates import RootStatus
from realroots.counting import count_real_roots

from .diagnostics import coti_margin, rho

logger = logging.getLogger(__name__)


class Verdict(models.TextChoices):
    PASS = "PASS", "Passed"
    FAIL = "FAIL", "Failed"
    INCONCLUSIVE = "INCONCLUSIVE", "Inconclusive"


@dataclass(frozen=True)
class BatteryTest:
    name: str
    verdict: Verdict
    checked_up_to: int
    first_failure: Optional[int] = None
    inconclusive_at: Tuple[int, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "checked_up_to": self.checked_up_to,
            "first_failure": self.first_failure,
            "inconclusive_at": list(self.inconclusive_at),
        }


@dataclass(frozen=True)
class BatteryReport:
    tests: Tuple[BatteryTest, ...]
    n_max: int

    @property
    def verdict(self) -> Verdict:
        verdicts = {test.verdict for test in self.tests}
        if Verdict.FAIL in verdicts:
            return Verdict.FAIL
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    def test(self, name: str) -> BatteryTest:
        for test in self.tests:
            if test.name == name:
                return test
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "claim": f"necessary conditions {'failed' if self.verdict == Verdict.FAIL else 'checked'} up to N = {self.n_max}",
            "tests": [test.to_dict() for test in self.tests],
        }


def certify_sequence(name: str, polys: Sequence[RealPoly]) -> BatteryTest:
    """Certify every polynomial of a family; the first NOT_REAL_ROOTED index decides FAIL."""
    undecided = []
    for n, p in enumerate(polys):
        if p.is_zero():
            continue
        status = count_real_roots(p, isolate=False).status
        if status == RootStatus.NOT_REAL_ROOTED:
            return BatteryTest(name, Verdict.FAIL, n, first_failure=n, inconclusive_at=tuple(undecided))
        if status == RootStatus.INCONCLUSIVE:
            undecided.append(n)
    verdict = Verdict.INCONCLUSIVE if undecided else Verdict.PASS
    return BatteryTest(name, verdict, len(polys) - 1, inconclusive_at=tuple(undecided))


# ----------------------------------------------------------------------
# Stability
# ----------------------------------------------------------------------


def stability_series(B: TruncatedSeries, n_max: int) -> TruncatedSeries:
    """
    C(z) = sum (b_n / b_{n+1}) z^n / (n+1)!, normalized to C(0) = 1.

    B is stable exactly when C is of first type in the Laguerre-Polya class.

    Raises:
        ZeroCoefficient: when some b_n, n <= n_max + 1, is not certified nonzero
    """
    B.require(n_max + 1)
    return TruncatedSeries(stability(B.spec), tuple(stability_coefficients(B.coeffs, n_max)))


def stability_battery(B: TruncatedSeries, n_max: int) -> BatteryTest:
    """Jensen polynomials of the stability series, certified up to degree n_max."""
    C = stability_series(B, n_max)
    return certify_sequence("stability-jensen", jensen_polynomials(C, n_max))


# ----------------------------------------------------------------------
# Necessary battery
# ----------------------------------------------------------------------


def battery_generators(n_max: int) -> List[Tuple[str, TruncatedSeries]]:
    """e^z, 1 - z^2 and (1 + z)^l for 2 <= l <= n_max, truncated at n_max."""
    generators = [
        ("exp", coefficients(exp_series(), n_max)),
        ("1-z^2", coefficients(explicit([1, 0, -1], label="1-z^2"), n_max)),
    ]
    for l in range(2, n_max + 1):
        binomial = [comb(l, k) for k in range(l + 1)]
        generators.append((f"(1+z)^{l}", coefficients(explicit(binomial, label=f"(1+z)^{l}"), n_max)))
    return generators


def _run_generator(task) -> BatteryTest:
    name, A, B, n_max = task
    return certify_sequence(name, brenke_polynomials(A, B, n_max))


def coti_test(B: TruncatedSeries, n_max: int) -> BatteryTest:
    """b_{n-1}^2 / (b_{n-2} b_n) >= 1 + 1/(n^2 - 1) with b_{n-2} b_n > 0, for 2 <= n <= n_max."""
    undecided = []
    for n in range(2, n_max + 1):
        margin = coti_margin(B, n)
        if margin is None:
            if sign_of(B[n - 2] * B[n]) == Sign.UNKNOWN:
                undecided.append(n)
                continue
            return BatteryTest("coti", Verdict.FAIL, n, first_failure=n, inconclusive_at=tuple(undecided))
        sign = sign_of(margin)
        if sign == Sign.NEGATIVE:
            return BatteryTest("coti", Verdict.FAIL, n, first_failure=n, inconclusive_at=tuple(undecided))
        if sign == Sign.UNKNOWN:
            undecided.append(n)
    verdict = Verdict.INCONCLUSIVE if undecided else Verdict.PASS
    return BatteryTest("coti", verdict, n_max, inconclusive_at=tuple(undecided))


def necessary_battery(B: TruncatedSeries, n_max: int, jobs: Optional[int] = None) -> BatteryReport:
    """
    Brenke families of the test generators up to degree n_max, plus the coti inequality.

    Every test must pass for B to be of first type in the Laguerre-Polya
    class; the battery is parallel across generators when jobs > 1.
    """
    B.require(n_max)
    jobs = jobs or default_jobs()
    tasks = [(name, A, B, n_max) for name, A in battery_generators(n_max)]
    if jobs > 1:
        with Pool(jobs) as pool:
            tests = pool.map(_run_generator, tasks)
    else:
        tests = [_run_generator(task) for task in tasks]
    tests.append(coti_test(B, n_max))
    report = BatteryReport(tuple(tests), n_max)
    logger.info("Necessary battery for %s up to %d: %s", B, n_max, report.verdict)
    return report


# ----------------------------------------------------------------------
# Witnesses
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticWitness:
    """A = 1 + a_1 z + a_2 z^2 without real zeros whose Brenke family passed up to n_max."""

    a1: Fraction
    a2: Fraction
    n_max: int
    family: BatteryTest

    @property
    def polynomial(self) -> RealPoly:
        return RealPoly((Fraction(1), self.a1, self.a2))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A": [coefficient_to_json(c) for c in self.polynomial.coeffs],
            "n_max": self.n_max,
            "family": self.family.to_dict(),
        }


def _lower_bound(value: Coefficient) -> Fraction:
    if isinstance(value, BallReal):
        return value.exact_bounds()[0]
    return Fraction(value)


def non_lp_quadratic_witness(B: TruncatedSeries, n_max: int, a1: Fraction = Fraction(2)) -> Optional[QuadraticWitness]:
    """
    A quadratic with no real zeros whose Brenke family is real-rooted up to n_max.

    With a_2 = a_1^2/4 + eps, p_n = x^{n-2}(b_n x^2 + a_1 b_{n-1} x + a_2 b_{n-2})
    is real-rooted when eps <= a_1^2 (1 - rho_n) / (4 rho_n). Taking half the
    smallest bound over the window makes every discriminant positive. None
    when some rho_n in the window is not certified in (0, 1).
    """
    B.require(n_max)
    bounds = []
    for n in range(2, n_max + 1):
        value = rho(B, n)
        if value is None or sign_of(value) != Sign.POSITIVE or sign_of(1 - value) != Sign.POSITIVE:
            return None
        bounds.append(_lower_bound((1 - value) / value))
    smallest = min(bounds, default=Fraction(1))
    if smallest <= 0:
        return None
    eps = a1 * a1 * smallest / 8
    a2 = a1 * a1 / 4 + eps
    A = coefficients(explicit([1, a1, a2], label="quadratic witness"), n_max)
    family = certify_sequence("quadratic-witness", brenke_polynomials(A, B, n_max))
    if family.verdict != Verdict.PASS:
        logger.warning("Quadratic witness family did not pass for %s: %s", B, family.verdict)
        return None
    return QuadraticWitness(a1, a2, n_max, family)


def cubic_witness(lam: Coefficient) -> RealPoly:
    """lambda + 3z + 3z^2 + z^3, with two non-real zeros for every lambda < 1."""
    return RealPoly((lam, Fraction(3), Fraction(3), Fraction(1)), label=f"cubic({lam})")
