"""
Numerical verification of scaled limits of Brenke-type families.

A check holds, for each index, a rescaled polynomial of the family and a
common target (a polynomial or a truncated series). ``verify_scaled_limit``
samples both on the circle |z| = r/2 and on the segment [-r/2, r/2] and
tabulates the sup deviation per index. The deviations are midpoint
approximations, not enclosures.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from numerics.coefficients import Coefficient, is_nonzero, pochhammer, rational_to_string
from numerics.precision import default_bits, setting
from operators.brenke import brenke_polynomial, jensen_polynomials, reverse
from operators.polynomials import RealPoly
from powerseries.series import TruncatedSeries, coefficients, evaluate
from powerseries.specs import SeriesSpec, exp_series, explicit, hypergeometric_0fq, shifted

from .exceptions import InvalidParameter, ScalingUndefined
from .generation import Gammas, gamma_values, generate_family, laguerre
from .specs import FamilySpec, brenke, jensen, jensen_shifted, p_alpha, q_alpha

logger = logging.getLogger(__name__)

# order of the truncated series used as a target
TARGET_ORDER = 64

Target = Union[RealPoly, TruncatedSeries]


@dataclass(frozen=True)
class AsymptoticCheck:
    """
    Rescaled polynomials indexed by n or s, and their limit.

    ``family`` is the family at the largest index of the check.
    """

    name: str
    family: FamilySpec
    target_label: str
    scaling: str
    radius: Fraction
    index_name: str
    candidates: Tuple[Tuple[int, RealPoly], ...]
    target: Target


@dataclass(frozen=True)
class AsymptoticReport:
    name: str
    index_name: str
    errors_by_index: Tuple[Tuple[int, float], ...]
    monotone_tail: bool
    final_ratio: float
    converged: bool
    factor: float
    radius: Fraction
    sample_count: int

    def error(self, index: int) -> float:
        return dict(self.errors_by_index)[index]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "index": self.index_name,
            "radius": rational_to_string(self.radius),
            "samples": self.sample_count,
            "errors_by_index": [[index, error] for index, error in self.errors_by_index],
            "monotone_tail": self.monotone_tail,
            "final_ratio": self.final_ratio,
            "convergence_factor": self.factor,
            "converged": self.converged,
        }


def convergence_factor() -> float:
    return float(setting("BRENKE_CONVERGENCE_FACTOR", 1e-3))


def sample_points(radius: Fraction, circle: Optional[int] = None, segment: Optional[int] = None) -> List[mpmath.mpc]:
    """``circle`` equispaced points on |z| = r/2 followed by ``segment`` points on [-r/2, r/2]."""
    circle = circle or int(setting("BRENKE_SAMPLE_POINTS", 32))
    segment = segment or int(setting("BRENKE_SEGMENT_POINTS", 9))
    half = mpmath.mpf(radius.numerator) / (2 * radius.denominator)
    points = [half * mpmath.expjpi(mpmath.mpf(2 * k) / circle) for k in range(circle)]
    points.extend(mpmath.mpc(x) for x in mpmath.linspace(-half, half, segment))
    return points


def _value(target: Target, z):
    if isinstance(target, RealPoly):
        return target(z)
    return evaluate(target, z)


def verify_scaled_limit(
    check: AsymptoticCheck,
    circle: Optional[int] = None,
    segment: Optional[int] = None,
    factor: Optional[float] = None,
) -> AsymptoticReport:
    """
    Sup deviation of every candidate from the target at the shared sample points.

    Convergence is verified when the deviations are non-increasing over the
    final third of the indices and the last deviation is below ``factor``
    times the first.
    """
    if not check.candidates:
        raise InvalidParameter(f"check {check.name} has no candidates")
    factor = convergence_factor() if factor is None else factor
    points = sample_points(check.radius, circle, segment)
    with mpmath.workprec(default_bits()):
        expected = [_value(check.target, z) for z in points]
        errors = np.array(
            [float(max(abs(poly(z) - w) for z, w in zip(points, expected))) for _, poly in check.candidates]
        )

    tail = errors[-max(2, math.ceil(len(errors) / 3)):]
    monotone = bool(np.all(np.diff(tail) <= 0))
    ratio = float(errors[-1] / errors[0]) if errors[0] > 0 else 0.0
    report = AsymptoticReport(
        name=check.name,
        index_name=check.index_name,
        errors_by_index=tuple((index, float(e)) for (index, _), e in zip(check.candidates, errors)),
        monotone_tail=monotone,
        final_ratio=ratio,
        converged=monotone and ratio < factor,
        factor=factor,
        radius=check.radius,
        sample_count=len(points),
    )
    logger.info("Scaled limit %s: final/initial deviation %.3g, converged=%s", check.name, ratio, report.converged)
    return report


# ----------------------------------------------------------------------
# Check builders
# ----------------------------------------------------------------------


def _ratio(numerator: Coefficient, denominator: Coefficient, name: str) -> Coefficient:
    if not is_nonzero(denominator):
        raise ScalingUndefined(f"{name}: denominator is not certified nonzero")
    return numerator / denominator


def _reversed_at(p: RealPoly, n: int, factor: Coefficient) -> RealPoly:
    """(factor z)^n p(1 / (factor z))"""
    return reverse(p, n).dilate(factor)


def brenke_reversed_limit(
    A: SeriesSpec,
    B: SeriesSpec,
    indices: Sequence[int],
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
    table=None,
) -> AsymptoticCheck:
    """(z/tau_n)^n p_n(tau_n/z) / b_n -> A(z), tau_n = b_n / b_{n+1}."""
    top = max(indices)
    Aser = coefficients(A, max(top, TARGET_ORDER), bits, table)
    Bser = coefficients(B, top + 1, bits, table)
    candidates = []
    for n in indices:
        tau = _ratio(Bser[n], Bser[n + 1], f"tau_{n}")
        p = brenke_polynomial(Aser, Bser, n)
        candidates.append((n, _reversed_at(p, n, 1 / tau).scale(_ratio(1, Bser[n], f"b_{n}"))))
    return AsymptoticCheck(
        "brenke-reversed", brenke(A, B, top), f"A = {Aser}", "(z/tau_n)^n p_n(tau_n/z)/b_n",
        Fraction(radius), "n", tuple(candidates), Aser,
    )


def brenke_dilated_limit(
    A: SeriesSpec,
    B: SeriesSpec,
    indices: Sequence[int],
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
    table=None,
) -> AsymptoticCheck:
    """p_n(z/mu_n) / a_n -> B(z), mu_n = a_n / a_{n+1}."""
    top = max(indices)
    Aser = coefficients(A, top + 1, bits, table)
    Bser = coefficients(B, max(top, TARGET_ORDER), bits, table)
    candidates = []
    for n in indices:
        mu = _ratio(Aser[n], Aser[n + 1], f"mu_{n}")
        p = brenke_polynomial(Aser, Bser, n)
        candidates.append((n, p.dilate(1 / mu).scale(_ratio(1, Aser[n], f"a_{n}"))))
    return AsymptoticCheck(
        "brenke-dilated", brenke(A, B, top), f"B = {Bser}", "p_n(z/mu_n)/a_n",
        Fraction(radius), "n", tuple(candidates), Bser,
    )


def jensen_classical_limit(
    A: SeriesSpec,
    indices: Sequence[int],
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
    table=None,
) -> AsymptoticCheck:
    """n! q_n(z/n) -> A(z) for the Jensen polynomials q_n of A."""
    if min(indices) < 1:
        raise InvalidParameter("the Jensen limit needs indices n >= 1")
    top = max(indices)
    Aser = coefficients(A, max(top, TARGET_ORDER), bits, table)
    family = jensen_polynomials(Aser, top)
    candidates = tuple((n, family[n].dilate(Fraction(1, n)).scale(factorial(n))) for n in indices)
    return AsymptoticCheck(
        "jensen-classical", jensen(top, A), f"A = {Aser}", "n! q_n(z/n)",
        Fraction(radius), "n", candidates, Aser,
    )


def shifted_generator_limit(
    A: SeriesSpec,
    B: SeriesSpec,
    C: SeriesSpec,
    n: int,
    shifts: Sequence[int],
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
    table=None,
) -> AsymptoticCheck:
    """
    Brenke p_{n,s} of (c_s/a_s) Lambda_C^s A and B, rescaled as

        (a_s c_{n+s}) / (a_{n+s} c_s) p_{n,s}(a_{n+s+1} c_{n+s} / (a_{n+s} c_{n+s+1}) z),

    tends to r_n, the Brenke polynomial of C and B.
    """
    top = n + max(shifts) + 1
    Aser = coefficients(A, top, bits, table)
    Cser = coefficients(C, top, bits, table)
    Bser = coefficients(B, n, bits, table)
    candidates = []
    for s in shifts:
        generator = coefficients(shifted(A, C, s), n, bits, table)
        p = brenke_polynomial(generator, Bser, n)
        head = _ratio(Aser[s] * Cser[n + s], Aser[n + s] * Cser[s], f"scale at s = {s}")
        lam = _ratio(Aser[n + s + 1] * Cser[n + s], Aser[n + s] * Cser[n + s + 1], f"dilation at s = {s}")
        candidates.append((s, p.dilate(lam).scale(head)))
    target = brenke_polynomial(Cser, Bser, n)
    return AsymptoticCheck(
        "shifted-generator", brenke(shifted(A, C, max(shifts)), B, n), f"r_{n} of C and B",
        "(a_s c_{n+s})/(a_{n+s} c_s) p_{n,s}(lambda_s z)", Fraction(radius), "s", tuple(candidates), target,
    )


def shifted_associate_limit(
    A: SeriesSpec,
    B: SeriesSpec,
    C: SeriesSpec,
    n: int,
    shifts: Sequence[int],
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
    table=None,
) -> AsymptoticCheck:
    """
    Brenke q_{n,s} of A and (c_s/b_s) Lambda_C^s B, rescaled as

        (b_s c_{n+s}) / (b_{n+s} c_s) (lambda_s z)^n q_{n,s}(1 / (lambda_s z)),
        lambda_s = b_{n+s+1} c_{n+s} / (b_{n+s} c_{n+s+1}),

    tends to the Brenke polynomial of C and A.
    """
    top = n + max(shifts) + 1
    Aser = coefficients(A, n, bits, table)
    Bser = coefficients(B, top, bits, table)
    Cser = coefficients(C, top, bits, table)
    candidates = []
    for s in shifts:
        associate = coefficients(shifted(B, C, s), n, bits, table)
        q = brenke_polynomial(Aser, associate, n)
        head = _ratio(Bser[s] * Cser[n + s], Bser[n + s] * Cser[s], f"scale at s = {s}")
        lam = _ratio(Bser[n + s + 1] * Cser[n + s], Bser[n + s] * Cser[n + s + 1], f"dilation at s = {s}")
        candidates.append((s, _reversed_at(q, n, lam).scale(head)))
    target = brenke_polynomial(Cser, Aser, n)
    return AsymptoticCheck(
        "shifted-associate", brenke(A, shifted(B, C, max(shifts)), n), f"Brenke polynomial {n} of C and A",
        "(b_s c_{n+s})/(b_{n+s} c_s) (lambda_s z)^n q_{n,s}(1/(lambda_s z))", Fraction(radius), "s",
        tuple(candidates), target,
    )


def derivative_shift_limit(
    A: SeriesSpec,
    B: SeriesSpec,
    n: int,
    shifts: Sequence[int],
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
    table=None,
) -> AsymptoticCheck:
    """
    Brenke q_{n,s} of A and B^{(s)} / (s! b_s), rescaled as

        b_s / ((s+1)_n b_{n+s}) (lambda_s z)^n q_{n,s}(1 / (lambda_s z)),
        lambda_s = (n+s+1) b_{n+s+1} / b_{n+s},

    tends to the Jensen polynomial q_n of A.
    """
    top = n + max(shifts) + 1
    Aser = coefficients(A, n, bits, table)
    Bser = coefficients(B, top, bits, table)
    candidates = []
    for s in shifts:
        head = _ratio(Bser[s], pochhammer(s + 1, n) * Bser[n + s], f"scale at s = {s}")
        # B^{(s)} / (s! b_s) has coefficients b_{j+s} (j+1)_s / (s! b_s)
        values = [Bser[j + s] * pochhammer(j + 1, s) / (factorial(s) * Bser[s]) for j in range(n + 1)]
        associate = TruncatedSeries(explicit(values, label=f"B^({s})/(s! b_s)"), tuple(values))
        q = brenke_polynomial(Aser, associate, n)
        lam = _ratio((n + s + 1) * Bser[n + s + 1], Bser[n + s], f"dilation at s = {s}")
        candidates.append((s, _reversed_at(q, n, lam).scale(head)))
    target = jensen_polynomials(Aser, n)[n]
    return AsymptoticCheck(
        "derivative-shift", brenke(A, B, n), f"Jensen q_{n} of A",
        "b_s/((s+1)_n b_{n+s}) (lambda_s z)^n q_{n,s}(1/(lambda_s z))", Fraction(radius), "s",
        tuple(candidates), target,
    )


def gorz_limit(
    n: int,
    shifts: Sequence[int],
    gammas: Optional[Gammas] = None,
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
) -> AsymptoticCheck:
    """
    gamma_s/gamma_{n+s} (lambda_s z)^n q_{n,s}(1/(lambda_s z)) -> (1+z)^n / n!,
    lambda_s = gamma_{n+s+1} / gamma_{n+s}.
    """
    g = gamma_values(gammas, n + max(shifts) + 1, bits)
    candidates = []
    for s in shifts:
        q = generate_family(jensen_shifted(s, n), g, bits)[n]
        lam = _ratio(g[n + s + 1], g[n + s], f"gamma ratio at s = {s}")
        candidates.append((s, _reversed_at(q, n, lam).scale(_ratio(g[s], g[n + s], f"scale at s = {s}"))))
    target = RealPoly((Fraction(1), Fraction(1))) ** n
    return AsymptoticCheck(
        "gorz", jensen_shifted(max(shifts), n), f"(1+z)^{n}/{n}!",
        "gamma_s/gamma_{n+s} (lambda_s z)^n q_{n,s}(1/(lambda_s z))", Fraction(radius), "s",
        tuple(candidates), target.scale(Fraction(1, factorial(n))),
    )


def laguerre_reversed_target(n: int, alpha) -> RealPoly:
    """z^n L_n^alpha(1/z) / (alpha+1)_n"""
    alpha = Fraction(alpha)
    return reverse(laguerre(n, alpha), n).scale(1 / pochhammer(alpha + 1, n))


def p_alpha_limit(
    alpha,
    n: int,
    shifts: Sequence[int],
    gammas: Optional[Gammas] = None,
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
) -> AsymptoticCheck:
    """
    (-1)^n gamma_s / (gamma_{n+s} (alpha+s+1)_n) p^alpha_{n,s}(-(alpha+n+s+1) gamma_{n+s+1}/gamma_{n+s} z)
    -> z^n L_n^alpha(1/z) / (alpha+1)_n.
    """
    alpha = Fraction(alpha)
    g = gamma_values(gammas, n + max(shifts) + 1, bits)
    candidates = []
    for s in shifts:
        p = generate_family(p_alpha(alpha, s, n), g, bits)[n]
        lam = -(alpha + n + s + 1) * _ratio(g[n + s + 1], g[n + s], f"gamma ratio at s = {s}")
        head = (-1) ** n * _ratio(g[s], g[n + s] * pochhammer(alpha + s + 1, n), f"scale at s = {s}")
        candidates.append((s, p.dilate(lam).scale(head)))
    return AsymptoticCheck(
        "p-alpha", p_alpha(alpha, max(shifts), n), f"z^{n} L_{n}^{alpha}(1/z) / (alpha+1)_{n}",
        "(-1)^n gamma_s/(gamma_{n+s} (alpha+s+1)_n) p(-(alpha+n+s+1) gamma_{n+s+1}/gamma_{n+s} z)",
        Fraction(radius), "s", tuple(candidates), laguerre_reversed_target(n, alpha),
    )


def q_alpha_limit(
    alpha,
    n: int,
    shifts: Sequence[int],
    gammas: Optional[Gammas] = None,
    radius: Fraction = Fraction(2),
    bits: Optional[int] = None,
) -> AsymptoticCheck:
    """
    gamma_s/gamma_{n+s} (lambda_s z)^n q^alpha_{n,s}(1/(lambda_s z)) -> L_n^alpha(z) / (alpha+1)_n,
    lambda_s = gamma_{n+s+1} / gamma_{n+s}.
    """
    alpha = Fraction(alpha)
    g = gamma_values(gammas, n + max(shifts) + 1, bits)
    candidates = []
    for s in shifts:
        q = generate_family(q_alpha(alpha, s, n), g, bits)[n]
        lam = _ratio(g[n + s + 1], g[n + s], f"gamma ratio at s = {s}")
        candidates.append((s, _reversed_at(q, n, lam).scale(_ratio(g[s], g[n + s], f"scale at s = {s}"))))
    return AsymptoticCheck(
        "q-alpha", q_alpha(alpha, max(shifts), n), f"L_{n}^{alpha}(z) / (alpha+1)_{n}",
        "gamma_s/gamma_{n+s} (lambda_s z)^n q(1/(lambda_s z))", Fraction(radius), "s",
        tuple(candidates), laguerre(n, alpha).scale(1 / pochhammer(alpha + 1, n)),
    )


# name -> builder, for the command line
CHECKS = {
    "brenke-reversed": brenke_reversed_limit,
    "brenke-dilated": brenke_dilated_limit,
    "jensen-classical": jensen_classical_limit,
    "shifted-generator": shifted_generator_limit,
    "shifted-associate": shifted_associate_limit,
    "derivative-shift": derivative_shift_limit,
    "gorz": gorz_limit,
    "p-alpha": p_alpha_limit,
    "q-alpha": q_alpha_limit,
}


def default_check(
    name: str, n: int = 3, s_max: int = 20, n_max: int = 30, table=None, alpha: Fraction = Fraction(0)
) -> AsymptoticCheck:
    """The reference instance of each check, as run by the command line and the report."""
    shifts = sorted({max(1, s_max // 4), max(2, s_max // 2), s_max})
    indices = sorted({max(1, n_max // 3), max(2, (2 * n_max) // 3), n_max})
    if name == "brenke-reversed":
        return brenke_reversed_limit(exp_series(), hypergeometric_0fq([2]), indices)
    if name == "brenke-dilated":
        return brenke_dilated_limit(hypergeometric_0fq([2]), exp_series(), indices)
    if name == "jensen-classical":
        return jensen_classical_limit(exp_series(), indices)
    if name == "shifted-generator":
        return shifted_generator_limit(exp_series(), exp_series(), hypergeometric_0fq([1]), n, shifts)
    if name == "shifted-associate":
        return shifted_associate_limit(exp_series(), exp_series(), hypergeometric_0fq([1]), n, shifts)
    if name == "derivative-shift":
        return derivative_shift_limit(exp_series(), hypergeometric_0fq([1]), n, shifts)
    if name == "gorz":
        return gorz_limit(n, shifts, table)
    if name == "p-alpha":
        return p_alpha_limit(alpha, n, shifts, table)
    if name == "q-alpha":
        return q_alpha_limit(alpha, n, shifts, table)
    raise InvalidParameter(f"unknown asymptotic check {name!r}; expected one of {', '.join(CHECKS)}")
