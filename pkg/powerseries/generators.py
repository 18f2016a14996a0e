"""
Closed-form coefficient generators for every ``SeriesKind``.

``generate`` returns the coefficients c_0 ... c_n of a spec; ``term_ratio`` is the independent recurrence c_n / c_{n-1} used to
cross-check them.
"""
import logging
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence

from numerics.balls import BallReal
from numerics.coefficients import Coefficient, CoefficientKind, is_nonzero, lift, pochhammer
from zetacoeffs.tables import default_table

from .exceptions import InvalidParameter, TruncationTooShort, ZeroCoefficient
from .specs import SeriesKind, SeriesSpec

logger = logging.getLogger(__name__)


def dunkl_weight(n: int, mu) -> Fraction:
    """
    The Dunkl normalizing constant c_{n,mu}.

    c_{2k} = 2^{2k} k! (mu+1)_k and c_{2k+1} = 2^{2k+1} k! (mu+1)_{k+1}, so that
    the Dunkl kernel is sum z^n / c_{n,mu} and mu = -1/2 gives n!.
    """
    if n < 0:
        raise InvalidParameter(f"weight index must be >= 0, got {n}")
    mu = Fraction(mu)
    k, odd = divmod(n, 2)
    if odd:
        return 2 ** (2 * k + 1) * factorial(k) * pochhammer(mu + 1, k + 1)
    return 4 ** k * factorial(k) * pochhammer(mu + 1, k)


def _q_pochhammer(q: Fraction, n: int) -> Fraction:
    """(q; q)_n"""
    result = Fraction(1)
    for i in range(1, n + 1):
        result *= 1 - q ** i
    return result


def _exp(spec, n):
    return Fraction(1, factorial(n))


def _hypergeometric(spec, n):
    denominator = Fraction(factorial(n))
    for p in spec.phi:
        denominator *= pochhammer(p, n)
    return 1 / denominator


def _dunkl(spec, n):
    return 1 / dunkl_weight(n, spec.mu)


def _geometric(spec, n):
    return Fraction(1)


def _bq(spec, n):
    return spec.q ** (n * n)


def _trivial_rational(spec, n):
    k, r = divmod(n, 3)
    if r == 0:
        return Fraction(1)
    if r == 1:
        return -Fraction(1, 2 ** k)
    return Fraction(1, 2 ** k)


def _log_like(spec, n):
    return Fraction(1, n) if n else Fraction(1)


def _partial_theta(spec, n):
    return 1 / spec.q ** (n * n)


def _partial_theta_factorial(spec, n):
    return 1 / (factorial(n) * spec.q ** (n * n))


def _q_exp_small(spec, n):
    return 1 / _q_pochhammer(spec.q, n)


def _q_exp_large(spec, n):
    return spec.q ** (n * (n - 1) // 2) / _q_pochhammer(spec.q, n)


CLOSED_FORMS: Dict[str, Callable[[SeriesSpec, int], Fraction]] = {
    SeriesKind.EXP: _exp,
    SeriesKind.HYPERGEOMETRIC_0FQ: _hypergeometric,
    SeriesKind.DUNKL_E: _dunkl,
    SeriesKind.GEOMETRIC: _geometric,
    SeriesKind.BQ: _bq,
    SeriesKind.TRIVIAL_RATIONAL: _trivial_rational,
    SeriesKind.LOG_LIKE: _log_like,
    SeriesKind.PARTIAL_THETA: _partial_theta,
    SeriesKind.PARTIAL_THETA_FACTORIAL: _partial_theta_factorial,
    SeriesKind.Q_EXP_SMALL: _q_exp_small,
    SeriesKind.Q_EXP_LARGE: _q_exp_large,
}


def term_ratio(spec: SeriesSpec, n: int) -> Optional[Fraction]:
    """
    c_n / c_{n-1} from the term recurrence of the named series, n >= 1.

    Returns None for kinds that have no closed-form recurrence (explicit,
    zeta-derived, shifted and stability series).
    """
    if n < 1:
        raise InvalidParameter(f"term ratios start at n = 1, got {n}")
    kind = spec.kind
    if kind == SeriesKind.EXP:
        ratio = Fraction(1, n)
    elif kind == SeriesKind.HYPERGEOMETRIC_0FQ:
        denominator = Fraction(n)
        for p in spec.phi:
            denominator *= p + n - 1
        ratio = 1 / denominator
    elif kind == SeriesKind.DUNKL_E:
        ratio = 1 / (n + (spec.mu + Fraction(1, 2)) * (1 - (-1) ** n))
    elif kind == SeriesKind.GEOMETRIC:
        ratio = Fraction(1)
    elif kind == SeriesKind.BQ:
        ratio = spec.q ** (2 * n - 1)
    elif kind == SeriesKind.TRIVIAL_RATIONAL:
        k, r = divmod(n, 3)
        if r == 0:
            ratio = Fraction(2) ** (k - 1)
        elif r == 1:
            ratio = -Fraction(1, 2 ** k)
        else:
            ratio = Fraction(-1)
    elif kind == SeriesKind.LOG_LIKE:
        ratio = Fraction(n - 1, n) if n > 1 else Fraction(1)
    elif kind == SeriesKind.PARTIAL_THETA:
        ratio = 1 / spec.q ** (2 * n - 1)
    elif kind == SeriesKind.PARTIAL_THETA_FACTORIAL:
        ratio = 1 / (n * spec.q ** (2 * n - 1))
    elif kind == SeriesKind.Q_EXP_SMALL:
        ratio = 1 / (1 - spec.q ** n)
    elif kind == SeriesKind.Q_EXP_LARGE:
        ratio = spec.q ** (n - 1) / (1 - spec.q ** n)
    else:
        return None
    return ratio


def explicit_coefficients(spec: SeriesSpec, n_max: int) -> List[Coefficient]:
    """Explicit coefficients divided by c_0 and padded with zeros to n_max."""
    head = spec.coeffs[0]
    values = [c / head for c in spec.coeffs[: n_max + 1]]
    values[0] = Fraction(1)
    values.extend(Fraction(0) for _ in range(n_max + 1 - len(values)))
    return values


def shifted_coefficients(
    a: Sequence[Coefficient], c: Sequence[Coefficient], s: int, n_max: int
) -> List[Coefficient]:
    """
    Coefficients of (c_s / a_s) Lambda_C^s A, i.e. (c_s/a_s) a_{n+s} c_n / c_{n+s}.

    Raises:
        TruncationTooShort: when a or c stop before index n_max + s
        ZeroCoefficient: when a_s or one of the needed c_n is not certified nonzero
    """
    if len(a) <= n_max + s or len(c) <= n_max + s:
        raise TruncationTooShort(f"shift of order {s} to degree {n_max} needs {n_max + s} coefficients")
    if not is_nonzero(a[s]):
        raise ZeroCoefficient(f"a_{s} must be nonzero for a shift of order {s}")
    for n in range(n_max + s + 1):
        if not is_nonzero(c[n]):
            raise ZeroCoefficient(f"operator coefficient c_{n} is not certified nonzero")
    head = c[s] / a[s]
    values: List[Coefficient] = [Fraction(1)]
    for n in range(1, n_max + 1):
        values.append(head * a[n + s] * c[n] / c[n + s])
    if isinstance(head, BallReal):
        values[0] = BallReal.from_rational(1, head.bits)
    return values


def stability_coefficients(b: Sequence[Coefficient], n_max: int) -> List[Coefficient]:
    """
    Coefficients of C(z) = sum (b_n / b_{n+1}) z^n / (n+1)!, normalized to C(0) = 1.

    The raw coefficients are multiplied by b_1 / b_0.
    """
    if len(b) < n_max + 2:
        raise TruncationTooShort(f"the stability series to order {n_max} needs b up to {n_max + 1}")
    for n in range(n_max + 2):
        if not is_nonzero(b[n]):
            raise ZeroCoefficient(f"b_{n} is not certified nonzero")
    head = b[1] / b[0]
    values: List[Coefficient] = [Fraction(1)]
    for n in range(1, n_max + 1):
        values.append(head * b[n] / (b[n + 1] * factorial(n + 1)))
    if isinstance(head, BallReal):
        values[0] = BallReal.from_rational(1, head.bits)
    return values


def dilated(values: Sequence[Coefficient], factor: Coefficient) -> List[Coefficient]:
    """c_n -> c_n factor^n; c_0 stays 1."""
    result: List[Coefficient] = [values[0]]
    power: Coefficient = Fraction(1)
    for value in values[1:]:
        power = power * factor
        result.append(value * power)
    return result


def generate(
    spec: SeriesSpec,
    n_max: int,
    bits: int,
    table=None,
) -> List[Coefficient]:
    """
    Coefficients c_0 ... c_{n_max} of ``spec``, dilation included.

    Args:
        spec: Series descriptor
        n_max: Truncation order
        bits: Ball precision used for BALL specs
        table: Optional ZetaCoefficientTable for ZETA_RELATIVE specs

    Returns:
        List of coefficients with c_0 = 1
    """
    kind = spec.kind
    if kind in CLOSED_FORMS:
        closed_form = CLOSED_FORMS[kind]
        values: List[Coefficient] = [closed_form(spec, n) for n in range(n_max + 1)]
    elif kind == SeriesKind.EXPLICIT:
        values = explicit_coefficients(spec, n_max)
    elif kind == SeriesKind.ZETA_RELATIVE:
        values = _zeta_relative(spec, n_max, bits, table)
    elif kind == SeriesKind.SHIFTED:
        a = generate(spec.base, n_max + spec.s, bits, table)
        c = generate(spec.operator, n_max + spec.s, bits, table)
        values = shifted_coefficients(a, c, spec.s, n_max)
    elif kind == SeriesKind.STABILITY:
        b = generate(spec.base, n_max + 1, bits, table)
        values = stability_coefficients(b, n_max)
    else:
        raise InvalidParameter(f"no generator for series kind {kind}")

    if spec.dilation is not None:
        values = dilated(values, spec.dilation)
    if spec.coefficient_kind == CoefficientKind.BALL:
        values = lift(values, bits)
    return values


def _zeta_relative(spec: SeriesSpec, n_max: int, bits: int, table) -> List[Coefficient]:
    # gamma_{n+s} / (gamma_s n!): the normalized s-th derivative of the xi series
    needed = n_max + spec.s
    if table is None or table.max_n < needed:
        table = default_table(needed, bits)
    gamma_s = table.gamma(spec.s)
    values: List[Coefficient] = [BallReal.from_rational(1, gamma_s.bits)]
    for n in range(1, n_max + 1):
        values.append(table.gamma(n + spec.s) / (gamma_s * factorial(n)))
    return values
