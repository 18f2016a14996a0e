"""
Coefficientwise generation of the named families.

Gamma-based families accept a ``ZetaCoefficientTable`` or any sequence of
coefficients standing in for gamma_0, gamma_1, ...; with neither given the
cached default table is used.
"""
import logging
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Union

from mpmath import iv

from numerics.balls import BallReal
from numerics.coefficients import Coefficient, is_nonzero, pochhammer
from numerics.precision import default_bits
from operators.brenke import appell_dunkl_polynomials, brenke_polynomials, jensen_polynomials
from operators.polynomials import RealPoly
from powerseries.series import coefficients
from zetacoeffs.quadrature import interval_precision, interval_to_ball
from zetacoeffs.tables import ZetaCoefficientTable, default_table

from .exceptions import GammaTableTooShort, InvalidParameter, ZeroCoefficient
from .specs import FamilyKind, FamilySpec

logger = logging.getLogger(__name__)

Gammas = Union[ZetaCoefficientTable, Sequence[Coefficient]]


def gamma_values(gammas: Optional[Gammas], order: int, bits: Optional[int] = None) -> List[Coefficient]:
    """
    gamma_0 ... gamma_order.

    Raises:
        GammaTableTooShort: when the table or sequence stops before ``order``
    """
    if gammas is None:
        gammas = default_table(order, bits)
    if isinstance(gammas, ZetaCoefficientTable):
        return [gammas.gamma(n) for n in range(order + 1)]
    if len(gammas) <= order:
        raise GammaTableTooShort(f"gamma_{order} requested, sequence ends at {len(gammas) - 1}")
    return [g if isinstance(g, BallReal) else Fraction(g) for g in gammas[: order + 1]]


def factorial_power(m: int, N: Fraction, bits: Optional[int] = None) -> Coefficient:
    """Gamma(m + 1)^N; exact for integer N, a ball through exp(N log m!) otherwise."""
    N = Fraction(N)
    if N.denominator == 1:
        return Fraction(factorial(m) ** N.numerator)
    bits = bits or default_bits()
    with interval_precision(bits + 32):
        value = iv.exp(iv.mpf(N.numerator) / N.denominator * iv.log(iv.mpf(factorial(m))))
    return interval_to_ball(value, bits)


def _nonzero(value: Coefficient, name: str) -> Coefficient:
    if not is_nonzero(value):
        raise ZeroCoefficient(f"{name} is not certified nonzero")
    return value


def _jensen(g: Sequence[Coefficient], n: int) -> RealPoly:
    return RealPoly(tuple(g[j] * Fraction(1, factorial(n - j) * factorial(j)) for j in range(n + 1)))


def _jensen_shifted(g: Sequence[Coefficient], s: int, n: int) -> RealPoly:
    head = 1 / _nonzero(g[s], f"gamma_{s}")
    return RealPoly(tuple(head * g[s + j] * Fraction(1, factorial(n - j) * factorial(j)) for j in range(n + 1)))


def _qhat(g: Sequence[Coefficient], N: Fraction, n: int, bits: Optional[int]) -> RealPoly:
    return RealPoly(
        tuple(
            g[j] * Fraction(1, factorial(j) * factorial(n - j)) / factorial_power(n + j, N, bits)
            for j in range(n + 1)
        )
    )


def _p_alpha(g: Sequence[Coefficient], alpha: Fraction, s: int, n: int) -> RealPoly:
    head = (-1) ** s / (pochhammer(alpha + 1, s) * _nonzero(g[s], f"gamma_{s}"))
    return RealPoly(
        tuple(
            head * pochhammer(alpha + n - j + 1, s) * Fraction(1, factorial(j) * factorial(n - j)) * g[n - j + s]
            for j in range(n + 1)
        )
    )


def _q_alpha(g: Sequence[Coefficient], alpha: Fraction, s: int, n: int) -> RealPoly:
    head = 1 / _nonzero(g[s], f"gamma_{s}")
    return RealPoly(
        tuple(
            head * (-1) ** (n - j) / (factorial(j) * factorial(n - j) * pochhammer(alpha + 1, n - j)) * g[j + s]
            for j in range(n + 1)
        )
    )


def generate_family(spec: FamilySpec, gammas: Optional[Gammas] = None, bits: Optional[int] = None) -> List[RealPoly]:
    """
    The polynomials of ``spec`` for n = 0 ... n_max.

    Args:
        spec: Family descriptor
        gammas: Coefficient table or stand-in sequence for the gamma-based
            families; a table is also handed to zeta-derived series of
            BRENKE and APPELL_DUNKL families
        bits: Ball precision of generated series and of real-N factorial powers

    Raises:
        GammaTableTooShort: when gammas stop before spec.gamma_order
        InvalidParameter: when the spec parameters are out of range
    """
    kind, n_max = spec.kind, spec.n_max
    table = gammas if isinstance(gammas, ZetaCoefficientTable) else None

    if spec.uses_gamma:
        g = gamma_values(gammas, spec.gamma_order, bits)
        if kind == FamilyKind.JENSEN:
            polys = [_jensen(g, n) for n in range(n_max + 1)]
        elif kind == FamilyKind.JENSEN_SHIFTED:
            polys = [_jensen_shifted(g, spec.s, n) for n in range(n_max + 1)]
        elif kind == FamilyKind.QHAT:
            polys = [_qhat(g, spec.N, n, bits) for n in range(n_max + 1)]
        elif kind == FamilyKind.P_ALPHA:
            polys = [_p_alpha(g, spec.alpha, spec.s, n) for n in range(n_max + 1)]
        else:
            polys = [_q_alpha(g, spec.alpha, spec.s, n) for n in range(n_max + 1)]
    elif kind == FamilyKind.JENSEN:
        polys = jensen_polynomials(coefficients(spec.A, n_max, bits, table), n_max)
    elif kind == FamilyKind.APPELL_DUNKL:
        polys = appell_dunkl_polynomials(coefficients(spec.A, n_max, bits, table), spec.mu, n_max)
    elif kind == FamilyKind.BRENKE:
        A = coefficients(spec.A, n_max, bits, table)
        B = coefficients(spec.B, n_max, bits, table)
        polys = brenke_polynomials(A, B, n_max)
    else:
        raise InvalidParameter(f"no generator for family kind {kind}")

    logger.debug("Generated %s up to n = %d", spec, n_max)
    return [p.with_label(f"{kind.value.lower()}_{n}") for n, p in enumerate(polys)]


def multi_shift_jensen(gammas: Sequence[Coefficient], shifts: Sequence[int], n: int) -> RealPoly:
    """sum_j gamma_j x^j / (j! (n-j)! prod_i (j + l_i)!) for shifts l_1 ... l_N."""
    g = gamma_values(gammas, n)
    values = []
    for j in range(n + 1):
        denominator = factorial(j) * factorial(n - j)
        for l in shifts:
            denominator *= factorial(j + l)
        values.append(g[j] * Fraction(1, denominator))
    return RealPoly(tuple(values))


# ----------------------------------------------------------------------
# Laguerre polynomials
# ----------------------------------------------------------------------


def _check_laguerre(n: int, alpha) -> Fraction:
    alpha = Fraction(alpha)
    if n < 0:
        raise InvalidParameter(f"Laguerre degree must be >= 0, got {n}")
    if alpha <= -1:
        raise InvalidParameter(f"Laguerre parameter must be > -1, got {alpha}")
    return alpha


def laguerre(n: int, alpha) -> RealPoly:
    """L_n^alpha(x) = sum_j (-1)^j (alpha + j + 1)_{n-j} x^j / ((n-j)! j!)."""
    alpha = _check_laguerre(n, alpha)
    return RealPoly(
        tuple(
            (-1) ** j * pochhammer(alpha + j + 1, n - j) / (factorial(n - j) * factorial(j))
            for j in range(n + 1)
        ),
        label=f"L_{n}^{alpha}",
    )


def laguerre_by_recurrence(n: int, alpha) -> RealPoly:
    """(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}."""
    alpha = _check_laguerre(n, alpha)
    x = RealPoly.monomial(1)
    previous, current = RealPoly.constant(1), RealPoly((alpha + 1, Fraction(-1)))
    if n == 0:
        return previous
    for k in range(1, n):
        following = ((2 * k + 1 + alpha) * current - x * current - (k + alpha) * previous).scale(Fraction(1, k + 1))
        previous, current = current, following
    return current
