"""
Generation of Brenke, Jensen and Appell-Dunkl polynomials.

Brenke polynomials are generated in ascending powers,
p_n(x) = sum_j a_{n-j} b_j x^j, so that reversing p_n with respect to n is a
pure index flip.
"""
import logging
from fractions import Fraction
from math import factorial
from typing import List, Sequence

from numerics.coefficients import Coefficient
from powerseries.generators import dunkl_weight, shifted_coefficients
from powerseries.series import TruncatedSeries
from powerseries.specs import shifted

from .exceptions import DegreeExceedsN, InvalidParameter, TruncationTooShort
from .polynomials import RealPoly

logger = logging.getLogger(__name__)


def brenke_polynomial(A: TruncatedSeries, B: TruncatedSeries, n: int) -> RealPoly:
    """The single Brenke polynomial p_n generated by A and associated to B."""
    A.require(n)
    B.require(n)
    return RealPoly(tuple(A[n - j] * B[j] for j in range(n + 1)), label=f"p_{n}")


def brenke_polynomials(A: TruncatedSeries, B: TruncatedSeries, n_max: int) -> List[RealPoly]:
    """
    Brenke polynomials p_0 ... p_{n_max} of A(z) B(xz) = sum p_n(x) z^n.

    Args:
        A: Generating series, truncated at order >= n_max
        B: Associated series, truncated at order >= n_max
        n_max: Largest index

    Returns:
        List of RealPoly, p_n of degree n exactly when b_n != 0

    Raises:
        TruncationTooShort: when either series stops before n_max
    """
    if n_max < 0:
        raise InvalidParameter(f"n_max must be >= 0, got {n_max}")
    A.require(n_max)
    B.require(n_max)
    return [brenke_polynomial(A, B, n) for n in range(n_max + 1)]


def reverse(p: RealPoly, n: int) -> RealPoly:
    """x^n p(1/x); coefficient j of the result is coefficient n - j of p."""
    if p.length - 1 > n:
        raise DegreeExceedsN(f"cannot reverse a polynomial with {p.length} coefficients with respect to n = {n}")
    return RealPoly(tuple(p[n - j] for j in range(n + 1)))


def jensen_polynomials(A: TruncatedSeries, n_max: int) -> List[RealPoly]:
    """
    Jensen polynomials q_n(z) = sum_j a_j z^j / (n - j)! of the series A.

    They are the reversed Appell polynomials of A.
    """
    A.require(n_max)
    return [
        RealPoly(tuple(A[j] * Fraction(1, factorial(n - j)) for j in range(n + 1)), label=f"q_{n}")
        for n in range(n_max + 1)
    ]


def appell_dunkl_polynomials(A: TruncatedSeries, mu, n_max: int) -> List[RealPoly]:
    """
    Renormalized Appell-Dunkl polynomials p_{n,mu}(x) = sum_j a_{n-j} (c_{n,mu} / c_{j,mu}) x^j.

    With a_0 = 1 they are monic of degree n.
    """
    mu = Fraction(mu)
    A.require(n_max)
    weights = [dunkl_weight(n, mu) for n in range(n_max + 1)]
    return [
        RealPoly(tuple(A[n - j] * (weights[n] / weights[j]) for j in range(n + 1)), label=f"p_{n},mu")
        for n in range(n_max + 1)
    ]


def lambda_on_series(C: Sequence[Coefficient], a: Sequence[Coefficient]) -> List[Coefficient]:
    """
    Lambda_C applied to the series with coefficients ``a``: a_{n+1} c_n / c_{n+1}.

    The result is one coefficient shorter than ``a`` and is not normalized.
    """
    if len(C) < len(a):
        raise TruncationTooShort("the operator series is shorter than its argument")
    return [a[n + 1] * C[n] / C[n + 1] for n in range(len(a) - 1)]


def shifted_generator(A: TruncatedSeries, C: TruncatedSeries, s: int) -> TruncatedSeries:
    """
    The normalized series (c_s / a_s) Lambda_C^s A.

    Its coefficient n is (c_s / a_s) a_{n+s} c_n / c_{n+s}; the result is
    truncated at A's order minus s.
    """
    if s < 0:
        raise InvalidParameter(f"shift order must be >= 0, got {s}")
    n_max = A.truncation_order - s
    if n_max < 0:
        raise TruncationTooShort(f"A truncated at {A.truncation_order} cannot be shifted {s} times")
    C.require(n_max + s)
    values = shifted_coefficients(A.coeffs, C.coeffs, s, n_max)
    return TruncatedSeries(shifted(A.spec, C.spec, s), tuple(values))
