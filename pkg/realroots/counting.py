"""Entry points of the certifier: dispatch on the coefficient kind."""
import logging
from typing import Optional, Tuple

from operators.polynomials import RealPoly

from .certificates import RootCertificate
from .enclosures import ball_certificate, inconclusive
from .exact import exact_certificate, low_order_zeros
from .exceptions import ZeroPolynomial

logger = logging.getLogger(__name__)


def count_real_roots(p: RealPoly, bits: Optional[int] = None, isolate: bool = True) -> RootCertificate:
    """
    Certified number of real zeros of p, counted with multiplicity.

    Args:
        p: Polynomial with exact or ball coefficients
        bits: Starting precision of the ball path
        isolate: Compute isolating intervals on the exact path

    Returns:
        RootCertificate; INCONCLUSIVE only for ball coefficients

    Raises:
        ZeroPolynomial: when p is certified identically zero
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot count the zeros of the zero polynomial")
    if p.is_exact:
        return exact_certificate(p, isolate_roots=isolate)
    if p.degree < 0:
        return inconclusive(-1, 0, p.bits, "no coefficient is certified nonzero")
    return ball_certificate(p, bits)


def zero_multiplicity(p: RealPoly) -> int:
    """Largest m such that x^m divides p (exact) or p_0 ... p_{m-1} are exact zeros (balls)."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no zero multiplicity")
    return low_order_zeros(p)


def sign_counts(p: RealPoly) -> Tuple[int, int]:
    """(positive zeros, negative zeros) with multiplicity; exact path."""
    certificate = count_real_roots(p, isolate=False)
    return certificate.positive_count, certificate.negative_count


def is_real_rooted(p: RealPoly, bits: Optional[int] = None) -> bool:
    return count_real_roots(p, bits, isolate=False).is_real_rooted
