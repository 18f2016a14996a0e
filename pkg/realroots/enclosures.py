"""
Ball-path certification.

Sturm sequences are run on ball coefficients with certified signs, doubling
the working precision whenever a sign stays undecided. A Sturm run that
cannot be completed may still be rescued by counting certified sign changes
of p at rational points separating approximate zeros: deg p sign changes
prove that every zero is real and simple.
"""
import logging
from typing import List, Optional, Sequence

import mpmath
from mpmath.libmp import NoConvergence

from numerics.balls import BallReal, Sign, mpf_to_fraction
from numerics.coefficients import Coefficient, lift, sign_of, to_mpmath
from numerics.precision import default_bits, escalation_ladder, max_bits
from operators.polynomials import RealPoly

from .certificates import CertificateMethod, RootCertificate, RootStatus
from .exact import low_order_zeros
from .exceptions import SignUnknown
from .sturm import ball_cauchy_bound, distinct_real_roots, evaluate, sturm_chain

logger = logging.getLogger(__name__)


def inconclusive(degree: int, zero_multiplicity: int, bits: Optional[int], note: str) -> RootCertificate:
    return RootCertificate(
        status=RootStatus.INCONCLUSIVE,
        real_root_count=zero_multiplicity,
        degree_certified=degree,
        zero_multiplicity=zero_multiplicity,
        all_simple_away_from_zero=None,
        precision_used=bits,
        method=CertificateMethod.NONE,
        note=note,
    )


def approximate_real_zeros(poly: Sequence[Coefficient], bits: int) -> Optional[List[mpmath.mpf]]:
    """Sorted real parts of the midpoint polynomial's zeros, or None if some zero looks non-real."""
    with mpmath.workprec(bits):
        descending = [to_mpmath(c, bits) for c in reversed(poly)]
        try:
            roots = mpmath.polyroots(descending, maxsteps=200, extraprec=bits)
        except NoConvergence:
            logger.info("polyroots did not converge at %d bits", bits)
            return None
        tolerance = mpmath.ldexp(1, -bits // 4)
        real = []
        for root in roots:
            root = mpmath.mpc(root)
            if abs(root.imag) > tolerance * max(1, abs(root)):
                return None
            real.append(root.real)
    return sorted(real)


def sign_change_certificate(poly: Sequence[Coefficient], bits: int) -> bool:
    """
    True when poly is certified to have deg poly real simple zeros.

    Separators are rational midpoints between approximate zeros plus the
    Cauchy bound on both sides; every consecutive pair must show a certified
    sign change.
    """
    degree = len(poly) - 1
    zeros = approximate_real_zeros(poly, bits)
    if zeros is None or len(zeros) != degree:
        return False
    bound = ball_cauchy_bound(poly)
    separators = [-bound]
    for left, right in zip(zeros, zeros[1:]):
        separators.append(mpf_to_fraction(mpmath.ldexp(mpmath.fadd(left, right, prec=bits), -1)))
    separators.append(bound)
    if any(a >= b for a, b in zip(separators, separators[1:])):
        return False
    signs = [sign_of(evaluate(poly, x)) for x in separators]
    if any(s in (Sign.ZERO, Sign.UNKNOWN) for s in signs):
        return False
    return all(a != b for a, b in zip(signs, signs[1:]))


def ball_certificate(p: RealPoly, bits: Optional[int] = None) -> RootCertificate:
    """
    Certificate of a polynomial with ball coefficients.

    The zero multiplicity counts exactly-zero low coefficients. Multiplicities
    of other zeros are never decided: a Sturm chain ending in a nonconstant
    polynomial (a possible repeated factor) yields INCONCLUSIVE.
    """
    degree = p.degree
    m = low_order_zeros(p)
    if p.possibly_zero_tail:
        return inconclusive(degree, m, p.bits, "leading coefficients may vanish")
    reduced = list(p.coeffs[m : degree + 1])
    if len(reduced) == 1:
        return RootCertificate(
            status=RootStatus.REAL_ROOTED,
            real_root_count=m,
            degree_certified=degree,
            zero_multiplicity=m,
            all_simple_away_from_zero=True,
            precision_used=p.bits,
            method=CertificateMethod.CONSTANT if degree == 0 else CertificateMethod.STURM,
        )

    start = max(bits or default_bits(), p.bits or 0)
    used = start
    for used in escalation_ladder(start, max(start, max_bits())):
        working = lift(reduced, used)
        try:
            chain = sturm_chain(working)
            count = distinct_real_roots(chain)
        except SignUnknown as exc:
            logger.info("Sturm undecided at %d bits (%s)", used, exc)
            if sign_change_certificate(working, used):
                return _certified(degree, m, used, CertificateMethod.SIGN_CHANGES)
            continue
        if len(chain[-1]) > 1:
            return inconclusive(degree, m, used, "possible repeated factor")
        if m + count == degree:
            return _certified(degree, m, used, CertificateMethod.STURM)
        return RootCertificate(
            status=RootStatus.NOT_REAL_ROOTED,
            real_root_count=m + count,
            degree_certified=degree,
            zero_multiplicity=m,
            all_simple_away_from_zero=True,
            precision_used=used,
            method=CertificateMethod.STURM,
        )
    logger.warning("Real-root count of degree %d polynomial undecided at %d bits", degree, used)
    return inconclusive(degree, m, used, "precision cap reached")


def _certified(degree: int, m: int, bits: int, method: CertificateMethod) -> RootCertificate:
    return RootCertificate(
        status=RootStatus.REAL_ROOTED,
        real_root_count=degree,
        degree_certified=degree,
        zero_multiplicity=m,
        all_simple_away_from_zero=True,
        precision_used=bits,
        method=method,
    )


def widen(p: RealPoly, bits: int) -> RealPoly:
    """Exact polynomial lifted to balls; used to compare the two paths."""
    return RealPoly(tuple(BallReal.from_rational(c, bits) for c in p.exact_coefficients()), p.label)
