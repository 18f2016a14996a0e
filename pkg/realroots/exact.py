"""
Exact-path certification: square-free decomposition with sympy, Sturm
counting and bisection isolation over the rationals.
"""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from numerics.coefficients import is_zero
from operators.polynomials import RealPoly

from .certificates import CertificateMethod, Interval, RootCertificate, RootStatus
from .sturm import cauchy_bound, distinct_real_roots, evaluate, roots_in, sturm_chain

logger = logging.getLogger(__name__)

X = sympy.Symbol("x")


def low_order_zeros(p: RealPoly) -> int:
    """Number of certified-zero coefficients below the first one that is not."""
    m = 0
    while m < p.length and is_zero(p[m]):
        m += 1
    return m


def square_free_factors(p: RealPoly) -> List[Tuple[List[Fraction], int]]:
    """[(f_i, k_i)] with p = c * prod f_i^k_i, each f_i square-free and nonconstant."""
    _, factors = p.to_sympy(X).sqf_list()
    result = []
    for factor, multiplicity in factors:
        result.append((RealPoly.from_sympy(factor).exact_coefficients(), multiplicity))
    return result


def square_free_part(p: RealPoly) -> List[Fraction]:
    poly = p.to_sympy(X)
    part = sympy.quo(poly, sympy.gcd(poly, poly.diff(X)))
    return RealPoly.from_sympy(sympy.Poly(part, X, domain=sympy.QQ)).exact_coefficients()


def isolate(poly: Sequence[Fraction]) -> List[Interval]:
    """
    Disjoint isolating intervals of the real zeros of a square-free polynomial.

    Each entry is a half-open interval (lo, hi] holding exactly one zero, or
    (r, r) when the zero r was hit exactly. Sorted increasingly.
    """
    if len(poly) <= 1:
        return []
    chain = sturm_chain(poly)
    bound = cauchy_bound(poly)
    found: List[Interval] = []
    pending = [(-bound, bound, roots_in(chain, -bound, bound))]
    while pending:
        lo, hi, count = pending.pop()
        if count == 0:
            continue
        if count == 1:
            found.append((hi, hi) if evaluate(poly, hi) == 0 else (lo, hi))
            continue
        mid = (lo + hi) / 2
        left = roots_in(chain, lo, mid)
        pending.append((lo, mid, left))
        pending.append((mid, hi, count - left))
    return sorted(found)


def refine(poly: Sequence[Fraction], interval: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval of a square-free polynomial below ``width``."""
    lo, hi = interval
    if lo == hi:
        return interval
    chain = sturm_chain(poly)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if evaluate(poly, mid) == 0:
            return (mid, mid)
        if roots_in(chain, lo, mid):
            hi = mid
        else:
            lo = mid
    if evaluate(poly, hi) == 0:
        return (hi, hi)
    return (lo, hi)


def root_multiplicity(factors: Sequence[Tuple[List[Fraction], int]], interval: Interval) -> int:
    """Multiplicity of the unique root in ``interval`` among the square-free factors."""
    lo, hi = interval
    for factor, multiplicity in factors:
        if lo == hi:
            if evaluate(factor, lo) == 0:
                return multiplicity
        elif roots_in(sturm_chain(factor), lo, hi):
            return multiplicity
    return 0


def exact_certificate(p: RealPoly, isolate_roots: bool = True) -> RootCertificate:
    """Certificate of an exact polynomial; the caller has excluded the zero polynomial."""
    degree = p.degree
    m = low_order_zeros(p)
    if degree == m:
        return RootCertificate(
            status=RootStatus.REAL_ROOTED,
            real_root_count=m,
            degree_certified=degree,
            zero_multiplicity=m,
            all_simple_away_from_zero=True,
            isolating_intervals=((Fraction(0), Fraction(0)),) if m else (),
            multiplicities=(m,) if m else (),
            method=CertificateMethod.CONSTANT if degree == 0 else CertificateMethod.STURM,
            positive_count=0,
            negative_count=0,
        )

    reduced = RealPoly(p.coeffs[m:])
    factors = square_free_factors(reduced)
    count = m
    simple = True
    positive = negative = 0
    for factor, multiplicity in factors:
        chain = sturm_chain(factor)
        distinct = distinct_real_roots(chain)
        count += multiplicity * distinct
        if multiplicity > 1 and distinct:
            simple = False
        # factor(0) != 0 because x^m was divided out
        above = roots_in(chain, Fraction(0), cauchy_bound(factor))
        positive += multiplicity * above
        negative += multiplicity * (distinct - above)

    intervals: List[Interval] = []
    multiplicities: List[int] = []
    if isolate_roots:
        for interval in isolate(square_free_part(reduced)):
            intervals.append(interval)
            multiplicities.append(root_multiplicity(factors, interval))
        if m:
            intervals.append((Fraction(0), Fraction(0)))
            multiplicities.append(m)
        order = sorted(range(len(intervals)), key=lambda i: intervals[i])
        intervals = [intervals[i] for i in order]
        multiplicities = [multiplicities[i] for i in order]

    status = RootStatus.REAL_ROOTED if count == degree else RootStatus.NOT_REAL_ROOTED
    return RootCertificate(
        status=status,
        real_root_count=count,
        degree_certified=degree,
        zero_multiplicity=m,
        all_simple_away_from_zero=simple,
        isolating_intervals=tuple(intervals),
        multiplicities=tuple(multiplicities),
        method=CertificateMethod.STURM,
        positive_count=positive,
        negative_count=negative,
    )
