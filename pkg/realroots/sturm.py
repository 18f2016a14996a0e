"""
Sturm sequences over either coefficient kind.

Polynomials are ascending coefficient lists. Every remainder is scaled by a
positive factor so that its leading coefficient is exactly +1 or -1; on the
ball path any leading coefficient whose sign is UNKNOWN raises SignUnknown.
"""
from fractions import Fraction
from typing import List, Sequence

from numerics.balls import BallReal, Sign
from numerics.coefficients import Coefficient, sign_of

from .exceptions import SignUnknown

Coeffs = List[Coefficient]

ONE = Fraction(1)


def strip(poly: Sequence[Coefficient]) -> Coeffs:
    """Drop certified-zero top coefficients; an undecided top coefficient raises SignUnknown."""
    values = list(poly)
    while values:
        sign = sign_of(values[-1])
        if sign == Sign.ZERO:
            values.pop()
        elif sign == Sign.UNKNOWN:
            raise SignUnknown("cannot certify the degree of a Sturm remainder")
        else:
            break
    return values


def derivative(poly: Sequence[Coefficient]) -> Coeffs:
    return [j * poly[j] for j in range(1, len(poly))]


def evaluate(poly: Sequence[Coefficient], x) -> Coefficient:
    total: Coefficient = Fraction(0)
    for c in reversed(poly):
        total = total * x + c
    return total


def normalize_leading(poly: Sequence[Coefficient]) -> Coeffs:
    """Divide by |leading coefficient|; the top becomes exactly +1 or -1."""
    values = strip(poly)
    if not values:
        return values
    lead = values[-1]
    positive = sign_of(lead) == Sign.POSITIVE
    factor = lead if positive else -lead
    scaled = [c / factor for c in values[:-1]]
    return scaled + [ONE if positive else -ONE]


def remainder(numerator: Sequence[Coefficient], denominator: Sequence[Coefficient]) -> Coeffs:
    """Remainder of polynomial long division; the divisor's leading coefficient is certified nonzero."""
    num = list(numerator)
    den = strip(denominator)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    d = len(den) - 1
    lead = den[-1]
    for top in range(len(num) - 1, d - 1, -1):
        factor = num[top] / lead
        shift = top - d
        for j in range(d):
            num[shift + j] = num[shift + j] - factor * den[j]
        num[top] = Fraction(0)
    return num[:d] if d > 0 else []


def sturm_chain(poly: Sequence[Coefficient]) -> List[Coeffs]:
    """
    Sturm sequence f_0 = f, f_1 = f', f_{i+1} = -rem(f_{i-1}, f_i).

    The chain stops at the first remainder that is certified zero. On the
    ball path a remainder counts as zero only when every coefficient is an
    exact zero.

    Raises:
        SignUnknown: when the degree of some remainder cannot be certified
    """
    first = normalize_leading(poly)
    chain = [first]
    current = normalize_leading(derivative(first))
    previous = first
    while current:
        chain.append(current)
        rem = remainder(previous, current)
        previous, current = current, normalize_leading([-c for c in rem])
    return chain


def sign_value(value: Coefficient) -> int:
    sign = sign_of(value)
    if sign == Sign.UNKNOWN:
        raise SignUnknown(f"sign of {value!r} is undecided")
    return {Sign.POSITIVE: 1, Sign.NEGATIVE: -1, Sign.ZERO: 0}[sign]


def variations(signs: Sequence[int]) -> int:
    """Number of sign changes, zeros ignored."""
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def signs_at_infinity(chain: Sequence[Coeffs], positive: bool) -> List[int]:
    signs = []
    for poly in chain:
        lead = sign_value(poly[-1])
        degree = len(poly) - 1
        signs.append(lead if positive or degree % 2 == 0 else -lead)
    return signs


def signs_at(chain: Sequence[Coeffs], x) -> List[int]:
    return [sign_value(evaluate(poly, x)) for poly in chain]


def distinct_real_roots(chain: Sequence[Coeffs]) -> int:
    """V(-inf) - V(+inf): distinct real zeros of chain[0]."""
    return variations(signs_at_infinity(chain, False)) - variations(signs_at_infinity(chain, True))


def roots_in(chain: Sequence[Coeffs], lo, hi) -> int:
    """Distinct zeros of chain[0] in the half-open interval (lo, hi]."""
    return variations(signs_at(chain, lo)) - variations(signs_at(chain, hi))


def cauchy_bound(poly: Sequence[Fraction]) -> Fraction:
    """1 + max |p_j / p_d|: every real zero lies in (-bound, bound)."""
    values = strip(poly)
    lead = abs(values[-1])
    return 1 + max((abs(c) / lead for c in values[:-1]), default=Fraction(0))


def ball_cauchy_bound(poly: Sequence[Coefficient]) -> Fraction:
    """Rational upper bound of the Cauchy bound of a polynomial with ball coefficients."""
    values = strip(poly)
    lead = values[-1]
    if isinstance(lead, BallReal):
        lead_low = min(abs(x) for x in lead.exact_bounds())
    else:
        lead_low = abs(Fraction(lead))
    largest = Fraction(0)
    for c in values[:-1]:
        top = max(abs(x) for x in c.exact_bounds()) if isinstance(c, BallReal) else abs(Fraction(c))
        largest = max(largest, top)
    return 1 + largest / lead_low
