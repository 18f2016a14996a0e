"""
Appell-Dunkl experiments: the cubic discriminant of (z+1)^3 and the even split.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Dict, Iterable, Optional, Tuple

from numerics.balls import Sign
from numerics.coefficients import coefficient_to_json, is_zero, rational_to_string, sign_of
from operators.brenke import appell_dunkl_polynomials, brenke_polynomials
from operators.polynomials import RealPoly
from powerseries.generators import dunkl_weight
from powerseries.series import TruncatedSeries, coefficients
from powerseries.specs import explicit, hypergeometric_0fq
from realroots.certificates import RootStatus
from realroots.counting import count_real_roots
from realroots.discriminants import discriminant

from .exceptions import InvalidParameter, NotEvenSeries

logger = logging.getLogger(__name__)


def _check_mu(mu) -> Fraction:
    mu = Fraction(mu)
    if mu.denominator == 1 and mu <= -1:
        raise InvalidParameter(f"mu must not be a negative integer, got {mu}")
    return mu


# ----------------------------------------------------------------------
# Discriminant of r_n
# ----------------------------------------------------------------------


def cube_generator(n_max: int) -> TruncatedSeries:
    return coefficients(explicit([comb(3, k) for k in range(4)], label="(z+1)^3"), n_max)


def cubic_factor(mu, n: int) -> RealPoly:
    """r_n = x^3 + 3 c_n/c_{n-1} x^2 + 3 c_n/c_{n-2} x + c_n/c_{n-3}, with p_n = x^{n-3} r_n."""
    mu = _check_mu(mu)
    if n < 3:
        raise InvalidParameter(f"r_n is defined for n >= 3, got {n}")
    c = [dunkl_weight(k, mu) for k in range(n - 3, n + 1)]
    return RealPoly((c[3] / c[0], 3 * c[3] / c[1], 3 * c[3] / c[2], Fraction(1)), label=f"r_{n}")


def closed_form_discriminant(mu, n: int) -> Fraction:
    """
    Delta(r_n) in closed form:

        n even: -2^4 3^3 n^2 (mu + n/2) (2 n mu^2 + (2n + 1) mu + n/2)
        n odd:  -2^5 3^3 (n - 1) (mu + (n+1)/2)^2 (2 mu (mu + 1) (2 mu + n + 1) + (n - 1)/2)
    """
    mu = Fraction(mu)
    if n % 2 == 0:
        return -(2**4) * 3**3 * n**2 * (mu + Fraction(n, 2)) * (2 * n * mu**2 + (2 * n + 1) * mu + Fraction(n, 2))
    return (
        -(2**5) * 3**3 * (n - 1) * (mu + Fraction(n + 1, 2)) ** 2
        * (2 * mu * (mu + 1) * (2 * mu + n + 1) + Fraction(n - 1, 2))
    )


def discriminant_limit(mu) -> Fraction:
    """lim Delta(r_n) / n^4 = -2^2 3^3 (2 mu + 1)^2"""
    mu = Fraction(mu)
    return -108 * (2 * mu + 1) ** 2


@dataclass(frozen=True)
class DiscriminantRow:
    n: int
    resultant: Fraction
    closed_form: Fraction
    status: RootStatus

    @property
    def agrees(self) -> bool:
        return self.resultant == self.closed_form

    @property
    def normalized(self) -> Fraction:
        return self.closed_form / self.n**4

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "resultant": rational_to_string(self.resultant),
            "closed_form": rational_to_string(self.closed_form),
            "agrees": self.agrees,
            "normalized": rational_to_string(self.normalized),
            "status": self.status.value,
        }


@dataclass(frozen=True)
class DunklDiscriminantReport:
    mu: Fraction
    rows: Tuple[DiscriminantRow, ...]

    @property
    def limit(self) -> Fraction:
        return discriminant_limit(self.mu)

    @property
    def all_agree(self) -> bool:
        return all(row.agrees for row in self.rows)

    @property
    def not_real_rooted_at(self) -> Tuple[int, ...]:
        return tuple(row.n for row in self.rows if row.status == RootStatus.NOT_REAL_ROOTED)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mu": rational_to_string(self.mu),
            "limit": rational_to_string(self.limit),
            "all_agree": self.all_agree,
            "not_real_rooted_at": list(self.not_real_rooted_at),
            "rows": [row.to_dict() for row in self.rows],
        }


def dunkl_discriminant_check(mu, n_range: Iterable[int]) -> DunklDiscriminantReport:
    """
    Delta(r_n) from the resultant of the generated r_n and from the closed forms.

    r_n is read off the Appell-Dunkl polynomial p_n of (z+1)^3, so the check
    also covers the generator. The status column certifies r_n itself; a
    cubic with negative discriminant has two non-real zeros, and then so has p_n.
    """
    mu = _check_mu(mu)
    indices = sorted(n_range)
    if not indices or indices[0] < 3:
        raise InvalidParameter("the discriminant check needs indices n >= 3")
    family = appell_dunkl_polynomials(cube_generator(indices[-1]), mu, indices[-1])
    rows = []
    for n in indices:
        r = RealPoly(family[n].coeffs[n - 3:], label=f"r_{n}")
        rows.append(
            DiscriminantRow(n, discriminant(r), closed_form_discriminant(mu, n), count_real_roots(r, isolate=False).status)
        )
    report = DunklDiscriminantReport(mu, tuple(rows))
    if not report.all_agree:
        logger.error("Discriminant closed form disagrees with the resultant for mu = %s", mu)
    return report


# ----------------------------------------------------------------------
# Even generators
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SplitRow:
    n: int
    matches: bool
    # real-rootedness of the q polynomial behind p_n, and its negative zeros
    q_status: RootStatus
    q_negative_zeros: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "matches": self.matches,
            "q_status": self.q_status.value,
            "q_negative_zeros": self.q_negative_zeros,
        }


@dataclass(frozen=True)
class DunklSplitReport:
    mu: Fraction
    rows: Tuple[SplitRow, ...]

    @property
    def all_match(self) -> bool:
        return all(row.matches for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mu": rational_to_string(self.mu),
            "all_match": self.all_match,
            "rows": [row.to_dict() for row in self.rows],
        }


def even_part(A: TruncatedSeries) -> TruncatedSeries:
    """
    The series A(sqrt z) of an even A.

    Raises:
        NotEvenSeries: when an odd coefficient is not certified zero
    """
    for n in range(1, A.truncation_order + 1, 2):
        if not is_zero(A[n]):
            raise NotEvenSeries(f"coefficient a_{n} = {coefficient_to_json(A[n])} of {A} is not zero")
    values = [A[n] for n in range(0, A.truncation_order + 1, 2)]
    return TruncatedSeries(explicit(values, label=f"{A}(sqrt z)"), tuple(values))


def _agree(p: RealPoly, q: RealPoly) -> bool:
    return all(sign_of(c) in (Sign.ZERO, Sign.UNKNOWN) for c in (p - q).coeffs)


def even_A_dunkl_split(A: TruncatedSeries, mu, n_max: int) -> DunklSplitReport:
    """
    For even A the Appell-Dunkl polynomials split as

        p_{2m}(x)   = c_{2m} q_{m,mu}((x/2)^2)
        p_{2m+1}(x) = c_{2m+1} x / (2 (mu + 1)) q_{m,mu+1}((x/2)^2)

    with q_{m,nu} the Brenke polynomials of A(sqrt z) and 0F1(;1+nu;z).
    Each identity is checked coefficientwise.
    """
    mu = Fraction(mu)
    if mu <= -1:
        raise InvalidParameter(f"the even split needs mu > -1, got {mu}")
    A.require(n_max)
    half = n_max // 2
    even = even_part(A)
    quarter = Fraction(1, 4)
    families = {
        nu: brenke_polynomials(even, coefficients(hypergeometric_0fq([1 + nu]), half), half)
        for nu in (mu, mu + 1)
    }
    dunkl = appell_dunkl_polynomials(A, mu, n_max)
    rows = []
    for n in range(n_max + 1):
        m, odd = divmod(n, 2)
        q = families[mu + 1 if odd else mu][m]
        rhs = q.compose_scaled_square(quarter).scale(dunkl_weight(n, mu))
        if odd:
            rhs = rhs * RealPoly((Fraction(0), 1 / (2 * (mu + 1))))
        certificate = count_real_roots(q, isolate=False) if not q.is_zero() else None
        rows.append(
            SplitRow(
                n,
                _agree(dunkl[n], rhs),
                certificate.status if certificate else RootStatus.INCONCLUSIVE,
                certificate.negative_count if certificate else None,
            )
        )
    return DunklSplitReport(mu, tuple(rows))
