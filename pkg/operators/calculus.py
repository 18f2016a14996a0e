"""
Linear operators on polynomials: diagonal operators T_theta, the lowering
operator Lambda_B, Upsilon_B, D_alpha and the Dunkl operator.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Optional, Sequence, Tuple

from numerics.balls import Sign
from numerics.coefficients import Coefficient, sign_of
from numerics.precision import escalation_ladder
from powerseries.series import TruncatedSeries, coefficients

from .exceptions import SignUnknown, TruncationTooShort, ZeroDenominatorCoefficient, ZeroTheta
from .polynomials import RealPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagonalOperator:
    """T_theta: x^j -> theta_j x^j, given by a closed-form rule or an explicit list."""

    rule: Optional[Callable[[int], Coefficient]] = None
    values: Tuple[Coefficient, ...] = ()
    label: str = field(default="", compare=False)

    def theta(self, j: int) -> Coefficient:
        if self.rule is not None:
            return self.rule(j)
        if j >= len(self.values):
            raise TruncationTooShort(f"{self.label or 'diagonal operator'} has no multiplier for x^{j}")
        return self.values[j]


def apply_diagonal(T: DiagonalOperator, p: RealPoly) -> RealPoly:
    return RealPoly(tuple(T.theta(j) * c for j, c in enumerate(p.coeffs)))


def identity_operator() -> DiagonalOperator:
    return DiagonalOperator(rule=lambda j: Fraction(1), label="identity")


def theta_shift(l: int) -> DiagonalOperator:
    """theta^[l]: x^j -> x^j / (j + l)!"""
    return DiagonalOperator(rule=lambda j: Fraction(1, factorial(j + l)), label=f"theta^[{l}]")


def t_b(B: TruncatedSeries) -> DiagonalOperator:
    """T_B: x^j -> j! b_j x^j"""
    return DiagonalOperator(values=tuple(factorial(j) * b for j, b in enumerate(B.coeffs)), label="T_B")


def t_b_l(B: TruncatedSeries, l: int) -> DiagonalOperator:
    """T_{B,l} = T_theta^[l] o T_B: x^j -> b_j x^j / (j+1)_l"""
    values = []
    for j, b in enumerate(B.coeffs):
        values.append(b * Fraction(factorial(j), factorial(j + l)))
    return DiagonalOperator(values=tuple(values), label=f"T_B,{l}")


def _certified_series(B: TruncatedSeries, degree: int) -> TruncatedSeries:
    """
    Return B (possibly regenerated at higher precision) with b_0 ... b_degree
    certified nonzero.

    Raises:
        ZeroDenominatorCoefficient: when some b_j is an exact zero
        SignUnknown: when a ball still contains zero at the precision cap
    """
    B.require(degree)

    def undecided(series):
        signs = [sign_of(series[j]) for j in range(degree + 1)]
        if Sign.ZERO in signs:
            j = signs.index(Sign.ZERO)
            raise ZeroDenominatorCoefficient(f"b_{j} = 0")
        return [j for j, sign in enumerate(signs) if sign == Sign.UNKNOWN]

    pending = undecided(B)
    if not pending:
        return B
    for bits in escalation_ladder(2 * (B.bits or 64)):
        logger.info("Escalating %s to %d bits: b_%s undecided", B, bits, pending)
        B = coefficients(B.spec, B.truncation_order, bits=bits)
        pending = undecided(B)
        if not pending:
            return B
    raise SignUnknown(f"coefficients b_{pending} of {B} still contain zero at the precision cap")


def lowering_operator(B: TruncatedSeries, degree: Optional[int] = None) -> DiagonalOperator:
    """theta_0 = 0, theta_j = b_{j-1} / b_j, so that Lambda_B = x^{-1} T_theta."""
    degree = B.truncation_order if degree is None else degree
    B = _certified_series(B, degree)
    values = [Fraction(0)] + [B[j - 1] / B[j] for j in range(1, degree + 1)]
    return DiagonalOperator(values=tuple(values), label="Lambda_B")


def lambda_B(B: TruncatedSeries, p: RealPoly) -> RealPoly:
    """
    Lowering operator x^n -> (b_{n-1} / b_n) x^{n-1}, 1 -> 0.

    Lambda_B p_n = p_{n-1} on every Brenke family associated to B.
    """
    if p.is_zero():
        return RealPoly()
    T = lowering_operator(B, p.length - 1)
    return apply_diagonal(T, p).shift_down()


def upsilon_B(B: TruncatedSeries, theta0: Coefficient, p: RealPoly) -> RealPoly:
    """Upsilon_B(1) = theta0, Upsilon_B(x^j) = b_{j-1} / (j b_j) x^j; d/dx o Upsilon_B = Lambda_B."""
    if sign_of(theta0) == Sign.ZERO:
        raise ZeroTheta("Upsilon_B needs theta_0 != 0")
    if p.is_zero():
        return RealPoly()
    B = _certified_series(B, p.length - 1)
    values = [theta0 * p[0]]
    for j in range(1, p.length):
        values.append(B[j - 1] / (j * B[j]) * p[j])
    return RealPoly(tuple(values))


def d_alpha(alpha, p: RealPoly) -> RealPoly:
    """D_alpha = alpha I + x d/dx"""
    alpha = Fraction(alpha)
    return RealPoly(tuple((alpha + j) * c for j, c in enumerate(p.coeffs)))


def d_alpha_product(alphas: Sequence, p: RealPoly) -> RealPoly:
    """D_{alpha_1} ... D_{alpha_N} p"""
    for alpha in alphas:
        p = d_alpha(alpha, p)
    return p


def dunkl_eigenvalue(n: int, mu) -> Fraction:
    """n + (mu + 1/2)(1 - (-1)^n)"""
    return n + (Fraction(mu) + Fraction(1, 2)) * (1 - (-1) ** n)


def dunkl_operator(mu, p: RealPoly) -> RealPoly:
    """
    f -> f' + (2 mu + 1)/2 (f(x) - f(-x)) / x

    On monomials x^j -> (j + (mu + 1/2)(1 - (-1)^j)) x^{j-1}.
    """
    mu = Fraction(mu)
    return RealPoly(tuple(dunkl_eigenvalue(j, mu) * p[j] for j in range(1, p.length)))
