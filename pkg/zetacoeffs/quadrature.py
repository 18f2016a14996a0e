"""
Certified moments of the theta kernel

    Phi(u) = 2 sum_{n>=1} (2 n^4 pi^2 e^{9u/2} - 3 n^2 pi e^{5u/2}) exp(-n^2 pi e^{2u})

with M_k = 2 int_0^inf Phi(u) u^k du, so that xi(1/2) = M_0 and
xi^(2n)(1/2) = M_2n.

The range [0, cut] is split into subintervals of width h. On each one the
integrand is replaced by its Taylor polynomial at the midpoint and the
remainder is bounded by the next Taylor coefficient enclosed over the whole
subinterval. Truncation of the n-series and of the u-range are covered by
closed-form majorants. Everything runs in mpmath interval arithmetic, so the
returned balls are true enclosures.
"""
import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
from mpmath import iv

from numerics.balls import BallReal
from numerics.coefficients import rational_to_string
from numerics.precision import default_bits, default_jobs, setting

from .exceptions import InvalidParameter, PrecisionExhausted, TailBoundFailure

logger = logging.getLogger(__name__)

RawInterval = Tuple[tuple, tuple]


@dataclass(frozen=True)
class QuadratureParams:
    """
    Knobs of the moment quadrature.

    ``order`` (Taylor order) and ``terms`` (Phi-series truncation K) are
    derived from the precision when left at 0; see ``resolved``.
    """

    cutoff: Fraction = Fraction(6)
    step: Fraction = Fraction(1, 32)
    order: int = 0
    terms: int = 0
    guard_bits: int = 32

    def __post_init__(self):
        if self.cutoff <= 0 or self.step <= 0:
            raise InvalidParameter("quadrature cutoff and step must be positive")
        if self.order < 0 or self.terms < 0 or self.guard_bits < 0:
            raise InvalidParameter("quadrature order, terms and guard bits must be non-negative")

    @classmethod
    def from_settings(cls) -> "QuadratureParams":
        return cls(
            cutoff=Fraction(setting("BRENKE_QUADRATURE_CUTOFF", "6")),
            step=Fraction(setting("BRENKE_QUADRATURE_STEP", "1/32")),
            order=int(setting("BRENKE_QUADRATURE_ORDER", 0)),
        )

    def resolved(self, bits: int) -> "QuadratureParams":
        work = bits + self.guard_bits
        order = self.order or max(12, bits // 4)
        terms = self.terms or math.isqrt(int(work * 0.7 / math.pi)) + 2
        return replace(self, order=order, terms=terms)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "U": rational_to_string(self.cutoff),
            "step": rational_to_string(self.step),
            "order": self.order,
            "K": self.terms,
            "guard_bits": self.guard_bits,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuadratureParams":
        return cls(
            cutoff=Fraction(data["U"]),
            step=Fraction(data["step"]),
            order=int(data["order"]),
            terms=int(data["K"]),
            guard_bits=int(data["guard_bits"]),
        )


# ----------------------------------------------------------------------
# Interval helpers
# ----------------------------------------------------------------------


@contextmanager
def interval_precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _rational(q: Fraction):
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


def upper_abs(x) -> mpmath.mpf:
    lo, hi = x._mpi_
    return max(abs(mpmath.mp.make_mpf(lo)), abs(mpmath.mp.make_mpf(hi)))


def _plus_minus(bound: mpmath.mpf):
    return iv.mpf((-bound, bound))


def interval_to_ball(x, bits: int) -> BallReal:
    lo, hi = (mpmath.mp.make_mpf(end) for end in x._mpi_)
    if not (mpmath.isfinite(lo) and mpmath.isfinite(hi)):
        raise PrecisionExhausted("interval enclosure diverged")
    return BallReal.from_interval(lo, hi, bits)


def ball_to_interval(ball: BallReal):
    return iv.mpf((ball.lower(), ball.upper()))


# ----------------------------------------------------------------------
# Taylor arithmetic on lists of intervals
# ----------------------------------------------------------------------


def _exp_affine(rate, center, length: int) -> list:
    """Taylor coefficients in t of exp(rate * (center + t))."""
    value = iv.exp(rate * center)
    coeffs = []
    for j in range(length):
        coeffs.append(value)
        value = value * rate / (j + 1)
    return coeffs


def _exp_series(s: Sequence) -> list:
    """exp of a Taylor series: e_0 = exp(s_0), k e_k = sum_{j=1..k} j s_j e_{k-j}."""
    e = [iv.exp(s[0])]
    for k in range(1, len(s)):
        total = iv.mpf(0)
        for j in range(1, k + 1):
            total += j * s[j] * e[k - j]
        e.append(total / k)
    return e


def _mul(a: Sequence, b: Sequence) -> list:
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(len(a))]


def phi_series(center, length: int, terms: int) -> list:
    """Taylor coefficients of the first ``terms`` summands of Phi at ``center`` (a point or an interval)."""
    pi = iv.pi
    w = _exp_affine(2, center, length)
    s4 = [iv.mpf(0)] * length
    s2 = [iv.mpf(0)] * length
    for n in range(1, terms + 1):
        e_n = _exp_series([-(n * n) * pi * c for c in w])
        for j in range(length):
            s4[j] += n**4 * e_n[j]
            s2[j] += n**2 * e_n[j]
    inner = [2 * pi * pi * x - 3 * pi * y for x, y in zip(_mul(w, s4), s2)]
    return [2 * c for c in _mul(_exp_affine(iv.mpf(5) / 2, center, length), inner)]


# ----------------------------------------------------------------------
# Majorants
# ----------------------------------------------------------------------


def check_series_ratio(m: int) -> None:
    """
    Certify that summands n >= m of Phi shrink at least by half from n to n + 1.

    The ratio is largest at u = 0, where it is ((n+1)/n)^4 exp(-(2n+1) pi).
    """
    if m < 2:
        raise TailBoundFailure("the Phi-series majorant needs K >= 1")
    ratio = (iv.mpf(m + 1) / m) ** 4 * iv.exp(-(2 * m + 1) * iv.pi)
    if not upper_abs(ratio) <= mpmath.mpf(0.5):
        raise TailBoundFailure(f"summand ratio at n = {m} is not certified below 1/2")


def series_tail(m: int, u):
    """
    Bound of sum_{n>=m} |summand_n(v)| for every v >= u >= 0.

    Twice the first omitted summand (geometric majorant), evaluated at the
    left end because each summand's envelope decreases in u.
    """
    check_series_ratio(m)
    pi = iv.pi
    envelope = 2 * m**4 * pi * pi * iv.exp(iv.mpf(9) / 2 * u) + 3 * m * m * pi * iv.exp(iv.mpf(5) / 2 * u)
    return 4 * envelope * iv.exp(-(m * m) * pi * iv.exp(2 * u))


def cutoff_tail(cut: Fraction, k: int):
    """
    Bound of int_cut^inf |Phi(u)| u^k du.

    Uses |Phi(u)| <= 16 pi^2 e^{9u/2} exp(-pi e^{2u}) and
    e^{2u} >= e^{2 cut} (1 + 2 (u - cut)).
    """
    U = _rational(cut)
    pi = iv.pi
    grow = iv.exp(2 * U)
    rate = 2 * pi * grow - iv.mpf(9) / 2
    front = 16 * pi * pi * iv.exp(-pi * grow) * iv.exp(iv.mpf(9) / 2 * U)
    total = iv.mpf(0)
    for i in range(k + 1):
        total += math.comb(k, i) * U ** (k - i) * math.factorial(i) / rate ** (i + 1)
    return front * total


def effective_cutoff(params: QuadratureParams, k_max: int, work: int) -> Fraction:
    """Smallest grid point in [1, U] beyond which the u-tail is negligible at ``work`` bits."""
    threshold = mpmath.ldexp(1, -work)
    j = math.ceil(1 / params.step)
    last = math.ceil(params.cutoff / params.step)
    while j < last:
        if upper_abs(cutoff_tail(j * params.step, k_max)) <= threshold:
            return j * params.step
        j += 1
    return last * params.step


# ----------------------------------------------------------------------
# Moments
# ----------------------------------------------------------------------


def _truncation(a, b, step, terms: int, k_max: int, work: int) -> Tuple[int, mpmath.mpf]:
    """Summands kept on [a, b] and the bound of the omitted ones' contribution to int u^k."""
    threshold = mpmath.ldexp(1, -work)
    scale = _rational(step) * b**k_max
    for kept in range(1, terms + 1):
        bound = upper_abs(series_tail(kept + 1, a) * scale)
        if bound <= threshold or kept == terms:
            return kept, upper_abs(series_tail(kept + 1, a))
    raise AssertionError("unreachable")


def _subinterval_task(task) -> List[RawInterval]:
    index, step, order, terms, orders, work = task
    with interval_precision(work):
        return [x._mpi_ for x in subinterval_moments(index, step, order, terms, orders, work)]


def subinterval_moments(index: int, step: Fraction, order: int, terms: int, orders: Sequence[int], work: int) -> list:
    """Enclosures of int_{a}^{a+h} Phi(u) u^k du for every k in ``orders``."""
    k_max = max(orders)
    a, b = _rational(index * step), _rational((index + 1) * step)
    center = _rational(index * step + step / 2)
    r = _rational(step / 2)
    kept, tail = _truncation(a, b, step, terms, k_max, work)

    point = phi_series(center, order + 1, kept)
    remainder = phi_series(iv.mpf((a, b)), order + 2, kept)[order + 1]

    # T_p = int_{-r}^{r} t^p dt
    T = [2 * r ** (p + 1) / (p + 1) if p % 2 == 0 else None for p in range(k_max + order + 1)]
    G = []
    for i in range(k_max + 1):
        G.append(sum(point[j] * T[i + j] for j in range(order + 1) if (i + j) % 2 == 0))
    powers = [iv.mpf(1)]
    for _ in range(k_max):
        powers.append(powers[-1] * center)

    taylor_error = iv.mpf(upper_abs(remainder)) * 2 * r ** (order + 2) / (order + 2)
    omitted = iv.mpf(tail) * _rational(step)
    results = []
    for k in orders:
        value = sum(math.comb(k, i) * powers[k - i] * G[i] for i in range(k + 1))
        error = upper_abs((taylor_error + omitted) * b**k)
        results.append(value + _plus_minus(error))
    return results


def moment_intervals(
    orders: Sequence[int],
    params: Optional[QuadratureParams] = None,
    bits: Optional[int] = None,
    jobs: Optional[int] = None,
) -> list:
    """
    Interval enclosures of M_k = 2 int_0^inf Phi(u) u^k du for k in ``orders``.

    The intervals carry ``bits`` plus the guard bits of precision.
    """
    bits = bits or default_bits()
    params = (params or QuadratureParams.from_settings()).resolved(bits)
    jobs = jobs or default_jobs()
    if not orders or min(orders) < 0:
        raise InvalidParameter("moment orders must be non-negative")
    work = bits + params.guard_bits
    with interval_precision(work):
        cut = effective_cutoff(params, max(orders), work)
    count = int(cut / params.step)
    logger.info(
        "Phi moments k <= %d: %d subintervals up to u = %s, Taylor order %d, K = %d, %d bits",
        max(orders),
        count,
        cut,
        params.order,
        params.terms,
        work,
    )
    tasks = [(i, params.step, params.order, params.terms, tuple(orders), work) for i in range(count)]
    if jobs > 1:
        with Pool(jobs) as pool:
            pieces = pool.map(_subinterval_task, tasks)
    else:
        pieces = [_subinterval_task(task) for task in tasks]

    with interval_precision(work):
        totals = [iv.mpf(0) for _ in orders]
        for piece in pieces:
            for idx, raw in enumerate(piece):
                totals[idx] += iv.make_mpf(raw)
        return [2 * (total + _plus_minus(upper_abs(cutoff_tail(cut, k)))) for total, k in zip(totals, orders)]


def phi_moments(
    k_max: int,
    params: Optional[QuadratureParams] = None,
    bits: Optional[int] = None,
    jobs: Optional[int] = None,
) -> List[BallReal]:
    """Balls enclosing M_0 ... M_{k_max}."""
    bits = bits or default_bits()
    return [interval_to_ball(x, bits) for x in moment_intervals(range(k_max + 1), params, bits, jobs)]


def xi_even_derivative_moment(n: int, params: Optional[QuadratureParams] = None, bits: Optional[int] = None) -> BallReal:
    """2 int_0^inf Phi(u) u^{2n} du, which equals xi^(2n)(1/2)."""
    if n < 0:
        raise InvalidParameter("n must be non-negative")
    bits = bits or default_bits()
    return interval_to_ball(moment_intervals([2 * n], params, bits)[0], bits)


def phi(u: Union[BallReal, Fraction, int], terms: Optional[int] = None, bits: Optional[int] = None) -> BallReal:
    """
    Enclosure of Phi(u) for u >= 0 from K summands plus the tail majorant.

    Raises:
        InvalidParameter: when u may be negative
        TailBoundFailure: when the tail majorant cannot be certified (K < 1)
    """
    bits = bits or default_bits()
    params = QuadratureParams(terms=terms or 0).resolved(bits)
    with interval_precision(bits + params.guard_bits):
        x = ball_to_interval(u) if isinstance(u, BallReal) else _rational(Fraction(u))
        if x.a < 0:
            raise InvalidParameter("Phi is evaluated for u >= 0 only")
        pi = iv.pi
        total = iv.mpf(0)
        for n in range(1, params.terms + 1):
            envelope = 2 * n**4 * pi * pi * iv.exp(iv.mpf(9) / 2 * x) - 3 * n * n * pi * iv.exp(iv.mpf(5) / 2 * x)
            total += envelope * iv.exp(-(n * n) * pi * iv.exp(2 * x))
        tail = upper_abs(series_tail(params.terms + 1, x.a))
        return interval_to_ball(2 * total + _plus_minus(tail), bits)
