"""
Interlacing of the zeros of q (degree k) and p (degree k + 1).

With zeros zeta_1 <= ... <= zeta_k of q and eta_1 <= ... <= eta_{k+1} of p
the zeros interlace when eta_1 <= zeta_1 <= eta_2 <= ... <= zeta_k <= eta_{k+1}.
The relation is STRICT when every inequality is strict, and
STRICT_EXCEPT_COMMON_ZERO_AT(lambda) when lambda is the only common zero, of
multiplicity l + 1 in p and l in q, and interlacing is strict once
(x - lambda)^l is divided out of both.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from numerics.balls import Sign, mpf_to_fraction
from numerics.coefficients import rational_to_string, sign_of
from numerics.precision import default_seed
from operators.polynomials import RealPoly

from .certificates import Interval, InterlacingRelation, InterlacingReport, RootStatus
from .counting import count_real_roots
from .enclosures import approximate_real_zeros
from .exact import isolate, low_order_zeros, refine, root_multiplicity, square_free_factors, square_free_part
from .exceptions import DegreeMismatch, NotRealRooted
from .sturm import ball_cauchy_bound, evaluate

logger = logging.getLogger(__name__)

# (isolating interval, multiplicity in p, multiplicity in q), increasing
MergedRoots = List[Tuple[Interval, int, int]]


def merged_roots_exact(q: RealPoly, p: RealPoly) -> MergedRoots:
    """Distinct real zeros of p*q with their multiplicities in p and in q."""
    product = p * q
    if product.degree < 1:
        return []
    p_factors = square_free_factors(p)
    q_factors = square_free_factors(q)
    merged = []
    for interval in isolate(square_free_part(product)):
        merged.append((interval, root_multiplicity(p_factors, interval), root_multiplicity(q_factors, interval)))
    return merged


def merged_roots_ball(q: RealPoly, p: RealPoly, bits: int) -> Optional[MergedRoots]:
    """
    Certified ordering of the zeros of two real-rooted ball polynomials.

    Zeros away from the origin are located approximately and then certified
    by sign changes at rational separators; the origin carries the exact
    zero multiplicities. Returns None when the ordering cannot be certified.
    """
    mp, mq = low_order_zeros(p), low_order_zeros(q)
    gp = list(p.coeffs[mp : p.degree + 1])
    gq = list(q.coeffs[mq : q.degree + 1])
    # (approximate zero, multiplicity in p, multiplicity in q, is the origin)
    located: List[Tuple[Fraction, int, int, bool]] = []
    for poly, owner in ((gp, 0), (gq, 1)):
        if len(poly) > 1:
            zeros = approximate_real_zeros(poly, bits)
            if zeros is None or len(zeros) != len(poly) - 1:
                return None
            located.extend((mpf_to_fraction(z), 1 - owner, owner, False) for z in zeros)
    if mp or mq:
        located.append((Fraction(0), mp, mq, True))
    located.sort()
    if any(a[0] == b[0] for a, b in zip(located, located[1:])):
        return None

    bound = max((ball_cauchy_bound(poly) for poly in (gp, gq) if len(poly) > 1), default=Fraction(1))
    separators = [-bound] + [(a[0] + b[0]) / 2 for a, b in zip(located, located[1:])] + [bound]
    if any(a >= b for a, b in zip(separators, separators[1:])):
        return None
    merged = []
    for i, (_, in_p, in_q, origin) in enumerate(located):
        lo, hi = separators[i], separators[i + 1]
        if origin:
            merged.append(((Fraction(0), Fraction(0)), in_p, in_q))
            continue
        poly = gp if in_p else gq
        signs = (sign_of(evaluate(poly, lo)), sign_of(evaluate(poly, hi)))
        if Sign.UNKNOWN in signs or Sign.ZERO in signs or signs[0] == signs[1]:
            return None
        merged.append(((lo, hi), in_p, in_q))
    return merged


def classify(merged: MergedRoots) -> InterlacingReport:
    """Relation of the zero sequences described by ``merged``."""
    eta = [i for i, (_, mp, _) in enumerate(merged) for _ in range(mp)]
    zeta = [i for i, (_, _, mq) in enumerate(merged) for _ in range(mq)]

    if _alternates(eta, zeta, strict=True):
        return InterlacingReport(InterlacingRelation.STRICT)

    common = [i for i, (_, mp, mq) in enumerate(merged) if mp and mq]
    if len(common) == 1:
        i = common[0]
        _, mp, mq = merged[i]
        if mp == mq + 1:
            reduced_eta = [j for j in eta if j != i] + [i]
            reduced_zeta = [j for j in zeta if j != i]
            if _alternates(sorted(reduced_eta), reduced_zeta, strict=True):
                return InterlacingReport(InterlacingRelation.STRICT_EXCEPT_COMMON_ZERO, common_zero=merged[i][0])

    violation = _first_violation(eta, zeta)
    if violation is None:
        return InterlacingReport(InterlacingRelation.WEAK)
    q_index, p_index = violation
    return InterlacingReport(InterlacingRelation.FAILS, witness=(merged[q_index][0], merged[p_index][0]))


def _alternates(eta: Sequence[int], zeta: Sequence[int], strict: bool) -> bool:
    if len(eta) != len(zeta) + 1:
        return False
    for i, z in enumerate(zeta):
        if strict and not eta[i] < z < eta[i + 1]:
            return False
        if not strict and not eta[i] <= z <= eta[i + 1]:
            return False
    return True


def _first_violation(eta: Sequence[int], zeta: Sequence[int]) -> Optional[Tuple[int, int]]:
    for i, z in enumerate(zeta):
        if eta[i] > z:
            return z, eta[i]
        if z > eta[i + 1]:
            return z, eta[i + 1]
    return None


def check_interlacing(q: RealPoly, p: RealPoly, bits: Optional[int] = None) -> InterlacingReport:
    """
    Classify how the zeros of q interlace those of p.

    Raises:
        DegreeMismatch: unless deg p = deg q + 1
        NotRealRooted: when p or q is certified to have non-real zeros
    """
    if p.degree != q.degree + 1 or q.degree < 0:
        raise DegreeMismatch(f"deg p = {p.degree}, deg q = {q.degree}")
    certificates = {"q": count_real_roots(q, bits, isolate=False), "p": count_real_roots(p, bits, isolate=False)}
    for name, certificate in certificates.items():
        if certificate.status == RootStatus.NOT_REAL_ROOTED:
            raise NotRealRooted(f"{name} has {certificate.non_real_count} non-real zeros")
    if any(c.status == RootStatus.INCONCLUSIVE for c in certificates.values()):
        return InterlacingReport(InterlacingRelation.UNKNOWN, note="real-rootedness not certified")

    if p.is_exact and q.is_exact:
        return classify(merged_roots_exact(q, p))
    used = max(c.precision_used or 0 for c in certificates.values()) or (bits or 128)
    merged = merged_roots_ball(q, p, used)
    if merged is None:
        return InterlacingReport(InterlacingRelation.UNKNOWN, note="zero ordering not certified")
    return classify(merged)


# ----------------------------------------------------------------------
# Obreshkov cross-check
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ObreshkovReport:
    relation: InterlacingRelation
    trials: int
    # (alpha, beta) pairs whose combination alpha p + beta q has non-real zeros
    failures: Tuple[Tuple[Fraction, Fraction], ...] = ()
    inconclusive: int = 0
    witness: Optional[Tuple[Fraction, Fraction]] = None
    note: str = field(default="", compare=False)

    @property
    def consistent(self) -> bool:
        if self.relation == InterlacingRelation.FAILS:
            return self.witness is not None
        if self.relation == InterlacingRelation.UNKNOWN:
            return True
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relation": self.relation.value,
            "trials": self.trials,
            "failures": [_pair_to_json(ab) for ab in self.failures],
            "inconclusive": self.inconclusive,
            "witness": _pair_to_json(self.witness) if self.witness else None,
            "consistent": self.consistent,
        }


def _pair_to_json(pair: Tuple[Fraction, Fraction]) -> List[str]:
    return [rational_to_string(pair[0]), rational_to_string(pair[1])]


def _random_nonzero(rng: random.Random) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-20, 20)
    return Fraction(numerator, rng.randint(1, 10))


def combination_has_non_real_zeros(q: RealPoly, p: RealPoly, alpha: Fraction, beta: Fraction) -> Optional[bool]:
    combination = p * alpha + q * beta
    if combination.is_zero():
        return False
    certificate = count_real_roots(combination, isolate=False)
    if certificate.status == RootStatus.INCONCLUSIVE:
        return None
    return certificate.status == RootStatus.NOT_REAL_ROOTED


def obreshkov_witness(q: RealPoly, p: RealPoly) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Search (1, -t) with p - t q not real-rooted, t near a critical value of p/q.

    Critical points of p/q are the real zeros of the Wronskian p'q - pq'; as
    t crosses a local extremum of p/q two real solutions of p = t q collide
    and leave the real line. Exact polynomials only.
    """
    wronskian = p.derivative() * q - p * q.derivative()
    if wronskian.degree < 1:
        return None
    core = square_free_part(wronskian)
    for interval in isolate(core):
        lo, hi = refine(core, interval, Fraction(1, 2**20))
        x0 = hi if lo == hi else (lo + hi) / 2
        q0 = q(x0)
        if q0 == 0:
            continue
        t = p(x0) / q0
        for exponent in (4, 8, 16, 32):
            for offset in (Fraction(1, 2**exponent), -Fraction(1, 2**exponent)):
                beta = -(t + offset * max(1, abs(t)))
                if combination_has_non_real_zeros(q, p, Fraction(1), beta):
                    return Fraction(1), beta
    return None


def obreshkov_check(q: RealPoly, p: RealPoly, trials: int = 50, seed: Optional[int] = None) -> ObreshkovReport:
    """
    Cross-check ``check_interlacing`` against real-rootedness of alpha p + beta q.

    Interlacing (of any of the non-failing kinds) holds exactly when every real
    combination is real-rooted: random combinations must all pass for an
    interlacing pair, and a failing pair must yield a witness combination.
    """
    relation = check_interlacing(q, p).relation
    rng = random.Random(seed if seed is not None else default_seed())
    failures: List[Tuple[Fraction, Fraction]] = []
    undecided = 0
    for _ in range(trials):
        alpha, beta = _random_nonzero(rng), _random_nonzero(rng)
        verdict = combination_has_non_real_zeros(q, p, alpha, beta)
        if verdict is None:
            undecided += 1
        elif verdict:
            failures.append((alpha, beta))

    witness = failures[0] if failures else None
    if witness is None and relation == InterlacingRelation.FAILS and p.is_exact and q.is_exact:
        witness = obreshkov_witness(q, p)
    report = ObreshkovReport(relation, trials, tuple(failures), undecided, witness)
    if not report.consistent:
        logger.warning("Obreshkov cross-check disagrees with interlacing relation %s", relation)
    return report
