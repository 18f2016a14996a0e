"""
Certification sweeps over (n, s) grids, section thresholds and zero-sign profiles.
"""
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from lpdiag.batteries import BatteryTest, Verdict, certify_sequence
from numerics.coefficients import rational_to_string
from numerics.precision import default_jobs, default_seed
from operators.brenke import brenke_polynomials
from operators.polynomials import RealPoly
from powerseries.series import coefficients
from powerseries.specs import SeriesSpec, exp_series, explicit, hypergeometric_0fq, partial_theta
from realroots.certificates import RootStatus
from realroots.counting import count_real_roots
from zetacoeffs.tables import ZetaCoefficientTable, compute_table, default_table

from .exceptions import InvalidParameter
from .generation import Gammas, generate_family
from .specs import FamilySpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyCell:
    n: int
    s: int
    status: RootStatus
    real_root_count: int
    precision_used: Optional[int]


@dataclass(frozen=True)
class FamilySweep:
    spec: FamilySpec
    shifts: Tuple[int, ...]
    cells: Tuple[FamilyCell, ...]
    refined_bits: Optional[int] = None

    @property
    def status(self) -> RootStatus:
        statuses = {cell.status for cell in self.cells}
        if RootStatus.NOT_REAL_ROOTED in statuses:
            return RootStatus.NOT_REAL_ROOTED
        if RootStatus.INCONCLUSIVE in statuses:
            return RootStatus.INCONCLUSIVE
        return RootStatus.REAL_ROOTED

    @property
    def failures(self) -> List[FamilyCell]:
        return [cell for cell in self.cells if cell.status == RootStatus.NOT_REAL_ROOTED]

    def cell(self, n: int, s: int) -> FamilyCell:
        for cell in self.cells:
            if cell.n == n and cell.s == s:
                return cell
        raise KeyError((n, s))

    def thresholds(self) -> Dict[int, Optional[int]]:
        """
        Per n, the smallest s of the grid from which every cell is REAL_ROOTED.

        None when the cell at the largest s is not REAL_ROOTED.
        """
        result: Dict[int, Optional[int]] = {}
        for n in sorted({cell.n for cell in self.cells}):
            row = sorted((cell for cell in self.cells if cell.n == n), key=lambda cell: cell.s)
            threshold = None
            for cell in reversed(row):
                if cell.status != RootStatus.REAL_ROOTED:
                    break
                threshold = cell.s
            result[n] = threshold
        return result

    def to_dict(self) -> Dict[str, Any]:
        params = {k: v for k, v in self.spec.describe().items() if k not in ("kind", "n_max", "s")}
        return {
            "family": self.spec.kind.value,
            "params": params,
            "status": self.status.value,
            "refined_bits": self.refined_bits,
            "thresholds": {str(n): s for n, s in self.thresholds().items()},
            "cells": [
                {
                    "family": self.spec.kind.value,
                    "params": params,
                    "n": cell.n,
                    "s": cell.s,
                    "status": cell.status.value,
                    "real_root_count": cell.real_root_count,
                    "precision_used": cell.precision_used,
                }
                for cell in self.cells
            ],
        }


def _certify_cell(task) -> FamilyCell:
    n, s, p = task
    certificate = count_real_roots(p, isolate=False)
    return FamilyCell(n, s, certificate.status, certificate.real_root_count, certificate.precision_used)


def _certify(tasks, jobs: int, progress: bool) -> List[FamilyCell]:
    bar = dict(total=len(tasks), disable=not progress, file=sys.stderr, desc="certify")
    if jobs > 1:
        with Pool(jobs) as pool:
            return list(tqdm(pool.imap(_certify_cell, tasks), **bar))
    return [_certify_cell(task) for task in tqdm(tasks, **bar)]


def _tasks(spec: FamilySpec, shifts: Sequence[int], gammas, bits) -> List[Tuple[int, int, RealPoly]]:
    tasks = []
    for s in shifts:
        for n, p in enumerate(generate_family(spec.with_shift(s), gammas, bits)):
            if not p.is_zero():
                tasks.append((n, s, p))
    return tasks


def certify_family(
    spec: FamilySpec,
    shifts: Optional[Iterable[int]] = None,
    gammas: Optional[Gammas] = None,
    bits: Optional[int] = None,
    jobs: Optional[int] = None,
    progress: bool = False,
) -> FamilySweep:
    """
    Certify every polynomial of ``spec`` for n <= n_max and s in ``shifts``.

    When a gamma-based family leaves INCONCLUSIVE cells, the gamma table is
    recomputed once at doubled precision and those cells are certified again.
    Identically zero polynomials are skipped.
    """
    shifts = tuple(sorted(set(shifts))) if shifts is not None else (spec.s,)
    if not shifts or shifts[0] < 0:
        raise InvalidParameter(f"shifts must be non-negative, got {shifts}")
    jobs = jobs or default_jobs()
    if spec.uses_gamma and gammas is None:
        gammas = default_table(spec.with_shift(shifts[-1]).gamma_order, bits)

    cells = _certify(_tasks(spec, shifts, gammas, bits), jobs, progress)
    refined_bits = None
    undecided = {(cell.n, cell.s) for cell in cells if cell.status == RootStatus.INCONCLUSIVE}
    if undecided and spec.uses_gamma and isinstance(gammas, ZetaCoefficientTable):
        refined_bits = 2 * gammas.bits
        logger.warning("%d inconclusive cells for %s; recomputing gamma at %d bits", len(undecided), spec, refined_bits)
        refined = compute_table(gammas.max_n, refined_bits, gammas.params)
        retry = [task for task in _tasks(spec, shifts, refined, refined_bits) if (task[0], task[1]) in undecided]
        redone = {(cell.n, cell.s): cell for cell in _certify(retry, jobs, progress)}
        cells = [redone.get((cell.n, cell.s), cell) for cell in cells]

    sweep = FamilySweep(spec, shifts, tuple(sorted(cells, key=lambda cell: (cell.s, cell.n))), refined_bits)
    logger.info("Certified %d cells of %s: %s", len(sweep.cells), spec, sweep.status)
    return sweep


# ----------------------------------------------------------------------
# Partial theta sections
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SectionReport:
    a: Fraction
    factorial: bool
    result: BatteryTest

    @property
    def first_failure(self) -> Optional[int]:
        return self.result.first_failure

    @property
    def verdict(self) -> Verdict:
        return self.result.verdict

    def to_dict(self) -> Dict[str, Any]:
        return {"a": rational_to_string(self.a), "factorial": self.factorial, **self.result.to_dict()}


def klv_sections(a, n_max: int, factorial: bool = False) -> SectionReport:
    """
    Real-rootedness of the sections sum_{j <= n} z^j / a^{j^2} (or / (j! a^{j^2})), n <= n_max.

    The plain sections are all real-rooted exactly when a >= 2.
    """
    a = Fraction(a)
    series = coefficients(partial_theta(a, factorial), n_max)
    sections = [RealPoly(series.coeffs[: n + 1], label=f"section_{n}") for n in range(n_max + 1)]
    name = f"sections(a={a}{', factorial' if factorial else ''})"
    report = SectionReport(a, factorial, certify_sequence(name, sections))
    logger.info("Partial theta sections for a = %s: %s", a, report.verdict)
    return report


# ----------------------------------------------------------------------
# Appell soundness
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class AppellSample:
    roots: Tuple[Fraction, ...]
    rate: Fraction
    result: BatteryTest

    def to_dict(self) -> Dict[str, Any]:
        return {
            "roots": [rational_to_string(r) for r in self.roots],
            "rate": rational_to_string(self.rate),
            **self.result.to_dict(),
        }


@dataclass(frozen=True)
class AppellReport:
    samples: Tuple[AppellSample, ...]
    n_max: int
    seed: int

    @property
    def verdict(self) -> Verdict:
        verdicts = {sample.result.verdict for sample in self.samples}
        for verdict in (Verdict.FAIL, Verdict.INCONCLUSIVE):
            if verdict in verdicts:
                return verdict
        return Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "n_max": self.n_max,
            "seed": self.seed,
            "samples": [sample.to_dict() for sample in self.samples],
        }


def laguerre_polya_generator(roots: Sequence, rate, n_max: int) -> SeriesSpec:
    """Taylor coefficients of prod(z - r) * e^{rate z} through z^n_max, normalized to c_0 = 1."""
    rate = Fraction(rate)
    factor = RealPoly.from_roots([Fraction(r) for r in roots]).coeffs
    exp_part = [Fraction(1)]
    for k in range(1, n_max + 1):
        exp_part.append(exp_part[-1] * rate / k)
    values = [
        sum(factor[j] * exp_part[k - j] for j in range(min(k, len(factor) - 1) + 1)) for k in range(n_max + 1)
    ]
    return explicit(values, label=f"prod(z - r) exp({rate} z)")


def _random_generator(rng: random.Random, max_degree: int) -> Tuple[Tuple[Fraction, ...], Fraction]:
    roots = []
    for _ in range(rng.randint(0, max_degree)):
        numerator = rng.choice([k for k in range(-9, 10) if k])
        roots.append(Fraction(numerator, rng.randint(1, 4)))
    return tuple(roots), Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def appell_soundness(
    count: int = 20, n_max: int = 20, max_degree: int = 6, seed: Optional[int] = None
) -> AppellReport:
    """
    Certify the Brenke polynomials of random Laguerre-Polya generators A against B = e^z.

    Each A is a product of at most ``max_degree`` real linear factors times e^{bz}
    with rational b, so every p_n, n <= n_max, must be real-rooted.
    """
    seed = default_seed() if seed is None else seed
    rng = random.Random(seed)
    B = coefficients(exp_series(), n_max)
    samples = []
    for index in range(count):
        roots, rate = _random_generator(rng, max_degree)
        A = coefficients(laguerre_polya_generator(roots, rate, n_max), n_max)
        result = certify_sequence(f"appell_{index}", brenke_polynomials(A, B, n_max))
        samples.append(AppellSample(roots, rate, result))
    report = AppellReport(tuple(samples), n_max, seed)
    logger.info("Appell soundness over %d generators (seed %d): %s", count, seed, report.verdict)
    return report


# ----------------------------------------------------------------------
# Zero signs
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroSignRow:
    phi: Fraction
    n: int
    positive: int
    negative: int
    at_zero: int
    non_real: int


def zero_sign_profile(A: SeriesSpec, phis: Sequence, n_max: int) -> List[ZeroSignRow]:
    """
    Positive, negative, zero and non-real zero counts of the Brenke polynomials of A and 0F1(;phi;z).

    Exact coefficients only.
    """
    Aser = coefficients(A, n_max)
    rows = []
    for phi in phis:
        phi = Fraction(phi)
        B = coefficients(hypergeometric_0fq([phi]), n_max)
        for n, p in enumerate(brenke_polynomials(Aser, B, n_max)):
            if p.is_zero():
                continue
            certificate = count_real_roots(p, isolate=False)
            rows.append(
                ZeroSignRow(
                    phi,
                    n,
                    certificate.positive_count,
                    certificate.negative_count,
                    certificate.zero_multiplicity,
                    certificate.non_real_count,
                )
            )
    return rows
