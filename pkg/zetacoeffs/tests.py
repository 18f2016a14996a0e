import json
import tempfile
from fractions import Fraction
from math import factorial
from pathlib import Path

import mpmath
from django.test import SimpleTestCase, override_settings, tag

from numerics.balls import Sign
from operators.calculus import lambda_B
from operators.polynomials import RealPoly
from powerseries.series import coefficients
from powerseries.specs import zeta_relative
from realroots.certificates import RootStatus
from realroots.counting import count_real_roots
from zetacoeffs.exceptions import CacheCorrupt, GammaTableTooShort, InvalidParameter, TailBoundFailure
from zetacoeffs.quadrature import (
    QuadratureParams,
    check_series_ratio,
    phi,
    phi_moments,
    xi_even_derivative_moment,
)
from zetacoeffs.tables import compute_table, default_table, gamma_table, load_or_extend_cache, read_cache


def xi(s):
    return s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


def xi_derivative(order):
    with mpmath.workdps(40):
        return mpmath.diff(xi, mpmath.mpf(1) / 2, order)


def close_to(ball, value, relative=mpmath.mpf("1e-20")):
    return abs(ball.mid - value) <= ball.rad + relative * abs(value)


class PhiTests(SimpleTestCase):
    def test_positive_on_samples(self):
        for u in (0, Fraction(1, 4), Fraction(1, 2), 1, Fraction(3, 2), 2, 3):
            self.assertEqual(phi(u).sign(), Sign.POSITIVE, u)

    def test_negligible_at_three(self):
        self.assertLess(phi(3, bits=128).upper(), mpmath.mpf("1e-30"))

    def test_truncations_overlap(self):
        u = Fraction(1, 10)
        self.assertTrue(phi(u, terms=1).overlaps(phi(u, terms=10)))

    def test_matches_direct_sum(self):
        u = mpmath.mpf(1) / 2
        with mpmath.workdps(40):
            direct = 2 * mpmath.nsum(
                lambda n: (2 * n**4 * mpmath.pi**2 * mpmath.exp(9 * u / 2) - 3 * n**2 * mpmath.pi * mpmath.exp(5 * u / 2))
                * mpmath.exp(-(n**2) * mpmath.pi * mpmath.exp(2 * u)),
                [1, mpmath.inf],
            )
        self.assertTrue(close_to(phi(Fraction(1, 2)), direct))

    def test_negative_argument(self):
        with self.assertRaises(InvalidParameter):
            phi(-1)

    def test_majorant_needs_a_summand(self):
        with self.assertRaises(TailBoundFailure):
            check_series_ratio(1)
        check_series_ratio(2)


class MomentTests(SimpleTestCase):
    def test_zeroth_moment_is_xi_half(self):
        M0 = phi_moments(0, bits=128)[0]
        with mpmath.workdps(50):
            reference = xi(mpmath.mpf(1) / 2)
        self.assertEqual(M0.sign(), Sign.POSITIVE)
        self.assertTrue(close_to(M0, reference, mpmath.mpf("1e-30")))

    def test_second_moment_is_second_derivative(self):
        self.assertTrue(close_to(xi_even_derivative_moment(1, bits=128), xi_derivative(2)))

    def test_moments_are_positive(self):
        moments = phi_moments(6, bits=96)
        self.assertTrue(all(m.sign() == Sign.POSITIVE for m in moments))

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidParameter):
            xi_even_derivative_moment(-1)
        with self.assertRaises(InvalidParameter):
            QuadratureParams(step=Fraction(0))
        with self.assertRaises(InvalidParameter):
            compute_table(3, 32)


class GammaTableTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.table = compute_table(5, 128)

    def test_normalization(self):
        self.assertTrue(self.table.gamma(0).contains(1))

    def test_positive(self):
        self.assertTrue(all(g.sign() == Sign.POSITIVE for g in self.table.gammas))

    def test_matches_numerical_differentiation(self):
        with mpmath.workdps(40):
            xi_half = xi(mpmath.mpf(1) / 2)
        for n in range(1, 6):
            reference = factorial(n) * xi_derivative(2 * n) / (factorial(2 * n) * xi_half)
            self.assertTrue(close_to(self.table.gamma(n), reference), n)

    def test_deterministic(self):
        self.assertEqual(compute_table(5, 128), self.table)

    def test_truncation_and_bounds(self):
        short = self.table.truncated(2)
        self.assertEqual(short.max_n, 2)
        self.assertEqual(short.gamma(2), self.table.gamma(2))
        with self.assertRaises(GammaTableTooShort):
            short.gamma(3)

    def test_provenance(self):
        body = self.table.to_dict()
        self.assertEqual(body["version"], 1)
        self.assertEqual([entry["n"] for entry in body["gammas"]], list(range(6)))
        self.assertEqual(body["U"], "6/1")
        self.assertGreater(body["K"], 0)

    def test_lowering_operator_breaks_real_rootedness(self):
        B = coefficients(zeta_relative(0), 4, table=self.table)
        image = lambda_B(B, RealPoly.from_roots([-1] * 4))
        certificate = count_real_roots(image)
        self.assertEqual(image.degree, 3)
        self.assertEqual(certificate.status, RootStatus.NOT_REAL_ROOTED)
        self.assertEqual(certificate.real_root_count, 1)


class CacheTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = Path(self.directory.name) / "gamma_cache.json"

    def tearDown(self):
        self.directory.cleanup()

    def test_cold_then_warm(self):
        cold = load_or_extend_cache(self.path, 3, 64)
        warm = load_or_extend_cache(self.path, 3, 64)
        self.assertEqual(cold, warm)
        self.assertEqual(read_cache(self.path), cold)

    def test_extension_keeps_entries(self):
        short = load_or_extend_cache(self.path, 2, 64)
        longer = load_or_extend_cache(self.path, 4, 64)
        self.assertEqual(longer.max_n, 4)
        self.assertEqual(longer.gammas[:3], short.gammas)
        self.assertEqual(longer.xi_half, short.xi_half)

    def test_lower_precision_request_reuses(self):
        high = load_or_extend_cache(self.path, 2, 96)
        self.assertEqual(load_or_extend_cache(self.path, 2, 64), high)

    def test_higher_precision_shrinks_radii(self):
        low = load_or_extend_cache(self.path, 2, 64)
        high = load_or_extend_cache(self.path, 2, 128)
        self.assertEqual(high.bits, 128)
        for a, b in zip(low.gammas, high.gammas):
            self.assertLessEqual(b.rad, a.rad)
            self.assertTrue(a.overlaps(b))

    def test_checksum_mismatch(self):
        load_or_extend_cache(self.path, 2, 64)
        data = json.loads(self.path.read_text())
        data["gammas"][1]["mid"] = "0.5"
        self.path.write_text(json.dumps(data))
        with self.assertRaises(CacheCorrupt):
            read_cache(self.path)

    def test_unknown_version(self):
        load_or_extend_cache(self.path, 1, 64)
        data = json.loads(self.path.read_text())
        data["version"] = 99
        self.path.write_text(json.dumps(data))
        with self.assertRaises(CacheCorrupt):
            load_or_extend_cache(self.path, 1, 64)

    def test_settings_path_and_series(self):
        with override_settings(BRENKE_CACHE=str(self.path)):
            table = default_table(3, 64)
            self.assertTrue(self.path.exists())
            self.assertEqual(gamma_table(3, 64), table)
            series = coefficients(zeta_relative(1), 2, bits=64)
        self.assertTrue(series[0].contains(1))
        self.assertTrue(series[1].overlaps(table.gamma(2) / table.gamma(1)))

    def test_uncached_computation_writes_nothing(self):
        gamma_table(1, 64, use_cache=False)
        self.assertFalse(self.path.exists())


@tag("slow")
class LongTableTests(SimpleTestCase):
    def test_rho_increases_toward_one(self):
        table = compute_table(40, 256)
        self.assertTrue(all(g.sign() == Sign.POSITIVE for g in table.gammas))
        b = [g / factorial(n) for n, g in enumerate(table.gammas)]
        rho = {n: b[n - 2] * b[n] / (b[n - 1] * b[n - 1]) for n in range(2, 41)}
        for n in range(5, 40):
            self.assertEqual((rho[n + 1] - rho[n]).sign(), Sign.POSITIVE, n)
            self.assertEqual((1 - rho[n]).sign(), Sign.POSITIVE, n)
