from fractions import Fraction
from math import factorial

import mpmath
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from lpdiag.batteries import (
    Verdict,
    cubic_witness,
    necessary_battery,
    non_lp_quadratic_witness,
    stability_battery,
    stability_series,
)
from lpdiag.diagnostics import (
    SignPattern,
    Trend,
    diagnose,
    rho_convergence_report,
    rho_product,
    scaled_ratio,
    sign_pattern,
    tau_equivalence_report,
)
from lpdiag.exceptions import RatioUndefined, TruncationTooShort, ZeroCoefficient
from lpdiag.export import diagnostics_frame, rho_frame, write_csv
from numerics.balls import BallReal, Sign
from powerseries.series import coefficients
from powerseries.specs import as_ball, bq, exp_series, explicit, geometric, hypergeometric_0fq, trivial_rational, zeta_relative
from realroots.certificates import RootStatus
from realroots.counting import count_real_roots
from zetacoeffs.tables import compute_table

positive_rationals = st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12)


class DiagnoseTests(SimpleTestCase):
    def test_exponential(self):
        diagnostics = diagnose(coefficients(exp_series(), 10))
        self.assertEqual(diagnostics.sign_pattern, SignPattern.CONSTANT)
        self.assertEqual(diagnostics.log_concave_up_to, 10)
        self.assertEqual(diagnostics.coti_satisfied_up_to, 10)
        self.assertEqual(diagnostics.rho_trend, Trend.INCREASING)
        for n in range(2, 11):
            self.assertEqual(diagnostics.rho[n], Fraction(n - 1, n))
        self.assertEqual(diagnostics.rho_limit_estimate, Fraction(9, 10))

    def test_hypergeometric(self):
        self.assertEqual(diagnose(coefficients(hypergeometric_0fq([1]), 6)).rho[2], Fraction(1, 4))
        phi = Fraction(3, 2)
        diagnostics = diagnose(coefficients(hypergeometric_0fq([phi]), 8))
        for n in range(2, 9):
            self.assertEqual(diagnostics.rho[n], (n - 1) * (phi + n - 2) / (n * (phi + n - 1)))

    def test_bq(self):
        diagnostics = diagnose(coefficients(bq(2), 6))
        self.assertEqual(diagnostics.log_concave_up_to, 1)
        self.assertEqual(diagnostics.coti_satisfied_up_to, 1)
        self.assertTrue(all(value == 4 for value in diagnostics.rho.values()))

    def test_sign_patterns(self):
        self.assertEqual(diagnose(coefficients(trivial_rational(), 6)).sign_pattern, SignPattern.NEITHER)
        alternating = explicit([Fraction((-1) ** n, factorial(n)) for n in range(6)])
        self.assertEqual(diagnose(coefficients(alternating, 5)).sign_pattern, SignPattern.ALTERNATING)
        vague = BallReal(mpmath.mpf(0), mpmath.mpf("0.1"), 64)
        self.assertEqual(sign_pattern([Fraction(1), vague, Fraction(1)]), SignPattern.UNDETERMINED)
        self.assertEqual(sign_pattern([Fraction(1), vague, Fraction(-1), Fraction(-1)]), SignPattern.NEITHER)

    def test_ball_path_agrees(self):
        exact = diagnose(coefficients(exp_series(), 10))
        balls = diagnose(coefficients(as_ball(exp_series()), 10, bits=128))
        self.assertEqual(balls.sign_pattern, exact.sign_pattern)
        self.assertEqual(balls.log_concave_up_to, exact.log_concave_up_to)
        self.assertTrue(balls.rho[5].contains(exact.rho[5]))

    def test_ratios_increase_under_coti(self):
        for spec in (exp_series(), hypergeometric_0fq([Fraction(3, 2)])):
            diagnostics = diagnose(coefficients(spec, 10))
            taus = [diagnostics.tau[n] for n in sorted(diagnostics.tau)]
            self.assertEqual(diagnostics.coti_satisfied_up_to, 10)
            self.assertTrue(all(b > a for a, b in zip(taus, taus[1:])))

    def test_needs_four_terms(self):
        with self.assertRaises(TruncationTooShort):
            diagnose(coefficients(exp_series(), 3))

    def test_to_dict(self):
        data = diagnose(coefficients(exp_series(), 5)).to_dict()
        self.assertEqual(data["rho"]["2"], "1/2")
        self.assertIn("N = 5", data["claim"])


class RatioIdentityTests(SimpleTestCase):
    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(positive_rationals, min_size=11, max_size=11),
        st.integers(min_value=1, max_value=10),
        st.integers(min_value=1, max_value=10),
    )
    def test_scaled_ratio_is_rho_product(self, tail, n, j):
        j = min(j, n)
        B = coefficients(explicit([Fraction(1)] + tail), 11)
        self.assertEqual(scaled_ratio(B, n, j), rho_product(B, n, j))

    def test_undefined_ratio(self):
        B = coefficients(explicit([1, 0, 1, 1, 1, 1]), 5)
        with self.assertRaises(RatioUndefined):
            rho_product(B, 2, 2)
        with self.assertRaises(RatioUndefined):
            scaled_ratio(B, 3, 4)

    def test_tau_equivalence(self):
        report = tau_equivalence_report(coefficients(exp_series(), 12))
        self.assertTrue(report.first_trend_to_one)
        self.assertTrue(report.second_trend_to_one)
        for row in report.rows:
            self.assertEqual(row.first, Fraction(row.n, row.n + 1))
            self.assertEqual(row.second, row.first)


class RhoConvergenceTests(SimpleTestCase):
    def test_exponential(self):
        report = rho_convergence_report(coefficients(exp_series(), 12))
        self.assertEqual(report.gap_trend, Trend.DECREASING)
        self.assertTrue(report.toward_one)
        for row in report.rows:
            self.assertEqual(row.gap, Fraction(1, row.n))
            if row.grosswald is not None:
                self.assertEqual(row.grosswald, -1)

    def test_hypergeometric(self):
        report = rho_convergence_report(coefficients(hypergeometric_0fq([1]), 12))
        for row in report.rows:
            self.assertEqual(row.gap, Fraction(2 * row.n - 1, row.n**2))
        self.assertEqual(report.gap_trend, Trend.DECREASING)

    def test_needs_six_terms(self):
        with self.assertRaises(TruncationTooShort):
            rho_convergence_report(coefficients(exp_series(), 5))

    def test_csv(self):
        report = rho_convergence_report(coefficients(exp_series(), 8))
        frame = rho_frame(report)
        self.assertEqual(len(frame), 7)
        self.assertEqual(frame.iloc[0]["one_minus_rho"], "1/2")
        self.assertTrue(write_csv(frame).startswith("n,rho,one_minus_rho"))


class StabilityTests(SimpleTestCase):
    def test_exponential_series(self):
        C = stability_series(coefficients(exp_series(), 8), 7)
        self.assertEqual(list(C.coeffs), [Fraction(1, factorial(n)) for n in range(8)])

    def test_geometric_series(self):
        C = stability_series(coefficients(geometric(), 8), 7)
        self.assertEqual(list(C.coeffs), [Fraction(1, factorial(n + 1)) for n in range(8)])

    def test_zero_coefficient(self):
        with self.assertRaises(ZeroCoefficient):
            stability_series(coefficients(explicit([1, 1, 0, 1]), 4), 3)

    def test_exponential_is_stable_up_to_n(self):
        self.assertEqual(stability_battery(coefficients(exp_series(), 9), 8).verdict, Verdict.PASS)


class BatteryTests(SimpleTestCase):
    def test_exponential_passes(self):
        report = necessary_battery(coefficients(exp_series(), 12), 12)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertEqual(len(report.tests), 2 + 11 + 1)

    def test_bq_fails_coti_at_two(self):
        report = necessary_battery(coefficients(bq(2), 6), 6)
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertEqual(report.test("coti").first_failure, 2)
        self.assertEqual(report.test("(1+z)^2").verdict, Verdict.FAIL)

    def test_trivial_rational_fails_quadratic(self):
        report = necessary_battery(coefficients(trivial_rational(), 9), 9)
        self.assertEqual(report.test("1-z^2").verdict, Verdict.FAIL)
        self.assertEqual(report.test("1-z^2").first_failure, 3)

    def test_report_frame(self):
        B = coefficients(bq(2), 6)
        frame = diagnostics_frame(diagnose(B), B, necessary_battery(B, 6))
        self.assertEqual(list(frame["n"]), [2, 3, 4, 5, 6])
        self.assertEqual(frame.iloc[0]["coti"], "FAIL")


class WitnessTests(SimpleTestCase):
    def test_quadratic_without_real_zeros(self):
        witness = non_lp_quadratic_witness(coefficients(exp_series(), 8), 8)
        self.assertIsNotNone(witness)
        self.assertEqual(witness.a2, Fraction(15, 14))
        self.assertLess(witness.a1**2 - 4 * witness.a2, 0)
        self.assertEqual(count_real_roots(witness.polynomial).status, RootStatus.NOT_REAL_ROOTED)
        self.assertEqual(witness.family.verdict, Verdict.PASS)

    def test_no_quadratic_when_rho_exceeds_one(self):
        self.assertIsNone(non_lp_quadratic_witness(coefficients(bq(2), 6), 6))

    def test_cubic(self):
        certificate = count_real_roots(cubic_witness(Fraction(1, 2)))
        self.assertEqual(certificate.status, RootStatus.NOT_REAL_ROOTED)
        self.assertEqual(certificate.real_root_count, 1)
        self.assertEqual(count_real_roots(cubic_witness(1)).status, RootStatus.REAL_ROOTED)


class ZetaDiagnosticsTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.B = coefficients(zeta_relative(0), 12, table=compute_table(12, 128))

    def test_positive_and_log_concave(self):
        diagnostics = diagnose(self.B)
        self.assertEqual(diagnostics.sign_pattern, SignPattern.CONSTANT)
        self.assertEqual(diagnostics.log_concave_up_to, 12)
        self.assertTrue(all(value.sign() == Sign.POSITIVE for value in diagnostics.rho.values()))

    def test_rho_approaches_one(self):
        report = rho_convergence_report(self.B)
        self.assertEqual(report.rho_trend, Trend.INCREASING)
        self.assertTrue(report.toward_one)
        self.assertTrue(mpmath.isfinite(report.grosswald_constant))

    def test_not_stable(self):
        result = stability_battery(self.B, 6)
        self.assertEqual(result.verdict, Verdict.FAIL)
        self.assertLessEqual(result.first_failure, 3)
