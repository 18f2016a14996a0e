from fractions import Fraction
from math import factorial

import mpmath
from django.test import SimpleTestCase, tag
from hypothesis import given, settings
from hypothesis import strategies as st

from families.asymptotics import (
    brenke_dilated_limit,
    brenke_reversed_limit,
    derivative_shift_limit,
    gorz_limit,
    jensen_classical_limit,
    laguerre_reversed_target,
    p_alpha_limit,
    q_alpha_limit,
    sample_points,
    shifted_associate_limit,
    shifted_generator_limit,
    verify_scaled_limit,
)
from families.dunkl import (
    closed_form_discriminant,
    cubic_factor,
    discriminant_limit,
    dunkl_discriminant_check,
    even_A_dunkl_split,
)
from families.exceptions import GammaTableTooShort, InvalidParameter, NotEvenSeries, ScalingUndefined
from families.export import deviation_frame, discriminant_frame, sweep_frame, zero_sign_frame
from families.generation import (
    factorial_power,
    generate_family,
    laguerre,
    laguerre_by_recurrence,
    multi_shift_jensen,
)
from families.specs import appell_dunkl, brenke, jensen, jensen_shifted, p_alpha, q_alpha, qhat
from families.sweeps import (
    FamilyCell,
    FamilySweep,
    appell_soundness,
    certify_family,
    klv_sections,
    laguerre_polya_generator,
    zero_sign_profile,
)
from lpdiag.batteries import Verdict, certify_sequence
from operators.brenke import brenke_polynomials, reverse, shifted_generator
from operators.polynomials import RealPoly
from powerseries.series import TruncatedSeries, coefficients, dilate
from powerseries.specs import exp_series, explicit, hypergeometric_0fq
from realroots.certificates import RootStatus
from realroots.counting import count_real_roots
from zetacoeffs.tables import compute_table

positive_rationals = st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12)
gamma_lists = st.lists(positive_rationals, min_size=12, max_size=12).map(lambda xs: [Fraction(1)] + xs)
alphas = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(2)])


def series_of(values, label=""):
    return TruncatedSeries(explicit(values, label=label), tuple(values))


class GenerationTests(SimpleTestCase):
    gammas = [Fraction(1), Fraction(2, 3), Fraction(1, 5), Fraction(1, 7), Fraction(1, 20), Fraction(1, 90)]

    def test_qhat_zero_is_jensen(self):
        self.assertEqual(generate_family(qhat(0, 5), self.gammas), generate_family(jensen(5), self.gammas))

    def test_shifted_jensen_degree_one(self):
        for s in range(4):
            q = generate_family(jensen_shifted(s, 1), self.gammas)[1]
            self.assertEqual(q, RealPoly((Fraction(1), self.gammas[s + 1] / self.gammas[s])))
            certificate = count_real_roots(q)
            self.assertEqual(certificate.negative_count, 1)

    def test_appell_dunkl_cube(self):
        mu = Fraction(1, 3)
        family = generate_family(appell_dunkl(explicit([1, 3, 3, 1]), mu, 8))
        for n in range(3, 9):
            self.assertEqual(family[n], RealPoly.monomial(n - 3) * cubic_factor(mu, n))

    def test_brenke_matches_operators(self):
        A, B = exp_series(), hypergeometric_0fq([2])
        self.assertEqual(
            generate_family(brenke(A, B, 6)),
            brenke_polynomials(coefficients(A, 6), coefficients(B, 6), 6),
        )

    def test_gamma_table_too_short(self):
        with self.assertRaises(GammaTableTooShort):
            generate_family(jensen_shifted(3, 4), [1] * 5)

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidParameter):
            p_alpha(-1, 0, 3)
        with self.assertRaises(InvalidParameter):
            qhat(-1, 3)
        with self.assertRaises(InvalidParameter):
            jensen_shifted(-1, 3)

    def test_real_exponent_factorial_power(self):
        root = factorial_power(6, Fraction(1, 2), bits=128)
        self.assertTrue((root * root).contains(720))
        self.assertEqual(factorial_power(1, Fraction(3, 2), bits=64).sign(), root.sign())
        family = generate_family(qhat(Fraction(1, 2), 3), self.gammas, bits=128)
        self.assertFalse(family[3].is_exact)

    @settings(max_examples=25, deadline=None)
    @given(gamma_lists, st.integers(min_value=0, max_value=3), alphas)
    def test_shift_consistency(self, gammas, s, alpha):
        n_max = 5
        varsigma = series_of([g / factorial(n) for n, g in enumerate(gammas[: n_max + s + 1])])
        C = dilate(coefficients(hypergeometric_0fq([alpha + 1]), n_max + s), -1)
        expected = brenke_polynomials(shifted_generator(varsigma, C, s), coefficients(exp_series(), n_max), n_max)
        generated = generate_family(p_alpha(alpha, s, n_max), gammas)
        for n in range(n_max + 1):
            self.assertEqual(generated[n], expected[n].scale((-1) ** s))

    @settings(max_examples=25, deadline=None)
    @given(gamma_lists, st.integers(min_value=0, max_value=3), alphas)
    def test_dual_families_are_brenke(self, gammas, s, alpha):
        n_max = 5
        associate = series_of([gammas[j + s] / (gammas[s] * factorial(j)) for j in range(n_max + 1)])
        laguerre_side = dilate(coefficients(hypergeometric_0fq([alpha + 1]), n_max), -1)
        self.assertEqual(
            generate_family(q_alpha(alpha, s, n_max), gammas),
            brenke_polynomials(laguerre_side, associate, n_max),
        )
        self.assertEqual(
            generate_family(jensen_shifted(s, n_max), gammas),
            brenke_polynomials(coefficients(exp_series(), n_max), associate, n_max),
        )

    @settings(max_examples=20, deadline=None)
    @given(gamma_lists, st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=5))
    def test_qhat_derivative_ladder(self, gammas, N, l):
        n = 5
        p = RealPoly.monomial(n) * generate_family(qhat(N, n), gammas)[n]
        for _ in range(n - l):
            p = p.derivative()
        self.assertEqual(p, RealPoly.monomial(l) * multi_shift_jensen(gammas, [l] + [n] * (N - 1), n))


class LaguerreTests(SimpleTestCase):
    def test_low_degrees(self):
        alpha = Fraction(1, 2)
        self.assertEqual(laguerre(0, alpha), RealPoly.constant(1))
        self.assertEqual(laguerre(1, alpha), RealPoly((alpha + 1, Fraction(-1))))

    def test_recurrence_agrees(self):
        for alpha in (Fraction(0), Fraction(1, 2), Fraction(3)):
            for n in range(9):
                self.assertEqual(laguerre(n, alpha), laguerre_by_recurrence(n, alpha), (n, alpha))

    def test_zeros_positive_and_simple(self):
        for n in range(1, 11):
            certificate = count_real_roots(laguerre(n, Fraction(1, 2)))
            self.assertEqual(certificate.status, RootStatus.REAL_ROOTED)
            self.assertEqual(certificate.positive_count, n)
            self.assertTrue(certificate.all_simple_away_from_zero)

    def test_invalid_alpha(self):
        with self.assertRaises(InvalidParameter):
            laguerre(3, -1)
        with self.assertRaises(InvalidParameter):
            laguerre_by_recurrence(-1, 0)

    def test_reversed_target_matches_recurrence(self):
        for n in range(5):
            target = laguerre_reversed_target(n, 0)
            oracle = reverse(laguerre_by_recurrence(n, 0), n)
            for z in (Fraction(-3), Fraction(1, 2), Fraction(7, 3)):
                self.assertEqual(target(z), oracle(z))


class ScaledLimitTests(SimpleTestCase):
    def test_sample_points(self):
        points = sample_points(Fraction(2))
        self.assertEqual(len(points), 41)
        self.assertTrue(all(abs(abs(z) - 1) < mpmath.mpf("1e-30") for z in points[:32]))
        self.assertEqual(points[32], -1)

    def test_brenke_reversed(self):
        report = verify_scaled_limit(brenke_reversed_limit(exp_series(), hypergeometric_0fq([2]), [10, 20, 30]))
        self.assertLess(report.error(30), report.error(10))
        self.assertTrue(report.monotone_tail)
        self.assertEqual(report.sample_count, 41)

    def test_brenke_dilated(self):
        report = verify_scaled_limit(brenke_dilated_limit(hypergeometric_0fq([2]), exp_series(), [10, 20, 30]))
        self.assertLess(report.error(30), report.error(10))

    def test_jensen_classical(self):
        check = jensen_classical_limit(exp_series(), [5, 10, 20, 40])
        self.assertTrue(verify_scaled_limit(check, factor=0.5).converged)
        self.assertFalse(verify_scaled_limit(check).converged)

    def test_shifted_generator(self):
        check = shifted_generator_limit(exp_series(), exp_series(), hypergeometric_0fq([1]), 3, [5, 10, 20])
        report = verify_scaled_limit(check)
        self.assertEqual(report.index_name, "s")
        self.assertLess(report.error(20), report.error(5))

    def test_shifted_associate(self):
        check = shifted_associate_limit(exp_series(), exp_series(), hypergeometric_0fq([1]), 3, [5, 10, 20])
        report = verify_scaled_limit(check)
        self.assertLess(report.error(20), report.error(5))

    def test_derivative_shift(self):
        report = verify_scaled_limit(derivative_shift_limit(exp_series(), hypergeometric_0fq([1]), 3, [5, 10, 20]))
        self.assertLess(report.error(20), report.error(10))
        self.assertLess(report.error(10), report.error(5))

    def test_scaling_undefined(self):
        with self.assertRaises(ScalingUndefined):
            brenke_reversed_limit(exp_series(), explicit([1, 1, 0]), [1])

    def test_deviation_frame(self):
        report = verify_scaled_limit(jensen_classical_limit(exp_series(), [2, 4]))
        frame = deviation_frame(report)
        self.assertEqual(list(frame["n"]), [2, 4])
        self.assertEqual(report.to_dict()["samples"], 41)


class ZetaFamilyTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.table = compute_table(14, 128)

    def test_qhat_real_rooted(self):
        for N in (0, 1, 2):
            sweep = certify_family(qhat(N, 8), gammas=self.table)
            self.assertEqual(sweep.status, RootStatus.REAL_ROOTED, N)

    def test_shifted_jensen_real_rooted(self):
        sweep = certify_family(jensen_shifted(0, 3), shifts=range(11), gammas=self.table)
        self.assertEqual(sweep.status, RootStatus.REAL_ROOTED)
        self.assertEqual(sweep.thresholds(), {n: 0 for n in range(4)})
        self.assertEqual(len(sweep.cells), 4 * 11)
        self.assertEqual(len(sweep_frame(sweep)), 44)

    def test_alpha_families_real_rooted(self):
        for alpha in (Fraction(0), Fraction(1, 2)):
            for spec in (p_alpha(alpha, 0, 3), q_alpha(alpha, 0, 3)):
                sweep = certify_family(spec, shifts=range(11), gammas=self.table)
                self.assertEqual(sweep.status, RootStatus.REAL_ROOTED, spec.describe())

    def test_gorz(self):
        report = verify_scaled_limit(gorz_limit(3, [2, 5, 10], self.table))
        self.assertLess(report.error(10), report.error(2))

    def test_p_alpha_limit(self):
        report = verify_scaled_limit(p_alpha_limit(0, 2, [2, 5, 10], self.table))
        self.assertLess(report.error(10), report.error(5))
        self.assertLess(report.error(5), report.error(2))

    def test_q_alpha_limit(self):
        report = verify_scaled_limit(q_alpha_limit(Fraction(1, 2), 2, [2, 5, 10], self.table))
        self.assertLess(report.error(10), report.error(2))

    def test_short_table(self):
        with self.assertRaises(GammaTableTooShort):
            gorz_limit(3, [11], self.table)


@tag("slow")
class LongZetaFamilyTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.table = compute_table(29, 256)

    def test_qhat_to_twenty(self):
        for N in (0, 1, 2):
            self.assertEqual(certify_family(qhat(N, 20), gammas=self.table).status, RootStatus.REAL_ROOTED, N)

    def test_shifted_jensen_grid(self):
        sweep = certify_family(jensen_shifted(0, 4), shifts=range(26), gammas=self.table)
        self.assertEqual(sweep.status, RootStatus.REAL_ROOTED)

    def test_gorz_long_range(self):
        report = verify_scaled_limit(gorz_limit(3, [5, 15, 25], self.table))
        self.assertLess(report.error(25), report.error(5))

    def test_p_alpha_limit_long_range(self):
        report = verify_scaled_limit(p_alpha_limit(0, 2, [5, 10, 20], self.table))
        self.assertLess(report.error(20), report.error(10))
        self.assertLess(report.error(10), report.error(5))


class DunklTests(SimpleTestCase):
    def test_known_values(self):
        report = dunkl_discriminant_check(0, range(4, 6))
        self.assertEqual(report.rows[0].resultant, -27648)
        self.assertEqual(report.rows[1].resultant, -62208)
        self.assertEqual(cubic_factor(0, 4), RealPoly((32, 48, 12, 1)))

    def test_closed_forms_agree(self):
        for mu in (Fraction(0), Fraction(1, 3), Fraction(-1, 4)):
            self.assertTrue(dunkl_discriminant_check(mu, range(4, 13)).all_agree, mu)

    def test_limit(self):
        for mu in (Fraction(0), Fraction(1, 3), Fraction(-1, 4)):
            ratio = closed_form_discriminant(mu, 200) / 200**4 / discriminant_limit(mu)
            self.assertLess(abs(ratio - 1), Fraction(15, 100), mu)

    def test_appell_case(self):
        report = dunkl_discriminant_check(Fraction(-1, 2), range(3, 13))
        self.assertEqual(report.limit, 0)
        self.assertEqual(report.not_real_rooted_at, ())

    def test_non_real_zeros(self):
        report = dunkl_discriminant_check(Fraction(1, 3), range(3, 13))
        self.assertIn(4, report.not_real_rooted_at)
        self.assertEqual(list(discriminant_frame(report)["n"]), list(range(3, 13)))

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            dunkl_discriminant_check(-1, range(4, 6))
        with self.assertRaises(InvalidParameter):
            dunkl_discriminant_check(0, range(2, 6))

    def test_even_split(self):
        mu = Fraction(1, 2)
        for values in ([1], [1, 0, -1]):
            report = even_A_dunkl_split(coefficients(explicit(values), 6), mu, 6)
            self.assertTrue(report.all_match, values)
        for row in even_A_dunkl_split(coefficients(explicit([1, 0, -1]), 6), mu, 6).rows:
            self.assertEqual(row.q_status, RootStatus.REAL_ROOTED)
            self.assertEqual(row.q_negative_zeros, 0)

    def test_odd_series_rejected(self):
        with self.assertRaises(NotEvenSeries):
            even_A_dunkl_split(coefficients(exp_series(), 4), 0, 4)


class SweepTests(SimpleTestCase):
    def test_exact_stand_in(self):
        sweep = certify_family(jensen_shifted(0, 3), shifts=range(3), gammas=[1] * 8)
        self.assertEqual(sweep.status, RootStatus.REAL_ROOTED)
        data = sweep.to_dict()
        self.assertEqual(data["cells"][0]["family"], "JENSEN_SHIFTED")
        self.assertEqual(data["thresholds"], {"0": 0, "1": 0, "2": 0, "3": 0})

    def test_thresholds(self):
        cells = (
            FamilyCell(2, 0, RootStatus.NOT_REAL_ROOTED, 0, None),
            FamilyCell(2, 1, RootStatus.REAL_ROOTED, 2, None),
            FamilyCell(2, 2, RootStatus.REAL_ROOTED, 2, None),
            FamilyCell(3, 0, RootStatus.REAL_ROOTED, 3, None),
            FamilyCell(3, 1, RootStatus.REAL_ROOTED, 3, None),
            FamilyCell(3, 2, RootStatus.INCONCLUSIVE, 1, 128),
        )
        sweep = FamilySweep(jensen_shifted(0, 3), (0, 1, 2), cells)
        self.assertEqual(sweep.thresholds(), {2: 1, 3: None})
        self.assertEqual(sweep.status, RootStatus.NOT_REAL_ROOTED)
        self.assertEqual(sweep.failures, [cells[0]])

    def test_sections(self):
        self.assertEqual(klv_sections(2, 15).verdict, Verdict.PASS)
        self.assertEqual(klv_sections(Fraction(19, 10), 15).first_failure, 2)
        self.assertEqual(klv_sections(2, 12, factorial=True).verdict, Verdict.PASS)
        self.assertEqual(klv_sections(Fraction(13, 10), 12, factorial=True).first_failure, 2)

    def test_zero_sign_profile(self):
        rows = zero_sign_profile(exp_series(), [1, 2], 5)
        self.assertEqual(len(rows), 12)
        for row in rows:
            self.assertEqual((row.positive, row.negative, row.non_real), (0, row.n, 0))
        self.assertEqual(list(zero_sign_frame(rows).columns)[:2], ["phi", "n"])


class AppellSoundnessTests(SimpleTestCase):
    def test_generator_coefficients(self):
        A = coefficients(laguerre_polya_generator([-1], 1, 3), 3)
        self.assertEqual(A.coeffs, (1, 2, Fraction(3, 2), Fraction(2, 3)))
        self.assertEqual(coefficients(laguerre_polya_generator([], 0, 2), 2).coeffs, (1, 0, 0))

    def test_random_generators_real_rooted(self):
        report = appell_soundness(count=20, n_max=20, seed=2024)
        self.assertEqual(report.verdict, Verdict.PASS, report.to_dict())
        self.assertEqual(len(report.samples), 20)
        for sample in report.samples:
            self.assertLessEqual(len(sample.roots), 6)
            self.assertEqual(sample.result.checked_up_to, 20)

    def test_every_member_certified(self):
        B = coefficients(exp_series(), 20)
        roots = [Fraction(-3), Fraction(1, 2), Fraction(7, 4), Fraction(-1, 3)]
        self.assertEqual(RealPoly.from_roots(roots).degree, 4)
        A = coefficients(laguerre_polya_generator(roots, Fraction(-2, 3), 20), 20)
        for n, p in enumerate(brenke_polynomials(A, B, 20)):
            self.assertEqual(count_real_roots(p).status, RootStatus.REAL_ROOTED, n)

    def test_generator_outside_class_fails(self):
        B = coefficients(exp_series(), 6)
        A = coefficients(explicit([1, 0, 1], label="1+z^2"), 6)
        result = certify_sequence("1+z^2", brenke_polynomials(A, B, 6))
        self.assertEqual(result.verdict, Verdict.FAIL)
        self.assertEqual(result.first_failure, 2)

    def test_seeded(self):
        self.assertEqual(
            appell_soundness(count=3, n_max=8, seed=9).to_dict(),
            appell_soundness(count=3, n_max=8, seed=9).to_dict(),
        )
