from fractions import Fraction
from math import factorial

import mpmath
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from numerics.balls import BallReal
from numerics.coefficients import CoefficientKind
from powerseries.exceptions import InvalidParameter, TruncationTooShort
from powerseries.generators import dunkl_weight, term_ratio
from powerseries.series import coefficients, dilate, evaluate, series_to_dict
from powerseries.specs import (
    SeriesKind,
    as_ball,
    bq,
    dunkl_e,
    exp_series,
    explicit,
    geometric,
    hypergeometric_0fq,
    log_like,
    partial_theta,
    q_exponential,
    shifted,
    stability,
    trivial_rational,
)

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=20)
explicit_lists = st.lists(small_rationals, min_size=1, max_size=8).map(lambda xs: [Fraction(1)] + xs)


class CoefficientExamplesTests(SimpleTestCase):
    def test_exp(self):
        self.assertEqual(list(coefficients(exp_series(), 3).coeffs), [1, 1, Fraction(1, 2), Fraction(1, 6)])

    def test_hypergeometric_phi_one(self):
        self.assertEqual(list(coefficients(hypergeometric_0fq([1]), 2).coeffs), [1, 1, Fraction(1, 4)])

    def test_trivial_rational(self):
        self.assertEqual(
            list(coefficients(trivial_rational(), 5).coeffs),
            [1, -1, 1, 1, Fraction(-1, 2), Fraction(1, 2)],
        )

    def test_dunkl_minus_half_is_exp(self):
        self.assertEqual(list(coefficients(dunkl_e(Fraction(-1, 2)), 3).coeffs), [1, 1, Fraction(1, 2), Fraction(1, 6)])

    def test_geometric_and_log_like(self):
        self.assertEqual(list(coefficients(geometric(), 4).coeffs), [1] * 5)
        self.assertEqual(
            list(coefficients(log_like(), 3).coeffs), [1, 1, Fraction(1, 2), Fraction(1, 3)]
        )

    def test_bq(self):
        self.assertEqual(list(coefficients(bq(2), 3).coeffs), [1, 2, 16, 512])

    def test_explicit_is_normalized(self):
        series = coefficients(explicit([2, 4, 6]), 4)
        self.assertEqual(list(series.coeffs), [1, 2, 3, 0, 0])

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidParameter):
            hypergeometric_0fq([0])
        with self.assertRaises(InvalidParameter):
            bq(1)
        with self.assertRaises(InvalidParameter):
            dunkl_e(-2)
        with self.assertRaises(InvalidParameter):
            explicit([0, 1])
        with self.assertRaises(InvalidParameter):
            coefficients(exp_series(), -1)


class ConsistencyTests(SimpleTestCase):
    named_specs = [
        exp_series(),
        hypergeometric_0fq([1]),
        hypergeometric_0fq([Fraction(3, 2), 2, Fraction(1, 3)]),
        dunkl_e(Fraction(1, 3)),
        dunkl_e(Fraction(-3, 4)),
        geometric(),
        bq(3),
        trivial_rational(),
        log_like(),
        partial_theta(2),
        partial_theta(Fraction(7, 2), factorial=True),
        q_exponential(Fraction(1, 2)),
        q_exponential(Fraction(2, 3), large=True),
    ]

    def test_closed_form_matches_term_recurrence(self):
        for spec in self.named_specs:
            series = coefficients(spec, 20)
            for n in range(1, 21):
                with self.subTest(kind=spec.kind, n=n):
                    self.assertEqual(series[n], series[n - 1] * term_ratio(spec, n))

    def test_every_series_is_normalized(self):
        for spec in self.named_specs:
            self.assertEqual(coefficients(spec, 5)[0], 1)

    def test_dunkl_parity_structure(self):
        mu = Fraction(2, 7)
        series = coefficients(dunkl_e(mu), 20)
        for n in range(21):
            k, odd = divmod(n, 2)
            if odd:
                weight = 2 ** (2 * k + 1) * factorial(k) * rising(mu + 1, k + 1)
            else:
                weight = 2 ** (2 * k) * factorial(k) * rising(mu + 1, k)
            self.assertEqual(series[n], 1 / weight)
            self.assertEqual(dunkl_weight(n, mu), weight)

    def test_ball_series_enclose_exact(self):
        exact = coefficients(hypergeometric_0fq([Fraction(1, 3)]), 12)
        balls = coefficients(as_ball(hypergeometric_0fq([Fraction(1, 3)])), 12, bits=80)
        self.assertEqual(balls.coefficient_kind, CoefficientKind.BALL)
        for c, ball in zip(exact.coeffs, balls.coeffs):
            self.assertTrue(ball.contains(c))

    def test_stability_series(self):
        self.assertEqual(
            list(coefficients(stability(exp_series()), 5).coeffs),
            [Fraction(1, factorial(n)) for n in range(6)],
        )
        self.assertEqual(
            list(coefficients(stability(geometric()), 5).coeffs),
            [Fraction(1, factorial(n + 1)) for n in range(6)],
        )

    def test_shift_of_order_zero_is_identity(self):
        base = explicit([1, 2, Fraction(1, 3), 5, -1])
        self.assertEqual(
            coefficients(shifted(base, hypergeometric_0fq([2]), 0), 4).coeffs,
            coefficients(base, 4).coeffs,
        )

    def test_short_truncation(self):
        with self.assertRaises(TruncationTooShort):
            coefficients(exp_series(), 3)[4]


def rising(x, k):
    result = Fraction(1)
    for i in range(k):
        result *= x + i
    return result


class DilateTests(SimpleTestCase):
    def test_dilate_by_zero(self):
        self.assertEqual(list(dilate(coefficients(exp_series(), 4), 0).coeffs), [1, 0, 0, 0, 0])

    def test_dilate_geometric(self):
        self.assertEqual(list(dilate(coefficients(geometric(), 3), 2).coeffs), [1, 2, 4, 8])

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(coeffs=explicit_lists, a=small_rationals, b=small_rationals)
    def test_composition_law(self, coeffs, a, b):
        series = coefficients(explicit(coeffs), len(coeffs) - 1)
        self.assertEqual(dilate(dilate(series, a), b).coeffs, dilate(series, a * b).coeffs)

    def test_dilation_is_part_of_the_spec(self):
        series = dilate(coefficients(exp_series(), 6), 3)
        self.assertEqual(coefficients(series.spec, 6).coeffs, series.coeffs)


class EvaluateTests(SimpleTestCase):
    def test_exp_at_one(self):
        value = evaluate(coefficients(exp_series(), 20), Fraction(1))
        with mpmath.workdps(40):
            error = abs(mpmath.mpf(value.numerator) / value.denominator - mpmath.e)
        self.assertLess(error, mpmath.mpf(10) ** -15)

    def test_at_zero_is_one(self):
        for spec in (exp_series(), bq(5), trivial_rational(), log_like()):
            self.assertEqual(evaluate(coefficients(spec, 7), 0), 1)

    def test_geometric_partial_sum(self):
        for n in (0, 1, 5, 30):
            self.assertEqual(
                evaluate(coefficients(geometric(), n), Fraction(1, 2)),
                2 * (1 - Fraction(1, 2 ** (n + 1))),
            )

    def test_ball_evaluation_encloses(self):
        series = coefficients(as_ball(exp_series()), 15, bits=64)
        value = evaluate(series, BallReal.from_rational(Fraction(1, 3), 64))
        exact = evaluate(coefficients(exp_series(), 15), Fraction(1, 3))
        self.assertTrue(value.contains(exact))

    def test_complex_evaluation(self):
        value = evaluate(coefficients(exp_series(), 40), mpmath.mpc(0, 1))
        with mpmath.workdps(40):
            error = abs(value - mpmath.exp(mpmath.mpc(0, 1)))
        self.assertLess(error, mpmath.mpf(10) ** -30)


class SerializationTests(SimpleTestCase):
    def test_series_to_dict(self):
        data = series_to_dict(coefficients(hypergeometric_0fq([2]), 2))
        self.assertEqual(data["spec"]["kind"], SeriesKind.HYPERGEOMETRIC_0FQ.value)
        self.assertEqual(data["spec"]["phi"], ["2/1"])
        self.assertEqual(data["coeffs"], ["1/1", "1/2", "1/12"])
        self.assertEqual(data["truncation_order"], 2)
