from fractions import Fraction

import mpmath
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from numerics.balls import BallReal, Sign, ball_sign, mpf_to_fraction, with_precision
from numerics.coefficients import (
    CoefficientKind,
    coefficient_from_json,
    coefficient_to_json,
    common_kind,
    pochhammer,
    sign_of,
)
from numerics.exceptions import SignUnknown
from numerics.precision import escalation_ladder

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
nonzero_rationals = rationals.filter(lambda q: q != 0)
precisions = st.sampled_from([8, 24, 53, 128])


class BallSignTests(SimpleTestCase):
    def test_positive_ball(self):
        ball = BallReal(mpmath.mpf(3), mpmath.mpf(1), 53)
        self.assertEqual(ball_sign(ball), Sign.POSITIVE)

    def test_exact_zero_ball(self):
        self.assertEqual(ball_sign(BallReal(mpmath.mpf(0), mpmath.mpf(0), 53)), Sign.ZERO)

    def test_zero_in_interior_is_unknown(self):
        ball = BallReal(mpmath.mpf("0.1"), mpmath.mpf("0.2"), 53)
        self.assertEqual(ball_sign(ball), Sign.UNKNOWN)

    def test_touching_zero_is_unknown(self):
        ball = BallReal(mpmath.mpf(1), mpmath.mpf(1), 53)
        self.assertEqual(ball_sign(ball), Sign.UNKNOWN)

    def test_negative_ball(self):
        self.assertEqual(BallReal.from_rational(Fraction(-7, 3), 64).sign(), Sign.NEGATIVE)


class WithPrecisionTests(SimpleTestCase):
    def test_one_third_at_64_bits(self):
        ball = BallReal.from_rational(Fraction(1, 3), 64)
        self.assertTrue(ball.contains(Fraction(1, 3)))
        self.assertLessEqual(mpf_to_fraction(ball.rad), Fraction(1, 2**62))

    def test_exact_two_survives_any_rounding(self):
        two = BallReal(mpmath.mpf(2), mpmath.mpf(0), 64)
        for bits in (2, 3, 10, 256):
            self.assertTrue(with_precision(two, bits).contains(2))

    def test_lower_precision_keeps_enclosure(self):
        ball = BallReal.from_rational(Fraction(22, 7), 256)
        coarse = with_precision(ball, 10)
        self.assertTrue(coarse.contains(Fraction(22, 7)))
        self.assertGreater(coarse.rad, ball.rad)

    def test_sum_of_thirds(self):
        third = BallReal.from_rational(Fraction(1, 3), 64)
        self.assertTrue((third + third).contains(Fraction(2, 3)))

    def test_exact_rationals_have_zero_radius(self):
        self.assertTrue(BallReal.from_rational(Fraction(3, 8), 16).is_exact())


class EnclosureTests(SimpleTestCase):
    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(x=rationals, y=rationals, bits=precisions)
    def test_ring_operations_enclose(self, x, y, bits):
        bx = BallReal.from_rational(x, bits)
        by = BallReal.from_rational(y, bits)
        self.assertTrue((bx + by).contains(x + y))
        self.assertTrue((bx - by).contains(x - y))
        self.assertTrue((bx * by).contains(x * y))

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(x=rationals, y=nonzero_rationals, bits=precisions)
    def test_division_encloses(self, x, y, bits):
        bx = BallReal.from_rational(x, bits)
        by = BallReal.from_rational(y, bits)
        if by.sign() == Sign.UNKNOWN:
            with self.assertRaises(SignUnknown):
                bx / by
        else:
            self.assertTrue((bx / by).contains(x / y))

    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(x=rationals, y=rationals, z=rationals)
    def test_chained_expression_encloses(self, x, y, z):
        bits = 40
        bx, by, bz = (BallReal.from_rational(v, bits) for v in (x, y, z))
        ball = (bx * by - bz) * (bx + 3) + by ** 3
        self.assertTrue(ball.contains((x * y - z) * (x + 3) + y ** 3))

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(x=rationals, bits=precisions)
    def test_sign_is_sound(self, x, bits):
        sign = BallReal.from_rational(x, bits).sign()
        if sign != Sign.UNKNOWN:
            self.assertEqual(sign, sign_of(x))

    def test_division_by_ball_containing_zero(self):
        around_zero = BallReal(mpmath.mpf(0), mpmath.mpf("0.5"), 53)
        with self.assertRaises(SignUnknown):
            BallReal.from_rational(1, 53) / around_zero

    def test_mixed_arithmetic_promotes_to_ball(self):
        ball = Fraction(1, 3) * BallReal.from_rational(3, 64)
        self.assertIsInstance(ball, BallReal)
        self.assertTrue(ball.contains(1))


class ExactFieldTests(SimpleTestCase):
    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(x=rationals, y=rationals, z=rationals)
    def test_field_axioms(self, x, y, z):
        self.assertEqual(x * (y + z), x * y + x * z)
        self.assertEqual((x + y) + z, x + (y + z))
        self.assertEqual(x + (-x), 0)
        if x != 0:
            self.assertEqual(x * (1 / x), 1)


class SerializationTests(SimpleTestCase):
    def test_ball_round_trip_is_bit_exact(self):
        ball = BallReal.from_rational(Fraction(-355, 113), 200) * BallReal.from_rational(Fraction(1, 7), 200)
        restored = coefficient_from_json(coefficient_to_json(ball))
        self.assertEqual(restored, ball)

    def test_rational_round_trip(self):
        self.assertEqual(coefficient_to_json(Fraction(-4, 6)), "-2/3")
        self.assertEqual(coefficient_from_json("-2/3"), Fraction(-2, 3))

    def test_common_kind(self):
        self.assertEqual(common_kind([Fraction(1), 2]), CoefficientKind.EXACT)
        self.assertEqual(common_kind([1, BallReal.from_rational(1, 64)]), CoefficientKind.BALL)


class HelperTests(SimpleTestCase):
    def test_escalation_ladder(self):
        self.assertEqual(list(escalation_ladder(128, 1024)), [128, 256, 512, 1024])

    def test_pochhammer(self):
        self.assertEqual(pochhammer(Fraction(1, 2), 3), Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2))
        self.assertEqual(pochhammer(5, 0), 1)
