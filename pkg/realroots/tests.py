import random
from fractions import Fraction

import sympy
from django.test import SimpleTestCase, override_settings

from operators.brenke import brenke_polynomials
from operators.polynomials import RealPoly
from powerseries.series import coefficients
from powerseries.specs import exp_series, explicit
from realroots.certificates import CertificateMethod, InterlacingRelation, RootStatus
from realroots.counting import count_real_roots, sign_counts, zero_multiplicity
from realroots.discriminants import cubic_discriminant, discriminant
from realroots.enclosures import ball_certificate, sign_change_certificate, widen
from realroots.exceptions import DegreeMismatch, NotRealRooted, WrongDegree, ZeroPolynomial
from realroots.interlacing import check_interlacing, obreshkov_check

x = sympy.Symbol("x")


def poly(*coeffs):
    return RealPoly(tuple(Fraction(c) for c in coeffs))


def random_construction(rng, max_degree=8):
    """Random product of rational linear factors and quadratics without real zeros."""
    p = RealPoly.constant(Fraction(rng.choice([-3, -1, 1, 2]), rng.randint(1, 3)))
    roots = []
    while p.degree < max_degree - 1 and rng.random() < 0.8:
        if rng.random() < 0.7:
            root = Fraction(rng.randint(-12, 12), 4)
            roots.append(root)
            p = p * RealPoly((-root, 1))
        else:
            b = Fraction(rng.randint(-6, 6), 2)
            c = b * b / 4 + Fraction(rng.randint(1, 8), 4)
            p = p * RealPoly((c, b, 1))
    return p, roots


def grid_sign_changes(roots):
    """Brute-force count of distinct real zeros of prod (x - r) on a grid missing every root."""
    if not roots:
        return 0
    distinct = RealPoly.from_roots(sorted(set(roots)))
    step = Fraction(1, 64)
    point = Fraction(-4) + step / 2
    changes = 0
    previous = distinct(point)
    while point < 4:
        point += step
        value = distinct(point)
        if (value > 0) != (previous > 0):
            changes += 1
        previous = value
    return changes


class CountRealRootsTests(SimpleTestCase):
    def test_no_real_zeros(self):
        certificate = count_real_roots(poly(1, 0, 1))
        self.assertEqual(certificate.real_root_count, 0)
        self.assertEqual(certificate.status, RootStatus.NOT_REAL_ROOTED)

    def test_quadratic_with_negative_discriminant(self):
        certificate = count_real_roots(poly(2, Fraction(-8, 3), 1))
        self.assertEqual(certificate.real_root_count, 0)
        self.assertEqual(certificate.non_real_count, 2)

    def test_cubic_with_one_real_zero(self):
        certificate = count_real_roots(poly(Fraction(1, 2), 3, 3, 1))
        self.assertEqual(certificate.real_root_count, 1)
        self.assertEqual(certificate.status, RootStatus.NOT_REAL_ROOTED)

    def test_constant(self):
        certificate = count_real_roots(RealPoly.constant(3))
        self.assertEqual(certificate.status, RootStatus.REAL_ROOTED)
        self.assertEqual(certificate.real_root_count, 0)
        self.assertEqual(certificate.method, CertificateMethod.CONSTANT)

    def test_zero_polynomial(self):
        with self.assertRaises(ZeroPolynomial):
            count_real_roots(RealPoly())

    def test_multiplicities(self):
        p = RealPoly.from_roots([1, 1, -1])
        certificate = count_real_roots(p)
        self.assertTrue(certificate.is_real_rooted)
        self.assertEqual(certificate.real_root_count, 3)
        self.assertEqual(certificate.multiplicities, (1, 2))
        self.assertFalse(certificate.all_simple_away_from_zero)

    def test_double_zero_at_origin_is_not_a_simplicity_defect(self):
        p = RealPoly.from_roots([0, 0, 2, -3])
        certificate = count_real_roots(p)
        self.assertEqual(certificate.zero_multiplicity, 2)
        self.assertTrue(certificate.all_simple_away_from_zero)
        self.assertIn((Fraction(0), Fraction(0)), certificate.isolating_intervals)

    def test_isolating_intervals_contain_the_zeros(self):
        roots = [Fraction(-7, 3), Fraction(1, 2), Fraction(2)]
        certificate = count_real_roots(RealPoly.from_roots(roots))
        self.assertEqual(len(certificate.isolating_intervals), 3)
        for root, (lo, hi) in zip(roots, certificate.isolating_intervals):
            self.assertTrue(lo == hi == root or lo < root <= hi)

    def test_irrational_zeros(self):
        p = poly(-2, 0, 1)
        certificate = count_real_roots(p)
        self.assertTrue(certificate.is_real_rooted)
        self.assertEqual(len(certificate.isolating_intervals), 2)
        for lo, hi in certificate.isolating_intervals:
            self.assertLess(p(lo) * p(hi), 0)

    def test_sign_counts(self):
        self.assertEqual(sign_counts(RealPoly.from_roots([1, -2, -3])), (1, 2))
        self.assertEqual(sign_counts(RealPoly.from_roots([0, 0, 5])), (1, 0))

    def test_agrees_with_constructed_zeros(self):
        rng = random.Random(7)
        for _ in range(300):
            p, roots = random_construction(rng)
            if p.degree < 0:
                continue
            certificate = count_real_roots(p)
            self.assertEqual(certificate.real_root_count, len(roots), str(p))
            self.assertEqual(len(certificate.isolating_intervals), grid_sign_changes(roots), str(p))
            self.assertEqual(sum(certificate.multiplicities), len(roots))

    def test_agrees_with_sympy_on_random_polynomials(self):
        rng = random.Random(11)
        for _ in range(200):
            degree = rng.randint(1, 8)
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(degree)]
            p = RealPoly(tuple(coeffs) + (Fraction(rng.choice([-1, 1, 3])),))
            expected = len(sympy.real_roots(p.to_sympy(x)))
            self.assertEqual(count_real_roots(p).real_root_count, expected, str(p))

    def test_to_dict(self):
        data = count_real_roots(RealPoly.from_roots([Fraction(1, 2), -1])).to_dict()
        self.assertEqual(data["status"], "REAL_ROOTED")
        self.assertEqual(data["real_root_count"], 2)
        self.assertTrue(all(isinstance(end, str) for pair in data["isolating_intervals"] for end in pair))


class ZeroMultiplicityTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(zero_multiplicity(poly(0, 0, 0, -1, 1)), 3)
        self.assertEqual(zero_multiplicity(poly(1, 5)), 0)

    def test_brenke_family_with_polynomial_A(self):
        A = coefficients(explicit([1, 3, 2]), 10)
        family = brenke_polynomials(A, coefficients(explicit([1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]), 10), 10)
        for n in range(3, 11):
            self.assertEqual(zero_multiplicity(family[n]), n - 2)

    def test_zero_polynomial(self):
        with self.assertRaises(ZeroPolynomial):
            zero_multiplicity(RealPoly())


class BallPathTests(SimpleTestCase):
    def test_irrational_zeros_on_balls(self):
        certificate = count_real_roots(widen(poly(-2, 0, 1), 128))
        self.assertEqual(certificate.status, RootStatus.REAL_ROOTED)
        self.assertEqual(certificate.precision_used, 128)

    def test_no_real_zeros_on_balls(self):
        certificate = count_real_roots(widen(poly(1, 0, 1), 128))
        self.assertEqual(certificate.status, RootStatus.NOT_REAL_ROOTED)

    def test_exact_zero_coefficients_give_zero_multiplicity(self):
        certificate = count_real_roots(widen(RealPoly.from_roots([0, 0, 1, -1]), 128))
        self.assertEqual(certificate.zero_multiplicity, 2)
        self.assertTrue(certificate.is_real_rooted)

    @override_settings(BRENKE_MAX_BITS=512)
    def test_agrees_with_exact_path(self):
        rng = random.Random(3)
        for _ in range(60):
            p, roots = random_construction(rng, max_degree=6)
            if p.degree < 1 or len(set(roots)) != len(roots):
                continue
            exact = count_real_roots(p, isolate=False)
            ball = count_real_roots(widen(p, 128), isolate=False)
            if ball.status != RootStatus.INCONCLUSIVE:
                self.assertEqual(ball.status, exact.status, str(p))
                self.assertEqual(ball.real_root_count, exact.real_root_count, str(p))

    @override_settings(BRENKE_MAX_BITS=512)
    def test_precision_is_monotone(self):
        rng = random.Random(5)
        for _ in range(20):
            p, roots = random_construction(rng, max_degree=6)
            if p.degree < 1 or len(set(roots)) != len(roots):
                continue
            verdicts = set()
            for bits in (64, 128, 256):
                certificate = ball_certificate(widen(p, bits), bits)
                if certificate.status != RootStatus.INCONCLUSIVE:
                    verdicts.add(certificate.status)
            self.assertLessEqual(len(verdicts), 1, str(p))

    def test_sign_change_certificate(self):
        real = widen(RealPoly.from_roots([-1, Fraction(1, 2), 2]), 128)
        self.assertTrue(sign_change_certificate(list(real.coeffs), 128))
        self.assertFalse(sign_change_certificate(list(widen(poly(1, 0, 1), 128).coeffs), 128))


class DiscriminantTests(SimpleTestCase):
    def test_three_real_zeros(self):
        self.assertEqual(cubic_discriminant(poly(0, -1, 0, 1)), 4)

    def test_triple_zero(self):
        self.assertEqual(cubic_discriminant(poly(0, 0, 0, 1)), 0)

    def test_one_real_zero_means_negative(self):
        self.assertLess(cubic_discriminant(poly(Fraction(1, 2), 3, 3, 1)), 0)

    def test_wrong_degree(self):
        with self.assertRaises(WrongDegree):
            cubic_discriminant(poly(1, 0, 1))

    def test_resultant_form_matches_cubic_formula(self):
        rng = random.Random(2)
        for _ in range(30):
            p = poly(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)), rng.choice([-2, 1, 3]))
            self.assertEqual(discriminant(p), cubic_discriminant(p))

    def test_quadratic(self):
        self.assertEqual(discriminant(poly(2, Fraction(-8, 3), 1)), Fraction(-8, 9))

    def test_sign_agrees_with_real_zero_count(self):
        rng = random.Random(4)
        for _ in range(30):
            p = poly(*(rng.randint(-6, 6) for _ in range(3)), 1)
            delta = cubic_discriminant(p)
            count = count_real_roots(p, isolate=False).real_root_count
            if delta < 0:
                self.assertEqual(count, 1)
            elif delta > 0:
                self.assertEqual(count, 3)

    def test_ball_cubic_encloses_exact(self):
        p = poly(Fraction(1, 3), Fraction(-2, 7), 1, 5)
        self.assertTrue(discriminant(widen(p, 128)).contains(cubic_discriminant(p)))


class InterlacingTests(SimpleTestCase):
    def test_strict(self):
        report = check_interlacing(poly(0, 1), poly(-1, 0, 1))
        self.assertEqual(report.relation, InterlacingRelation.STRICT)

    def test_appell_pair(self):
        family = brenke_polynomials(coefficients(explicit([1, 3, 2]), 2), coefficients(exp_series(), 2), 2)
        self.assertEqual(check_interlacing(family[1], family[2]).relation, InterlacingRelation.STRICT)

    def test_common_zero(self):
        p = RealPoly.from_roots([0, 0, 1, -1])
        q = RealPoly.from_roots([0, Fraction(1, 2), Fraction(-1, 2)])
        report = check_interlacing(q, p)
        self.assertEqual(report.relation, InterlacingRelation.STRICT_EXCEPT_COMMON_ZERO)
        self.assertEqual(report.common_zero, (Fraction(0), Fraction(0)))
        self.assertEqual(report.to_dict()["relation"], "STRICT_EXCEPT_COMMON_ZERO_AT")

    def test_weak(self):
        p = RealPoly.from_roots([-1, 0, 1])
        q = RealPoly.from_roots([0, 1])
        self.assertEqual(check_interlacing(q, p).relation, InterlacingRelation.WEAK)

    def test_fails_with_witness(self):
        report = check_interlacing(poly(-2, 1), poly(-1, 0, 1))
        self.assertEqual(report.relation, InterlacingRelation.FAILS)
        q_zero, p_zero = report.witness
        self.assertTrue(q_zero[0] < 2 <= q_zero[1] or q_zero == (2, 2))
        self.assertTrue(p_zero[0] < 1 <= p_zero[1] or p_zero == (1, 1))

    def test_degree_mismatch(self):
        with self.assertRaises(DegreeMismatch):
            check_interlacing(poly(-1, 0, 1), poly(-1, 0, 1))

    def test_not_real_rooted(self):
        with self.assertRaises(NotRealRooted):
            check_interlacing(poly(0, 1), poly(1, 0, 1))

    def test_ball_path(self):
        q, p = widen(poly(0, 1), 128), widen(RealPoly.from_roots([-2, Fraction(3, 2)]), 128)
        self.assertEqual(check_interlacing(q, p).relation, InterlacingRelation.STRICT)


class ObreshkovTests(SimpleTestCase):
    def test_interlacing_pair_has_real_rooted_combinations(self):
        q = RealPoly.from_roots([-1, Fraction(1, 2)])
        p = RealPoly.from_roots([-2, 0, 3])
        report = obreshkov_check(q, p, trials=50, seed=1)
        self.assertEqual(report.relation, InterlacingRelation.STRICT)
        self.assertEqual(report.failures, ())
        self.assertTrue(report.consistent)

    def test_failing_pair_yields_witness(self):
        q, p = poly(-2, 1), poly(-1, 0, 1)
        report = obreshkov_check(q, p, trials=50, seed=1)
        self.assertEqual(report.relation, InterlacingRelation.FAILS)
        self.assertIsNotNone(report.witness)
        alpha, beta = report.witness
        combination = p * alpha + q * beta
        self.assertEqual(count_real_roots(combination).status, RootStatus.NOT_REAL_ROOTED)
        self.assertTrue(report.to_dict()["consistent"])
