from fractions import Fraction
from math import factorial

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from numerics.coefficients import pochhammer
from operators.brenke import (
    appell_dunkl_polynomials,
    brenke_polynomials,
    jensen_polynomials,
    lambda_on_series,
    reverse,
    shifted_generator,
)
from operators.calculus import (
    DiagonalOperator,
    apply_diagonal,
    d_alpha,
    d_alpha_product,
    dunkl_eigenvalue,
    dunkl_operator,
    identity_operator,
    lambda_B,
    t_b,
    t_b_l,
    theta_shift,
    upsilon_B,
)
from operators.exceptions import DegreeExceedsN, TruncationTooShort, ZeroDenominatorCoefficient, ZeroTheta
from operators.polynomials import RealPoly
from powerseries.series import coefficients
from powerseries.specs import (
    as_ball,
    dunkl_e,
    exp_series,
    explicit,
    geometric,
    hypergeometric_0fq,
    log_like,
    trivial_rational,
)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)
polys = st.lists(rationals, min_size=1, max_size=9).map(lambda xs: RealPoly(tuple(xs)))
series_lists = st.lists(rationals, min_size=16, max_size=16).map(lambda xs: [Fraction(1)] + xs)


def generalized_binomial(top, k):
    return pochhammer(top - k + 1, k) / factorial(k)


class BrenkePolynomialTests(SimpleTestCase):
    def test_trivial_A_gives_monomials(self):
        B = coefficients(hypergeometric_0fq([Fraction(5, 2)]), 8)
        family = brenke_polynomials(coefficients(explicit([1]), 8), B, 8)
        for n, p in enumerate(family):
            self.assertEqual(p, RealPoly.monomial(n, B[n]))

    def test_appell_of_0f1_are_laguerre(self):
        phi = Fraction(3, 2)
        family = brenke_polynomials(coefficients(exp_series(), 6), coefficients(hypergeometric_0fq([phi]), 6), 6)
        self.assertEqual(family[1], RealPoly((1, 1 / phi)))
        for n, p in enumerate(family):
            # L_n^{phi-1}(-x) / (phi)_n
            laguerre = [
                generalized_binomial(n + phi - 1, n - k) / (factorial(k) * pochhammer(phi, n)) for k in range(n + 1)
            ]
            self.assertEqual(p, RealPoly(tuple(laguerre)))

    def test_log_like_counterexample(self):
        A = coefficients(explicit([1, -2, 1]), 4)
        p4 = brenke_polynomials(A, coefficients(log_like(), 4), 4)[4]
        expected = RealPoly((2, Fraction(-8, 3), 1)) * RealPoly.monomial(2, Fraction(1, 4))
        self.assertEqual(p4, expected)

    def test_degree_is_n_when_b_n_nonzero(self):
        family = brenke_polynomials(coefficients(geometric(), 10), coefficients(trivial_rational(), 10), 10)
        self.assertEqual([p.degree for p in family], list(range(11)))
        self.assertEqual(family[0], RealPoly.constant(1))

    def test_short_series(self):
        with self.assertRaises(TruncationTooShort):
            brenke_polynomials(coefficients(exp_series(), 3), coefficients(exp_series(), 5), 5)

    def test_jensen_are_reversed_appell(self):
        A = coefficients(explicit([1, 3, Fraction(1, 2), -2, 7]), 8)
        appell = brenke_polynomials(A, coefficients(exp_series(), 8), 8)
        for n, q in enumerate(jensen_polynomials(A, 8)):
            self.assertEqual(q, reverse(appell[n], n))


class ReverseTests(SimpleTestCase):
    def test_example(self):
        self.assertEqual(reverse(RealPoly((1, 2)), 1), RealPoly((2, 1)))

    def test_degree_too_high(self):
        with self.assertRaises(DegreeExceedsN):
            reverse(RealPoly((1, 2, 3)), 1)

    @settings(max_examples=80, deadline=None, derandomize=True)
    @given(p=polys, extra=st.integers(min_value=0, max_value=3))
    def test_involution(self, p, extra):
        n = p.length - 1 + extra
        if p.length and p[0] != 0:
            self.assertEqual(reverse(reverse(p, n), n), p)

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(a=series_lists, b=series_lists)
    def test_duality(self, a, b):
        A = coefficients(explicit(a), 15)
        B = coefficients(explicit(b), 15)
        forward = brenke_polynomials(A, B, 15)
        backward = brenke_polynomials(B, A, 15)
        for n in range(16):
            self.assertEqual(reverse(forward[n], n), backward[n])


class LoweringOperatorTests(SimpleTestCase):
    def test_exp_is_derivative(self):
        B = coefficients(exp_series(), 5)
        self.assertEqual(lambda_B(B, RealPoly.monomial(2)), RealPoly((0, 2)))
        self.assertEqual(lambda_B(B, RealPoly.constant(1)), RealPoly())

    def test_lowers_brenke_families(self):
        A = coefficients(explicit([1, -1, Fraction(2, 3), 4]), 20)
        for spec in (exp_series(), hypergeometric_0fq([2, Fraction(1, 3)]), trivial_rational(), dunkl_e(Fraction(1, 3))):
            B = coefficients(spec, 20)
            family = brenke_polynomials(A, B, 20)
            for n in range(1, 21):
                self.assertEqual(lambda_B(B, family[n]), family[n - 1])

    def test_ball_path_encloses_exact(self):
        spec = hypergeometric_0fq([Fraction(1, 3)])
        p = RealPoly((1, 2, -3, Fraction(1, 7), 5))
        exact = lambda_B(coefficients(spec, 6), p)
        ball = lambda_B(coefficients(as_ball(spec), 6, bits=96), p)
        for j in range(exact.length):
            self.assertTrue(ball[j].contains(exact[j]))

    def test_zero_denominator(self):
        B = coefficients(explicit([1, 1, 0, 1]), 3)
        with self.assertRaises(ZeroDenominatorCoefficient):
            lambda_B(B, RealPoly.monomial(3))

    @settings(max_examples=50, deadline=None, derandomize=True)
    @given(p=polys, q=polys, c=rationals)
    def test_linearity(self, p, q, c):
        B = coefficients(hypergeometric_0fq([Fraction(3, 4)]), 10)
        self.assertEqual(lambda_B(B, p * c + q), lambda_B(B, p) * c + lambda_B(B, q))
        mu, alpha = Fraction(1, 5), Fraction(2, 3)
        self.assertEqual(dunkl_operator(mu, p * c + q), dunkl_operator(mu, p) * c + dunkl_operator(mu, q))
        self.assertEqual(d_alpha(alpha, p * c + q), d_alpha(alpha, p) * c + d_alpha(alpha, q))


class DiagonalOperatorTests(SimpleTestCase):
    def test_identity(self):
        p = RealPoly((3, 0, Fraction(-1, 2), 4))
        self.assertEqual(apply_diagonal(identity_operator(), p), p)

    def test_theta_shift(self):
        self.assertEqual(apply_diagonal(theta_shift(1), RealPoly.monomial(2)), RealPoly.monomial(2, Fraction(1, 6)))

    def test_t_b_0_reproduces_brenke(self):
        A = coefficients(explicit([1, 2, -1, Fraction(1, 2)]), 12)
        B = coefficients(hypergeometric_0fq([Fraction(5, 3)]), 12)
        family = brenke_polynomials(A, B, 12)
        for n in range(3, 13):
            # x^n A(1/x) for polynomial A of degree 3
            reversed_A = reverse(RealPoly(A.coeffs[:4]), n)
            self.assertEqual(apply_diagonal(t_b_l(B, 0), reversed_A), family[n])

    def test_t_b_l_factorizes(self):
        B = coefficients(hypergeometric_0fq([2]), 6)
        p = RealPoly((1, 1, 1, 1, 1, 1))
        self.assertEqual(apply_diagonal(t_b_l(B, 2), p), apply_diagonal(theta_shift(2), apply_diagonal(t_b(B), p)))

    def test_short_explicit_operator(self):
        with self.assertRaises(TruncationTooShort):
            apply_diagonal(DiagonalOperator(values=(1, 2)), RealPoly.monomial(3))


class UpsilonTests(SimpleTestCase):
    def test_constant(self):
        B = coefficients(exp_series(), 3)
        self.assertEqual(upsilon_B(B, Fraction(7), RealPoly.constant(1)), RealPoly.constant(7))

    def test_zero_theta(self):
        with self.assertRaises(ZeroTheta):
            upsilon_B(coefficients(exp_series(), 3), 0, RealPoly.constant(1))

    def test_hypergeometric_factorization(self):
        alpha = Fraction(3, 4)
        B = coefficients(hypergeometric_0fq([alpha + 1]), 6)
        for j in range(6):
            self.assertEqual(upsilon_B(B, alpha, RealPoly.monomial(j)), d_alpha(alpha, RealPoly.monomial(j)))

        phis = [Fraction(3, 2), Fraction(7, 3), 4]
        B = coefficients(hypergeometric_0fq(phis), 6)
        theta0 = (phis[0] - 1) * (phis[1] - 1) * (phis[2] - 1)
        for j in range(6):
            self.assertEqual(
                upsilon_B(B, theta0, RealPoly.monomial(j)),
                d_alpha_product([phi - 1 for phi in phis], RealPoly.monomial(j)),
            )

    @settings(max_examples=50, deadline=None, derandomize=True)
    @given(p=polys, theta0=nonzero_rationals)
    def test_derivative_of_upsilon_is_lambda(self, p, theta0):
        B = coefficients(hypergeometric_0fq([Fraction(2, 5), 3]), 10)
        self.assertEqual(upsilon_B(B, theta0, p).derivative(), lambda_B(B, p))


class DunklOperatorTests(SimpleTestCase):
    def test_minus_half_is_derivative(self):
        self.assertEqual(dunkl_operator(Fraction(-1, 2), RealPoly.monomial(3)), RealPoly.monomial(2, 3))

    def test_constant(self):
        self.assertEqual(dunkl_operator(Fraction(1, 3), RealPoly.constant(1)), RealPoly())

    def test_eigen_relation(self):
        mu = Fraction(1, 3)
        A = coefficients(explicit([1, 3, 3, 1]), 10)
        family = appell_dunkl_polynomials(A, mu, 10)
        for n in range(1, 11):
            self.assertEqual(dunkl_operator(mu, family[n]), family[n - 1] * dunkl_eigenvalue(n, mu))

    def test_dunkl_operator_is_lambda_of_the_kernel(self):
        mu = Fraction(2, 5)
        E = coefficients(dunkl_e(mu), 9)
        p = RealPoly((1, -2, 3, Fraction(1, 2), 0, 7, -1, 1, 2, 5))
        self.assertEqual(lambda_B(E, p), dunkl_operator(mu, p))

    def test_appell_dunkl_are_monic(self):
        family = appell_dunkl_polynomials(coefficients(explicit([1, 3, 3, 1]), 8), Fraction(1, 2), 8)
        for n, p in enumerate(family):
            self.assertEqual(p.degree, n)
            self.assertEqual(p.leading_coefficient(), 1)


class ShiftedGeneratorTests(SimpleTestCase):
    def test_order_zero_is_identity(self):
        A = coefficients(explicit([1, 2, 3, 4, 5]), 4)
        C = coefficients(hypergeometric_0fq([2]), 4)
        self.assertEqual(shifted_generator(A, C, 0).coeffs, A.coeffs)

    def test_exp_operator_is_derivative(self):
        A = coefficients(explicit([1, -1, 2, Fraction(1, 3), 5, -2, 1, 1]), 7)
        C = coefficients(exp_series(), 7)
        for s in range(4):
            derivative = RealPoly(A.coeffs)
            for _ in range(s):
                derivative = derivative.derivative()
            normalized = derivative * (1 / derivative[0])
            self.assertEqual(RealPoly(shifted_generator(A, C, s).coeffs), normalized.certified())

    def test_matches_iterated_lambda(self):
        A = coefficients(exp_series(), 12)
        C = coefficients(hypergeometric_0fq([Fraction(1, 2), 3]), 12)
        for s in range(5):
            values = list(A.coeffs)
            for _ in range(s):
                values = lambda_on_series(C.coeffs, values)
            expected = [v / values[0] for v in values]
            self.assertEqual(list(shifted_generator(A, C, s).coeffs), expected)

    def test_too_short(self):
        with self.assertRaises(TruncationTooShort):
            shifted_generator(coefficients(exp_series(), 3), coefficients(exp_series(), 3), 4)
