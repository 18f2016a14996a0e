"""Discriminants: the closed cubic formula and the resultant form for any degree."""
from fractions import Fraction

import sympy

from numerics.coefficients import Coefficient
from numerics.exceptions import InvalidParameter
from operators.polynomials import RealPoly

from .exceptions import WrongDegree

X = sympy.Symbol("x")


def cubic_discriminant(p: RealPoly) -> Coefficient:
    """
    b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d for p = a x^3 + b x^2 + c x + d.

    Negative exactly when p has one real zero and two non-real ones.

    Raises:
        WrongDegree: unless p has certified degree 3
    """
    if p.degree != 3 or p.possibly_zero_tail:
        raise WrongDegree(f"expected a cubic, got degree {p.degree}")
    d, c, b, a = p[0], p[1], p[2], p[3]
    return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def discriminant(p: RealPoly) -> Coefficient:
    """
    (-1)^(n(n-1)/2) Res(p, p') / lc(p) for an exact polynomial of degree n >= 1.

    Ball polynomials are only supported for cubics.
    """
    if not p.is_exact:
        if p.degree == 3:
            return cubic_discriminant(p)
        raise InvalidParameter("the resultant discriminant needs exact coefficients")
    n = p.degree
    if n < 1:
        raise WrongDegree("a constant has no discriminant")
    poly = p.to_sympy(X)
    resultant = sympy.Rational(poly.resultant(poly.diff(X)))
    value = Fraction(int(resultant.p), int(resultant.q)) / p.leading_coefficient()
    return value if (n * (n - 1) // 2) % 2 == 0 else -value
