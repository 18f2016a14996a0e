"""
Series expressions of the --A/--B flags.

Accepted forms:
    named series   exp, 0f1, 0fq, dunkl-e, geometric, bq, log-like,
                   trivial-rational, zeta, partial-theta, partial-theta-factorial
    coefficients   [1, 3, 3, 1] (c_0 first)
    polynomials    in z with rational coefficients, e.g. (z-1)^2 or 1 - z^2/2
"""
import re
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from numerics.coefficients import parse_rational
from powerseries.specs import (
    SeriesSpec,
    bq,
    dunkl_e,
    exp_series,
    explicit,
    geometric,
    hypergeometric_0fq,
    log_like,
    partial_theta,
    trivial_rational,
    zeta_relative,
)

from .exceptions import ExpressionError, InvalidParameter

Z = sympy.Symbol("z")
TRANSFORMATIONS = standard_transformations + (convert_xor,)
POLYNOMIAL_CHARACTERS = re.compile(r"^[z0-9+\-*/^().\s]+$")


def _need(params: Dict, name: str, series: str):
    value = params.get(name)
    if value is None or value == ():
        raise ExpressionError(f"series {series!r} needs --{name}")
    return value


NAMED: Dict[str, Callable[[Dict], SeriesSpec]] = {
    "exp": lambda p: exp_series(),
    "0f1": lambda p: hypergeometric_0fq(p.get("phi") or (1,)),
    "0fq": lambda p: hypergeometric_0fq(_need(p, "phi", "0fq")),
    "dunkl-e": lambda p: dunkl_e(_need(p, "mu", "dunkl-e")),
    "geometric": lambda p: geometric(),
    "bq": lambda p: bq(_need(p, "q", "bq")),
    "log-like": lambda p: log_like(),
    "trivial-rational": lambda p: trivial_rational(),
    "zeta": lambda p: zeta_relative(p.get("s") or 0),
    "partial-theta": lambda p: partial_theta(_need(p, "a", "partial-theta")),
    "partial-theta-factorial": lambda p: partial_theta(_need(p, "a", "partial-theta-factorial"), factorial=True),
}


def polynomial_coefficients(text: str) -> Sequence[Fraction]:
    """Ascending rational coefficients of a polynomial string in z."""
    if not POLYNOMIAL_CHARACTERS.match(text):
        raise ExpressionError(f"unexpected characters in polynomial {text!r}")
    try:
        expr = parse_expr(text, local_dict={"z": Z}, transformations=TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc}") from exc
    if not expr.free_symbols <= {Z} or not expr.is_polynomial(Z):
        raise ExpressionError(f"{text!r} is not a polynomial in z")
    poly = sympy.Poly(expr, Z)
    if not poly.domain.is_QQ and not poly.domain.is_ZZ:
        raise ExpressionError(f"{text!r} has non-rational coefficients")
    values = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return values or [Fraction(0)]


def coefficient_list(text: str) -> Sequence[Fraction]:
    body = text.strip()[1:-1]
    try:
        return [parse_rational(part) for part in body.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError(f"cannot read coefficient list {text!r}") from exc


def parse_series(text: Optional[str], params: Optional[Dict] = None) -> SeriesSpec:
    """
    The series spec named or written by ``text``.

    Explicit coefficients and polynomials are normalized by their constant
    term, which must not vanish.

    Raises:
        ExpressionError: on unknown names, syntax errors or missing parameters
    """
    if not text or not text.strip():
        raise ExpressionError("empty series expression")
    params = params or {}
    key = text.strip().lower()
    try:
        if key in NAMED:
            return NAMED[key](params)
        if key.startswith("["):
            values = coefficient_list(text)
        else:
            values = polynomial_coefficients(text)
        return explicit(values, label=text.strip())
    except InvalidParameter as exc:
        raise ExpressionError(f"{text!r}: {exc}") from exc
