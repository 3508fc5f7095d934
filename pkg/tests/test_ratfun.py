from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from strategies import M, scalar_ratfun
from sympy_bridge import same, to_sympy, x
from wres_verify.ratfun import (
    DivergentIntegralError,
    NotInHError,
    RatFun,
    XmPoly,
    d_xim,
    derivative_at_i,
    integrate_line,
    partial_fractions,
    pi_minus,
    pi_plus,
)
from wres_verify.ring import GaussRat

X = RatFun.xm(M)


def q(k):
    return RatFun.one_plus_xm2_power(M, k)


def test_canonical_form_cancels_common_factors():
    r = RatFun(XmPoly.linear_power(M, GaussRat(0, 1), 2), 3, 1)
    assert (r.a, r.b) == (1, 1)
    assert r == q(-1)


def test_piplus_worked_values():
    assert pi_plus(X * q(-2)).to_text() == "-I/(4*(xm-I)^2)"
    expected = RatFun.pole(M, 1, 2, GaussRat(0, Fraction(-1, 16))) + RatFun.pole(M, 1, 3, GaussRat(Fraction(-1, 8)))
    assert pi_plus(X * q(-3)) == expected


def test_piplus_rejects_polynomial_part():
    with pytest.raises(NotInHError):
        pi_plus(X)
    with pytest.raises(NotInHError):
        pi_plus(X * X * q(-1))


def test_piplus_kills_lower_half_plane_poles():
    assert pi_plus(RatFun.pole(M, -1, 3)).is_zero()


def test_integrate_line_known_values():
    # int dx/(1+x^2) = pi ; int dx/(1+x^2)^2 = pi/2
    assert integrate_line(q(-1)).as_scalar_poly().constant_term() == GaussRat(1)
    assert integrate_line(q(-2), "residue").as_scalar_poly().constant_term() == GaussRat(Fraction(1, 2))


def test_integrate_line_rejects_divergent():
    with pytest.raises(DivergentIntegralError):
        integrate_line(X * q(-1))


def test_unknown_route():
    with pytest.raises(ValueError):
        integrate_line(q(-1), "contour")


def test_derivative_at_i():
    # d/dx (x+i)^-2 at x=i is -2 (2i)^-3 = -2/(-8i) = -i/4
    g = RatFun.pole(M, -1, 2)
    assert derivative_at_i(g, 1).as_scalar_poly().constant_term() == GaussRat(0, Fraction(-1, 4))


def test_text_rendering():
    r = RatFun.pole(M, 1, 2, GaussRat(Fraction(1, 3))) + RatFun.const(M, 2)
    assert r.to_text() == "2 + 1/(3*(xm-I)^2)"


@given(scalar_ratfun())
def test_partial_fraction_matches_sympy(r):
    assert same(to_sympy(partial_fractions(r).recombine()), to_sympy(r))


@given(scalar_ratfun(decaying=True))
def test_line_integral_matches_sympy(r):
    exact = integrate_line(r).as_scalar_poly().constant_term()
    # 2 pi i Res_{x=i}, with the residue taken by sympy differentiation
    g = sp.cancel(to_sympy(r) * (x - sp.I) ** r.a)
    res = sp.diff(g, x, r.a - 1).subs(x, sp.I) / sp.factorial(r.a - 1) if r.a else 0
    ref = 2 * sp.I * res
    got = sp.Rational(exact.re.numerator, exact.re.denominator) + sp.I * sp.Rational(exact.im.numerator, exact.im.denominator)
    assert sp.simplify(ref - got) == 0


@given(scalar_ratfun())
def test_derivative_matches_sympy(r):
    assert same(to_sympy(d_xim(r)), sp.diff(to_sympy(r), x))


@given(scalar_ratfun())
def test_pi_minus_complements(r):
    assert pi_plus(r) + pi_minus(r) == r
