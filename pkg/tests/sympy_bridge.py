"""Convert scalar RatFuns to sympy expressions for independent checks."""
import sympy as sp

from wres_verify.ratfun import RatFun

x = sp.Symbol("x", real=True)


def gauss_to_sympy(g):
    return sp.Rational(g.re.numerator, g.re.denominator) + sp.I * sp.Rational(g.im.numerator, g.im.denominator)


def to_sympy(r: RatFun):
    num = 0
    for k, c in enumerate(r.numerator.coeffs):
        if c.is_zero():
            continue
        num += gauss_to_sympy(c.as_scalar_poly().constant_term()) * x ** k
    return num / ((x - sp.I) ** r.a * (x + sp.I) ** r.b)


def same(a, b) -> bool:
    return sp.simplify(sp.together(a - b)) == 0
