"""Exact integrals of xi'-polynomials over the unit sphere S^{2n+2}.

Results are rational multiples of the sphere volume, which stays a formal
unit; the returned ScalarPoly is the coefficient of that unit.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .clifford import XiPolyCliff
from .ratfun import RatFun, XmPoly
from .ring import GaussRat, ScalarPoly

__all__ = ["LayeringError", "moment", "sphere_integrate", "sphere_volume"]


class LayeringError(ValueError):
    """xi_m is still present; integrate it out before the sphere integral."""


def moment(exponents, d: int) -> Fraction:
    """Integral of prod xi_i^e_i over S^{d-1} divided by its volume.

    Zero if any exponent is odd, else prod (e_i - 1)!! / (d (d+2) ... (d + |e| - 2)).
    """
    total = 0
    num = 1
    for e in exponents:
        if e % 2:
            return Fraction(0)
        num *= math.prod(range(e - 1, 0, -2))
        total += e
    den = math.prod(range(d, d + total - 1, 2))
    return Fraction(num, den)


def sphere_integrate(p, n: int) -> ScalarPoly:
    """Coefficient of Vol(S^{2n+2}) in the integral of ``p`` over |xi'| = 1.

    ``p`` is a scalar xi'-polynomial (XiPolyCliff without blades) in the
    2n+3 tangential variables.
    """
    if isinstance(p, RatFun):
        if p.a or p.b or p.numerator.degree() > 0:
            raise LayeringError("xi_m is still present in the integrand")
        p = p.numerator.coeff(0)
    if isinstance(p, XmPoly):
        if p.degree() > 0:
            raise LayeringError("xi_m is still present in the integrand")
        p = p.coeff(0)
    if not isinstance(p, XiPolyCliff):
        return ScalarPoly.coerce(p)
    d = 2 * n + 3
    if p.m != d + 1:
        raise ValueError(f"expected m = {d + 1} for n = {n}, got m = {p.m}")
    if not p.is_scalar():
        raise ValueError("sphere integration needs a scalar (traced) integrand")
    out = ScalarPoly()
    for (_, xi), c in p.terms.items():
        w = moment([e for k, e in xi if k], d)  # |xi'|^2 is 1 here
        if w:
            out = out + c * GaussRat(w)
    return out


def sphere_volume(n: int) -> float:
    """Numeric Vol(S^{2n+2}) = 2 pi^{(2n+3)/2} / Gamma((2n+3)/2)."""
    d = 2 * n + 3
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)
