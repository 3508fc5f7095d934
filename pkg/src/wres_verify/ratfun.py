"""Rational functions of xi_m with poles only at +i and -i.

A :class:`RatFun` is ``N(xi_m) / ((xi_m - i)^a (xi_m + i)^b)`` with ``N`` an
:class:`XmPoly` whose coefficients are Clifford elements.  Supported
operations are the ones the boundary computation needs: partial fractions,
the half-plane projection ``pi_plus``, differentiation in ``xi_m``, the real
line integral and the "derivative at i" form of a residue.

pi is never materialized: :func:`integrate_line` returns the coefficient of
pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .clifford import XiPolyCliff, clif_trace
from .ring import GaussRat, I, ScalarPoly

__all__ = [
    "NotInHError",
    "DivergentIntegralError",
    "XmPoly",
    "RatFun",
    "PFDecomp",
    "partial_fractions",
    "pi_plus",
    "pi_minus",
    "d_xim",
    "integrate_line",
    "residue_at_i",
    "derivative_at",
    "derivative_at_i",
    "d_xi_tangential",
    "binom_general",
]

MINUS_I = GaussRat(0, -1)
TWO_I = GaussRat(0, 2)


class NotInHError(ValueError):
    """The input has a polynomial part, so pi_plus is undefined on it."""


class DivergentIntegralError(ValueError):
    """The integrand does not decay like |xi_m|^-2."""


def binom_general(top, k: int) -> Fraction:
    """Generalized binomial coefficient C(top, k) = top (top-1) ... (top-k+1) / k!."""
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(top) - j
    return num / math.factorial(k)


class XmPoly:
    """Polynomial in xi_m with XiPolyCliff coefficients (index = degree).

    xi_m is central, coefficients are multiplied in order.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=()):
        self.m = m
        cs = [c if isinstance(c, XiPolyCliff) else XiPolyCliff.scalar(m, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, m, c):
        return cls(m, [c])

    @classmethod
    def monomial(cls, m, deg, c=1):
        zero = XiPolyCliff.zero(m)
        c = c if isinstance(c, XiPolyCliff) else XiPolyCliff.scalar(m, c)
        return cls(m, [zero] * deg + [c])

    @classmethod
    def linear_power(cls, m, root: GaussRat, k: int) -> "XmPoly":
        """(xi_m - root)^k with scalar coefficients."""
        out = [GaussRat(1)]
        for _ in range(k):
            nxt = [GaussRat(0)] * (len(out) + 1)
            for i, c in enumerate(out):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * root
            out = nxt
        return cls(m, [XiPolyCliff.scalar(m, ScalarPoly.const(c)) for c in out])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k) -> XiPolyCliff:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return XiPolyCliff.zero(self.m)

    def __eq__(self, other):
        if not isinstance(other, XmPoly):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return XmPoly(self.m, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self):
        return XmPoly(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XmPoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return XmPoly(self.m)
        out = [XiPolyCliff.zero(self.m)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return XmPoly(self.m, out)

    def scale(self, c) -> "XmPoly":
        """Multiply by a central scalar (ScalarPoly or number)."""
        return XmPoly(self.m, [a.scale(c) for a in self.coeffs])

    def map_coeffs(self, fn) -> "XmPoly":
        return XmPoly(self.m, [fn(c) for c in self.coeffs])

    def shift(self, k=1) -> "XmPoly":
        """Multiply by xi_m^k."""
        if self.is_zero():
            return self
        return XmPoly(self.m, [XiPolyCliff.zero(self.m)] * k + list(self.coeffs))

    def deriv(self) -> "XmPoly":
        return XmPoly(self.m, [c.scale(k) for k, c in enumerate(self.coeffs) if k])

    def eval(self, point: GaussRat) -> XiPolyCliff:
        acc = XiPolyCliff.zero(self.m)
        p = ScalarPoly.const(point)
        for c in reversed(self.coeffs):
            acc = acc.scale(p) + c
        return acc

    def div_linear(self, root: GaussRat):
        """Synthetic division by (xi_m - root): returns (quotient, remainder)."""
        if self.is_zero():
            return XmPoly(self.m), XiPolyCliff.zero(self.m)
        p = ScalarPoly.const(root)
        d = len(self.coeffs) - 1
        q = [None] * d
        acc = self.coeffs[d]
        for k in range(d - 1, -1, -1):
            q[k] = acc
            acc = self.coeffs[k] + acc.scale(p)
        return XmPoly(self.m, q), acc

    def taylor(self, root: GaussRat, count: int) -> list:
        """First ``count`` Taylor coefficients about ``root``."""
        out = []
        cur = self
        for _ in range(count):
            cur, r = cur.div_linear(root)
            out.append(r)
        return out

    def divmod_monic(self, divisor: "XmPoly"):
        """Long division by a monic divisor with scalar (central) coefficients."""
        dd = divisor.degree()
        if dd < 0:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        if len(rem) - 1 < dd:
            return XmPoly(self.m), self
        quot = [XiPolyCliff.zero(self.m)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            quot[k - dd] = c
            for j, dc in enumerate(divisor.coeffs):
                rem[k - dd + j] = rem[k - dd + j] - dc * c
        return XmPoly(self.m, quot), XmPoly(self.m, rem[:dd])

    def on_unit_sphere(self) -> "XmPoly":
        return self.map_coeffs(XiPolyCliff.on_unit_sphere)

    def __repr__(self):
        return f"XmPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            xs = "" if k == 0 else ("xm" if k == 1 else f"xm^{k}")
            cs = str(c)
            if k == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append(xs)
            else:
                parts.append(f"({cs})*{xs}")
        return " + ".join(parts)


class RatFun:
    """``numerator / ((xi_m - i)^a (xi_m + i)^b)`` in canonical form.

    Canonical: no factor (xi_m - i) is shared between numerator and
    denominator when a > 0 (same for -i); the zero function has a = b = 0.
    """

    __slots__ = ("m", "numerator", "a", "b")

    def __init__(self, numerator: XmPoly, a: int = 0, b: int = 0):
        if a < 0 or b < 0:
            raise ValueError("pole orders must be nonnegative")
        self.m = numerator.m
        if numerator.is_zero():
            a = b = 0
        while a > 0:
            q, r = numerator.div_linear(I)
            if not r.is_zero():
                break
            numerator, a = q, a - 1
        while b > 0:
            q, r = numerator.div_linear(MINUS_I)
            if not r.is_zero():
                break
            numerator, b = q, b - 1
        self.numerator = numerator
        self.a = a
        self.b = b

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, m):
        return cls(XmPoly(m))

    @classmethod
    def const(cls, m, c):
        return cls(XmPoly.const(m, c))

    @classmethod
    def xm(cls, m):
        return cls(XmPoly.monomial(m, 1))

    @classmethod
    def pole(cls, m, sign: int, order: int, c=1):
        """c / (xi_m - sign*i)^order."""
        if sign > 0:
            return cls(XmPoly.const(m, c), order, 0)
        return cls(XmPoly.const(m, c), 0, order)

    @classmethod
    def one_plus_xm2_power(cls, m, k: int, c=1):
        """c * (1 + xi_m^2)^k for any integer k."""
        if k >= 0:
            num = XmPoly.linear_power(m, I, k) * XmPoly.linear_power(m, MINUS_I, k)
            return cls(num.scale(ScalarPoly.coerce(c)) if not isinstance(c, XiPolyCliff)
                       else num * XmPoly.const(m, c))
        return cls(XmPoly.const(m, c), -k, -k)

    # -- algebra ------------------------------------------------------------
    def _lift(self, a, b) -> XmPoly:
        num = self.numerator
        if a > self.a:
            num = num * XmPoly.linear_power(self.m, I, a - self.a)
        if b > self.b:
            num = num * XmPoly.linear_power(self.m, MINUS_I, b - self.b)
        return num

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, XmPoly):
            return RatFun(other)
        return RatFun.const(self.m, other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = max(self.a, other.a), max(self.b, other.b)
        return RatFun(self._lift(a, b) + other._lift(a, b), a, b)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.numerator, self.a, self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (RatFun, XmPoly, XiPolyCliff)):
            other = self._coerce(other)
            return RatFun(self.numerator * other.numerator, self.a + other.a, self.b + other.b)
        return RatFun(self.numerator.scale(other), self.a, self.b)

    def __rmul__(self, other):
        if isinstance(other, XiPolyCliff):
            return RatFun.const(self.m, other) * self
        return self * other

    def scale(self, c):
        return RatFun(self.numerator.scale(c), self.a, self.b)

    def map_coeffs(self, fn) -> "RatFun":
        return RatFun(self.numerator.map_coeffs(fn), self.a, self.b)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return (self.m, self.a, self.b, self.numerator) == (other.m, other.a, other.b, other.numerator)

    def __hash__(self):
        return hash((self.m, self.a, self.b, self.numerator))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def denominator(self) -> XmPoly:
        return XmPoly.linear_power(self.m, I, self.a) * XmPoly.linear_power(self.m, MINUS_I, self.b)

    def is_proper(self) -> bool:
        return self.numerator.degree() < self.a + self.b

    def decays(self) -> bool:
        """deg(numerator) <= a + b - 2, i.e. absolutely integrable on the line."""
        return self.is_zero() or self.numerator.degree() <= self.a + self.b - 2

    # -- coefficient-level maps ---------------------------------------------
    def trace(self) -> "RatFun":
        return self.map_coeffs(clif_trace)

    def on_unit_sphere(self) -> "RatFun":
        """Reduce xi'-coefficients modulo |xi'|^2 = 1 and re-canonicalize."""
        return self.map_coeffs(XiPolyCliff.on_unit_sphere)

    def even_part(self) -> "RatFun":
        return self.map_coeffs(XiPolyCliff.even_part)

    def substitute(self, bindings) -> "RatFun":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def evaluate(self, x: complex) -> complex:
        """Numeric value at a point; coefficients must be plain numbers."""
        num = 0j
        for c in reversed(self.numerator.coeffs):
            num = num * x + c.as_scalar_poly().to_complex()
        return num / ((x - 1j) ** self.a * (x + 1j) ** self.b)

    # -- rendering ----------------------------------------------------------
    def __repr__(self):
        return f"RatFun(({self.numerator}) / ((xm-I)^{self.a} (xm+I)^{self.b}))"

    def to_text(self) -> str:
        """Partial-fraction rendering in the CLI grammar (scalar coefficients)."""
        if self.is_zero():
            return "0"
        pf = partial_fractions(self)
        parts = []
        for k, c in enumerate(pf.poly_part.coeffs):
            if c.is_zero():
                continue
            g = _as_number(c)
            xs = "" if k == 0 else ("xm" if k == 1 else f"xm^{k}")
            parts.append(_render_number(g) if k == 0 else f"{_render_number(g, factor=True)}*{xs}")
        for sign, coeffs in ((1, pf.principal_plus), (-1, pf.principal_minus)):
            lin = "(xm-I)" if sign > 0 else "(xm+I)"
            for k, c in enumerate(coeffs, start=1):
                if c.is_zero():
                    continue
                g = _as_number(c)
                den = math.lcm(g.re.denominator, g.im.denominator)
                num = g * den
                base = lin if k == 1 else f"{lin}^{k}"
                if den != 1:
                    base = f"({den}*{base})"
                parts.append(f"{_render_number(num, factor=True)}/{base}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_number(c: XiPolyCliff) -> GaussRat:
    p = c.as_scalar_poly()
    if not p.is_constant():
        raise ValueError("text rendering needs numeric coefficients")
    return p.constant_term()


def _render_number(g: GaussRat, factor=False) -> str:
    re_, im_ = g.re, g.im

    def frac(q):
        return str(q)

    if im_ == 0:
        return frac(re_)
    im_txt = "I" if im_ == 1 else ("-I" if im_ == -1 else f"{frac(im_)}*I")
    if re_ == 0:
        return im_txt
    sign = "-" if im_ < 0 else "+"
    mag = abs(im_)
    mag_txt = "I" if mag == 1 else f"{frac(mag)}*I"
    body = f"{frac(re_)}{sign}{mag_txt}"
    return f"({body})" if factor else body


@dataclass(frozen=True)
class PFDecomp:
    """principal_plus[k-1] multiplies (xi_m - i)^-k; likewise for minus."""

    principal_plus: tuple
    principal_minus: tuple
    poly_part: XmPoly

    def recombine(self) -> RatFun:
        m = self.poly_part.m
        total = RatFun(self.poly_part)
        for k, c in enumerate(self.principal_plus, start=1):
            total = total + RatFun(XmPoly.const(m, c), k, 0)
        for k, c in enumerate(self.principal_minus, start=1):
            total = total + RatFun(XmPoly.const(m, c), 0, k)
        return total


def _principal_part(num: XmPoly, root: GaussRat, order: int, other_root: GaussRat, other_order: int):
    """Coefficients of (xi_m - root)^-k, k = 1..order, of num / ((x-root)^order (x-other)^other_order)."""
    if order == 0:
        return ()
    m = num.m
    tay = num.taylor(root, order)
    # (x - other)^-p = (delta + u)^-p with delta = root - other, u = x - root
    delta = root - other_root
    inv_delta = delta.inverse()
    base = inv_delta ** other_order
    series = [base * binom_general(-other_order, r) * inv_delta ** r for r in range(order)]
    # coefficient of u^s in the product, s = 0..order-1, multiplies u^(s - order)
    out = [XiPolyCliff.zero(m)] * order
    for s in range(order):
        acc = XiPolyCliff.zero(m)
        for r in range(s + 1):
            if tay[s - r].is_zero():
                continue
            acc = acc + tay[s - r].scale(ScalarPoly.const(series[r]))
        out[order - 1 - s] = acc
    return tuple(out)


def partial_fractions(r: RatFun) -> PFDecomp:
    """Exact decomposition into principal parts at +i, -i and a polynomial part."""
    poly, _ = r.numerator.divmod_monic(r.denominator())
    plus = _principal_part(r.numerator, I, r.a, MINUS_I, r.b)
    minus = _principal_part(r.numerator, MINUS_I, r.b, I, r.a)
    return PFDecomp(plus, minus, poly)


def _from_principal(m, coeffs, root: GaussRat) -> RatFun:
    order = len(coeffs)
    if order == 0:
        return RatFun.zero(m)
    num = XmPoly(m)
    for k, c in enumerate(coeffs, start=1):
        num = num + XmPoly.linear_power(m, root, order - k) * XmPoly.const(m, c)
    if root == I:
        return RatFun(num, order, 0)
    return RatFun(num, 0, order)


def pi_plus(r: RatFun) -> RatFun:
    """Projection onto the part with poles in the upper half-plane."""
    if r.is_zero():
        return r
    pf = partial_fractions(r)
    if not pf.poly_part.is_zero():
        raise NotInHError("input has a nonzero polynomial part; pi_plus is undefined")
    return _from_principal(r.m, pf.principal_plus, I)


def pi_minus(r: RatFun) -> RatFun:
    """The complementary projection on proper inputs (keeps the -i principal part)."""
    if r.is_zero():
        return r
    pf = partial_fractions(r)
    if not pf.poly_part.is_zero():
        raise NotInHError("input has a nonzero polynomial part")
    return _from_principal(r.m, pf.principal_minus, MINUS_I)


def d_xim(r: RatFun) -> RatFun:
    """Quotient-rule derivative in xi_m."""
    n = r.numerator
    if r.a == 0 and r.b == 0:
        return RatFun(n.deriv())
    u = XmPoly.linear_power(r.m, I, 1)
    v = XmPoly.linear_power(r.m, MINUS_I, 1)
    new = n.deriv() * u * v - (n * v).scale(r.a) - (n * u).scale(r.b)
    return RatFun(new, r.a + 1, r.b + 1)


def derivative_at(numerator: XmPoly, pole: GaussRat, order: int, p: int, point: GaussRat) -> XiPolyCliff:
    """p-th derivative of numerator / (xi_m - pole)^order evaluated at ``point``.

    Uses the repeated quotient rule N_{k+1} = N_k' (x - pole) - (order + k) N_k,
    independent of the Taylor expansion used by :func:`partial_fractions`.
    """
    m = numerator.m
    lin = XmPoly.linear_power(m, pole, 1)
    cur = numerator
    for k in range(p):
        cur = cur.deriv() * lin - cur.scale(order + k)
    dist = point - pole
    if dist.is_zero() and order + p > 0 and not cur.is_zero():
        raise ZeroDivisionError("derivative evaluated at the pole")
    return cur.eval(point).scale(ScalarPoly.const(dist ** (-(order + p)) if order + p else GaussRat(1)))


def derivative_at_i(g: RatFun, p: int) -> XiPolyCliff:
    """[g]^{(p)} at xi_m = i for g = N / (xi_m + i)^b (no pole at +i)."""
    if g.a:
        raise ValueError("derivative form needs a function regular at xi_m = i")
    return derivative_at(g.numerator, MINUS_I, g.b, p, I)


def residue_at_i(r: RatFun) -> XiPolyCliff:
    """Residue at +i read off the partial-fraction decomposition."""
    if r.a == 0:
        return XiPolyCliff.zero(r.m)
    return _principal_part(r.numerator, I, r.a, MINUS_I, r.b)[0]


def integrate_line(r: RatFun, route: str = "derivative") -> XiPolyCliff:
    """Integral over the real line, as the coefficient of pi.

    Equals 2*pi*i * Res_{xi_m = i}(r).  ``route="derivative"`` computes the
    residue as [numerator/(xi_m+i)^b]^{(a-1)}(i) / (a-1)!;
    ``route="residue"`` uses the partial-fraction principal part.
    """
    if not r.decays():
        raise DivergentIntegralError(
            f"numerator degree {r.numerator.degree()} too high for poles of order {r.a}+{r.b}")
    if r.a == 0:
        return XiPolyCliff.zero(r.m)
    if route == "derivative":
        res = derivative_at(r.numerator, MINUS_I, r.b, r.a - 1, I).scale(
            ScalarPoly.const(Fraction(1, math.factorial(r.a - 1))))
    elif route == "residue":
        res = residue_at_i(r)
    else:
        raise ValueError(f"unknown route {route!r}")
    return res.scale(ScalarPoly.const(TWO_I))


def d_xi_tangential(r: RatFun, k: int, degree: int) -> RatFun:
    """d/dxi_k (k < m) at |xi'| = 1 of a function homogeneous of ``degree``.

    ``r`` is the restriction to the unit sphere of F(xi', xi_m) with
    F(t xi', t xi_m) = t^degree F(xi', xi_m).  The derivative is assembled
    from the tangential gradient on the sphere plus the radial part fixed by
    homogeneity:

        dF/dxi_k = (d_k - xi_k E) F1 + xi_k (degree - xi_m d/dxi_m) F1

    with E the Euler operator in xi'.  The answer does not depend on how the
    coefficients of ``r`` are extended off the sphere.
    """
    num = r.numerator
    tangential = num.map_coeffs(lambda c: c.d_xi(k) - c.euler().times_xi(k))
    radial_self = num.map_coeffs(lambda c: c.times_xi(k).scale(degree))
    part = RatFun(tangential + radial_self, r.a, r.b)
    dm = d_xim(r)
    radial = RatFun(dm.numerator.map_coeffs(lambda c: c.times_xi(k)).shift(1), dm.a, dm.b)
    return part - radial
