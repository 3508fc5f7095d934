"""Symbol expressions before restriction to the unit sphere.

A :class:`SymExpr` is ``N(xi', xi_m) / q^K`` with ``q = |xi'|^2 + xi_m^2``
kept as a single indeterminate, ``N`` a polynomial in ``xi_m`` with
Clifford/xi'-polynomial coefficients, together with its first x-derivatives
at the boundary point (a first-order jet).

The jet is carried like a dual number: products obey Leibniz and
``d_xi`` acts on the value and every jet entry, so mixed partials commute
by construction.
"""
from __future__ import annotations

from .clifford import XiPolyCliff
from .ratfun import RatFun, XmPoly
from .ring import GaussRat, ScalarPoly, param

__all__ = ["JetMissingError", "SymExpr", "d_xi", "d_x", "restrict"]

# parameters with a known first x-derivative: name -> jet-symbol prefix
_JET_RULES = {"f": "df", "finv": "dfinv"}


class JetMissingError(LookupError):
    """An x-derivative was requested of an expression with no jet rule."""


def _dir_name(j: int, m: int) -> str:
    return "m" if j == m else str(j)


def _q_poly(m: int, power: int) -> XmPoly:
    """(|xi'|^2 + xi_m^2)^power as a polynomial in xi_m, power >= 0."""
    q = XmPoly(m, [XiPolyCliff.norm2_symbol(m), XiPolyCliff.zero(m), XiPolyCliff.scalar(m, 1)])
    out = XmPoly.const(m, 1)
    for _ in range(power):
        out = out * q
    return out


def _scalar_jet(c: ScalarPoly, m: int):
    """x-jet of a constant-in-xi scalar built from f, finv and numbers; None if unknown."""
    jets = {}
    for mono, coeff in c.terms.items():
        for idx, (name, e) in enumerate(mono):
            prefix = _JET_RULES.get(name)
            if prefix is None:
                return None
            rest = list(mono)
            if e == 1:
                del rest[idx]
            else:
                rest[idx] = (name, e - 1)
            base = ScalarPoly({tuple(rest): coeff * e})
            for j in range(1, m + 1):
                term = base * param(f"{prefix}_{_dir_name(j, m)}")
                jets[j] = jets.get(j, ScalarPoly()) + term
    return {j: SymExpr.const(m, v) for j, v in jets.items() if v}


class SymExpr:
    """``numerator / q^K`` plus an optional first-order x-jet.

    ``jet`` is ``None`` when no derivative rule is known (asking for one
    raises :class:`JetMissingError`); otherwise it maps a direction
    ``1..m`` to the derivative, with absent directions meaning zero.
    """

    __slots__ = ("m", "numerator", "K", "jet")

    def __init__(self, numerator: XmPoly, K: int = 0, jet=None):
        if K < 0:
            numerator = numerator * _q_poly(numerator.m, -K)
            K = 0
        m = numerator.m
        if numerator.is_zero():
            K = 0
        else:
            q1 = _q_poly(m, 1)
            while K > 0:
                quo, rem = numerator.divmod_monic(q1)
                if not rem.is_zero():
                    break
                numerator, K = quo, K - 1
        self.m = m
        self.numerator = numerator
        self.K = K
        if jet is not None:
            jet = {j: v.value() for j, v in jet.items() if not v.is_zero()}
        self.jet = jet

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, m):
        return cls(XmPoly(m), 0, {})

    @classmethod
    def const(cls, m, c, jet="auto"):
        """A scalar or Clifford constant; the jet is derived from f/finv factors."""
        if isinstance(c, XiPolyCliff):
            val = XmPoly.const(m, c)
            if jet == "auto":
                params = c.params()
                jet = {} if not params else None
                if params and params <= set(_JET_RULES) and c.is_scalar() and c.xi_free():
                    jet = _scalar_jet(c.as_scalar_poly(), m)
            return cls(val, 0, jet)
        c = ScalarPoly.coerce(c)
        if jet == "auto":
            jet = _scalar_jet(c, m)
        return cls(XmPoly.const(m, c), 0, jet)

    @classmethod
    def param(cls, m, name):
        """A formal parameter (f, finv, h1, ...) at the boundary point."""
        return cls.const(m, param(name))

    @classmethod
    def q_power(cls, m, p: int):
        """q^p with d/dx_m q = h'(0) |xi'|^2."""
        val = cls(XmPoly.const(m, 1), -p)
        if p == 0:
            return cls(XmPoly.const(m, 1), 0, {})
        dq = XiPolyCliff.norm2_symbol(m).scale(param("h1") * p)
        deriv = cls(XmPoly.const(m, dq), -(p - 1))
        return cls(val.numerator, val.K, {m: deriv})

    @classmethod
    def xm(cls, m):
        return cls(XmPoly.monomial(m, 1), 0, {})

    @classmethod
    def xi(cls, m, k):
        return cls(XmPoly.const(m, XiPolyCliff.xi(m, k)), 0, {})

    @classmethod
    def c_xi_prime(cls, m):
        d = cls(XmPoly.const(m, XiPolyCliff.dxm_c_xi_prime(m)), 0)
        return cls(XmPoly.const(m, XiPolyCliff.c_xi_prime(m)), 0, {m: d})

    @classmethod
    def c_dxm(cls, m):
        return cls(XmPoly.const(m, XiPolyCliff.c_dxm(m)), 0, {})

    @classmethod
    def c_xi(cls, m):
        """c(xi) = c(xi') + xi_m c(dx_m)."""
        return cls.c_xi_prime(m) + cls.xm(m) * cls.c_dxm(m)

    @classmethod
    def generator(cls, m, k):
        return cls(XmPoly.const(m, XiPolyCliff.generator(m, k)), 0, {})

    # -- structure ----------------------------------------------------------
    def value(self) -> "SymExpr":
        """The same expression with the jet dropped."""
        if self.jet is None:
            return self
        return SymExpr(self.numerator, self.K, None)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def same_value(self, other: "SymExpr") -> bool:
        """Value equality with |xi'|^2 expanded (so q-factors hidden in
        expanded numerators still compare equal)."""
        if self.K == other.K and self.numerator == other.numerator:
            return True
        K = max(self.K, other.K)
        a = self.numerator * _q_poly(self.m, K - self.K)
        b = other.numerator * _q_poly(self.m, K - other.K)
        return (a - b).map_coeffs(XiPolyCliff.expand_norm2).is_zero()

    def __eq__(self, other):
        if not isinstance(other, SymExpr):
            return NotImplemented
        return self.same_value(other) and self.jet == other.jet

    def __hash__(self):
        return hash((self.K, self.numerator))

    def terms(self):
        """(coeff, xm_degree, q_power) triples."""
        return [(c, k, -self.K) for k, c in enumerate(self.numerator.coeffs) if not c.is_zero()]

    # -- algebra ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, SymExpr):
            return other
        return SymExpr.const(self.m, other)

    def __add__(self, other):
        other = self._coerce(other)
        K = max(self.K, other.K)
        num = (self.numerator * _q_poly(self.m, K - self.K)
               + other.numerator * _q_poly(self.m, K - other.K))
        return SymExpr(num, K, _merge(self.jet, other.jet, lambda a, b: a + b))

    __radd__ = __add__

    def __neg__(self):
        jet = None if self.jet is None else {j: -v for j, v in self.jet.items()}
        return SymExpr(-self.numerator, self.K, jet)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        val = SymExpr(self.numerator * other.numerator, self.K + other.K)
        jet = None
        if self.jet is not None and other.jet is not None:
            jet = {}
            for j, d in self.jet.items():
                jet[j] = d * other.value()
            for j, d in other.jet.items():
                t = self.value() * d
                jet[j] = jet[j] + t if j in jet else t
        return SymExpr(val.numerator, val.K, jet)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k: int):
        out = SymExpr.const(self.m, 1)
        for _ in range(k):
            out = out * self
        return out

    # -- rendering ----------------------------------------------------------
    def __str__(self):
        if self.is_zero():
            return "0"
        num = str(self.numerator)
        if self.K == 0:
            return num
        return f"({num}) * |xi|^{{{-2 * self.K}}}"

    def __repr__(self):
        return f"SymExpr({self})"


def _merge(a, b, op):
    if a is None or b is None:
        return None
    out = dict(a)
    for j, v in b.items():
        out[j] = op(out[j], v) if j in out else v
    return out


def _d_xi_value(e: SymExpr, direction: int) -> SymExpr:
    m = e.m
    num = e.numerator
    if direction == m:
        dn = num.deriv()
        dq = XmPoly.monomial(m, 1, 2)
    else:
        dn = num.map_coeffs(lambda c: c.d_xi(direction))
        dq = XmPoly.const(m, XiPolyCliff.xi(m, direction).scale(2))
    if e.K == 0:
        return SymExpr(dn, 0)
    top = dn * _q_poly(m, 1) - (num * dq).scale(e.K)
    return SymExpr(top, e.K + 1)


def d_xi(e: SymExpr, direction: int) -> SymExpr:
    """Formal d/dxi_direction; ``direction == m`` is the normal variable xi_m."""
    if not 1 <= direction <= e.m:
        raise ValueError(f"direction {direction} outside 1..{e.m}")
    val = _d_xi_value(e, direction)
    jet = None
    if e.jet is not None:
        jet = {j: _d_xi_value(v, direction) for j, v in e.jet.items()}
    return SymExpr(val.numerator, val.K, jet)


def d_x(e: SymExpr, direction: int) -> SymExpr:
    """First x-derivative at the boundary point.  The result carries no jet."""
    if not 1 <= direction <= e.m:
        raise ValueError(f"direction {direction} outside 1..{e.m}")
    if e.jet is None:
        raise JetMissingError("expression has no x-jet (a factor without a derivative rule)")
    d = e.jet.get(direction)
    if d is None:
        return SymExpr(XmPoly(e.m), 0, None)
    return d


def restrict(e: SymExpr) -> RatFun:
    """Set |xi'| = 1: q becomes 1 + xi_m^2 and xi'-coefficients are reduced."""
    return RatFun(e.numerator.on_unit_sphere(), e.K, e.K)


def render_restricted(r: RatFun) -> str:
    """Debug form ``(N) / (1+xm^2)^k`` when the pole orders agree."""
    if r.a == r.b:
        if r.a == 0:
            return str(r.numerator)
        return f"({r.numerator}) / (1+xm^2)^{r.a}"
    return repr(r)


__all__ += ["render_restricted"]
