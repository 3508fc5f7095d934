"""Floating-point cross-check of exact line integrals with adaptive quadrature."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from scipy.integrate import quad

from .engine import CaseTuple, case_integrand, case_value
from .ratfun import RatFun

__all__ = ["OracleResult", "numeric_coefficients", "quad_line", "random_bindings", "check_case",
           "needed_params"]


def numeric_coefficients(r: RatFun, bindings: dict) -> list:
    """Numerator coefficients of a scalar RatFun as complex numbers."""
    return [c.as_scalar_poly().evaluate(bindings) if not c.is_zero() else 0j
            for c in r.numerator.coeffs]


def quad_line(r: RatFun, bindings: dict | None = None, epsrel: float = 1e-13) -> complex:
    """Integral of ``r`` over the real line by adaptive quadrature (QUADPACK QAGI)."""
    coeffs = numeric_coefficients(r, bindings or {})
    a, b = r.a, r.b

    def value(x: float) -> complex:
        num = 0j
        for c in reversed(coeffs):
            num = num * x + c
        return num / ((x - 1j) ** a * (x + 1j) ** b)

    opts = dict(epsabs=0.0, epsrel=epsrel, limit=500)
    re_, _ = quad(lambda x: value(x).real, -math.inf, math.inf, **opts)
    im_, _ = quad(lambda x: value(x).imag, -math.inf, math.inf, **opts)
    return complex(re_, im_)


def random_bindings(rng: random.Random, names) -> dict:
    """Real values in [0.5, 2] for each parameter; ``pi`` is always math.pi."""
    out = {name: rng.uniform(0.5, 2.0) for name in sorted(names)}
    out["pi"] = math.pi
    return out


@dataclass(frozen=True)
class OracleResult:
    exact: complex
    numeric: complex
    ok: bool

    @property
    def abs_err(self) -> float:
        return abs(self.exact - self.numeric)


def check_case(t: CaseTuple, n: int, bindings: dict, tol: float = 1e-9, vol: float = 1.0) -> OracleResult:
    """Compare the exact case value with quadrature of its sphere-averaged integrand.

    ``vol`` multiplies both sides (the sphere volume unit).  The comparison
    is relative when the exact value is nonzero and absolute otherwise.
    """
    exact = case_value(t, n).evaluate(bindings) * vol
    numeric = quad_line(case_integrand(t, n), bindings) * vol
    scale = abs(exact) if abs(exact) > 0 else 1.0
    return OracleResult(exact, numeric, abs(exact - numeric) <= tol * scale)


def needed_params(t: CaseTuple, n: int) -> set:
    """Parameters that must be bound to evaluate the case numerically."""
    names = set(case_value(t, n).params())
    for c in case_integrand(t, n).numerator.coeffs:
        if not c.is_zero():
            names |= c.as_scalar_poly().params()
    return names
