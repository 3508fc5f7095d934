import math
import random
from fractions import Fraction

import pytest

from wres_verify.clifford import XiPolyCliff
from wres_verify.engine import case_integrand, case_value, enumerate_cases
from wres_verify.oracle import check_case, needed_params, quad_line, random_bindings
from wres_verify.ratfun import RatFun, XmPoly, integrate_line
from wres_verify.ring import GaussRat, ScalarPoly, param
from wres_verify.sphere import sphere_volume

M = 4
PARAMS = ("h1", "f", "df_m")


def random_integrand(rng: random.Random) -> RatFun:
    """Decaying N/((x-i)^a (x+i)^b) whose coefficients mix numbers and parameters."""
    a, b = rng.randint(1, 4), rng.randint(1, 4)
    coeffs = []
    for _ in range(rng.randint(1, a + b - 1)):
        c = ScalarPoly.const(GaussRat(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                                      Fraction(rng.randint(-9, 9), rng.randint(1, 5))))
        c = c + param(rng.choice(PARAMS)) * GaussRat(rng.randint(-3, 3))
        coeffs.append(XiPolyCliff.scalar(M, c))
    return RatFun(XmPoly(M, coeffs), a, b)


def random_integrand_results(count=20, seed=2024, tol=1e-9):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = random_integrand(rng)
        bindings = random_bindings(rng, PARAMS)
        exact = integrate_line(r).as_scalar_poly().evaluate(bindings) * math.pi
        numeric = quad_line(r, bindings)
        out.append(abs(exact - numeric) <= tol * max(abs(exact), 1e-300))
    return out


def phi_density_n0(route: str) -> complex:
    """Theorem 1 boundary density at n = 0 with Vol(S^2) = 4 pi."""
    cases = enumerate_cases(1, 0)
    names = set().union(*(needed_params(t, 0) for t in cases)) | {"h1"}
    bindings = random_bindings(random.Random(7), names)
    total = 0j
    for t in cases:
        if route == "exact":
            total += case_value(t, 0).evaluate(bindings) * sphere_volume(0)
        else:
            total += quad_line(case_integrand(t, 0), bindings) * sphere_volume(0)
    return total


def test_twenty_random_integrands():
    assert all(random_integrand_results())


def test_phi_vanishes_at_n0_by_both_routes():
    assert phi_density_n0("exact") == 0
    assert abs(phi_density_n0("quadrature")) < 1e-9


@pytest.mark.parametrize("theorem", (1, 2))
def test_case_values_against_quadrature(theorem):
    rng = random.Random(theorem)
    for t in enumerate_cases(theorem, 1):
        res = check_case(t, 1, random_bindings(rng, needed_params(t, 1)))
        assert res.ok, (t, res)
