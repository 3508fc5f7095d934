import math

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from wres_verify.clifford import XiPolyCliff
from wres_verify.ratfun import RatFun
from wres_verify.ring import ScalarPoly
from wres_verify.sphere import LayeringError, moment, sphere_integrate, sphere_volume


def gamma_moment(exps, d):
    """Normalized monomial moment on S^{d-1} from the Gamma-function formula."""
    if any(e % 2 for e in exps):
        return 0
    full = list(exps) + [0] * (d - len(exps))
    num = 2 * sp.prod([sp.gamma(sp.Rational(e + 1, 2)) for e in full]) / sp.gamma(sp.Rational(sum(full) + d, 2))
    vol = 2 * sp.pi ** sp.Rational(d, 2) / sp.gamma(sp.Rational(d, 2))
    return sp.nsimplify(sp.simplify(num / vol))


@given(st.integers(0, 4), st.lists(st.integers(0, 4), min_size=1, max_size=3))
def test_moment_matches_gamma_formula(n, exps):
    d = 2 * n + 3
    got = moment(exps, d)
    assert sp.Rational(got.numerator, got.denominator) == gamma_moment(exps, d)


@given(st.integers(0, 4))
def test_sum_of_squares_integrates_to_volume(n):
    m = 2 * n + 4
    assert sphere_integrate(XiPolyCliff.xi_prime_norm2(m), n) == ScalarPoly.const(1)


@given(st.integers(0, 4), st.integers(0, 3), st.integers(1, 3))
def test_norm_symbol_absorbed(n, power, k):
    m = 2 * n + 4
    k = min(k, m - 1)
    p = XiPolyCliff.xi(m, k, 2)
    with_norm = XiPolyCliff.norm2_symbol(m, power) * p
    assert sphere_integrate(with_norm, n) == sphere_integrate(p, n)
    assert sphere_integrate(with_norm.expand_norm2(), n) == sphere_integrate(p, n)


def test_layering_error():
    with pytest.raises(LayeringError):
        sphere_integrate(RatFun.one_plus_xm2_power(4, -1), 0)


def test_non_scalar_rejected():
    with pytest.raises(ValueError):
        sphere_integrate(XiPolyCliff.generator(4, 1), 0)


def test_sphere_volume():
    assert sphere_volume(0) == pytest.approx(4 * math.pi)
    assert sphere_volume(1) == pytest.approx(8 * math.pi ** 2 / 3)
