"""Randomized algebraic identities, 100 examples each (see conftest profile)."""
from hypothesis import given
from hypothesis import strategies as st

from strategies import cliff_element, scalar_ratfun
from wres_verify.clifford import XiPolyCliff, clif_trace
from wres_verify.ratfun import d_xim, integrate_line, partial_fractions, pi_minus, pi_plus
from wres_verify.ring import ScalarPoly
from wres_verify.sphere import sphere_integrate


@given(scalar_ratfun())
def test_piplus_idempotent(r):
    p = pi_plus(r)
    assert pi_plus(p) == p


@given(scalar_ratfun())
def test_piplus_plus_piminus_is_identity(r):
    assert pi_plus(r) + pi_minus(r) == r


@given(scalar_ratfun())
def test_piplus_commutes_with_derivative(r):
    assert pi_plus(d_xim(r)) == d_xim(pi_plus(r))


@given(scalar_ratfun(), scalar_ratfun())
def test_integration_by_parts(f, g):
    assert integrate_line(d_xim(f) * g) == -integrate_line(f * d_xim(g))


@given(scalar_ratfun(proper=False))
def test_partial_fraction_recombination(r):
    assert partial_fractions(r).recombine() == r


@given(cliff_element(), cliff_element(), cliff_element())
def test_clifford_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(cliff_element(), cliff_element())
def test_trace_cyclic(a, b):
    assert clif_trace(a * b) == clif_trace(b * a)


@given(st.integers(0, 8))
def test_sphere_second_moments_sum_to_volume(n):
    m = 2 * n + 4
    total = ScalarPoly()
    for k in range(1, m):
        total = total + sphere_integrate(XiPolyCliff.xi(m, k, 2), n)
    assert total == ScalarPoly.const(1)


@given(st.integers(0, 4), st.integers(1, 3), cliff_element(m=4))
def test_norm_factor_absorbed_on_sphere(n, power, a):
    m = 2 * n + 4
    # lift the random element to dimension m and keep its scalar part
    p = XiPolyCliff(m, {k: v for k, v in a.scalar_part().terms.items()})
    lifted = XiPolyCliff.norm2_symbol(m, power) * p
    assert sphere_integrate(lifted, n) == sphere_integrate(p, n)
    assert sphere_integrate(lifted.expand_norm2(), n) == sphere_integrate(p, n)
