import pytest
from hypothesis import given

from strategies import cliff_element
from wres_verify.clifford import DimensionError, XiPolyCliff, clif_mul, clif_trace, trace_of_product
from wres_verify.ring import param


def test_generator_relations():
    m = 4
    e1, e2 = XiPolyCliff.generator(m, 1), XiPolyCliff.generator(m, 2)
    assert clif_mul(e1, e1) == XiPolyCliff.scalar(m, -1)
    assert (clif_mul(e1, e2) + clif_mul(e2, e1)).is_zero()


def test_c_xi_prime_squares_to_minus_norm():
    m = 6
    cp = XiPolyCliff.c_xi_prime(m)
    assert cp * cp == -XiPolyCliff.xi_prime_norm2(m)


def test_blade_printing():
    m = 6
    e = XiPolyCliff.generator(m, 1) * XiPolyCliff.generator(m, 3) * XiPolyCliff.generator(m, 5)
    assert str(e) == "1 * e1.e3.e5"


def test_dimension_checks():
    with pytest.raises(DimensionError):
        XiPolyCliff.generator(4, 5)
    with pytest.raises(DimensionError):
        XiPolyCliff.scalar(4) * XiPolyCliff.scalar(6)
    with pytest.raises(DimensionError):
        clif_trace(XiPolyCliff.scalar(6), n=0)


@pytest.mark.parametrize("n", range(5))
def test_trace_values(n):
    m = 2 * n + 4
    assert clif_trace(XiPolyCliff.scalar(m)) == XiPolyCliff.scalar(m, 2 ** (n + 2))
    for blade_gen in range(1, m + 1):
        assert clif_trace(XiPolyCliff.generator(m, blade_gen)).is_zero()


def test_trace_of_dxm_squared_n1():
    e = XiPolyCliff.c_dxm(6)
    assert clif_trace(e * e) == XiPolyCliff.scalar(6, -8)


def test_dxm_c_xi_prime_realization():
    m = 4
    assert XiPolyCliff.dxm_c_xi_prime(m) == XiPolyCliff.c_xi_prime(m).scale(param("h1") / 2)


def test_unit_sphere_normal_form():
    m = 4
    n2 = XiPolyCliff.xi_prime_norm2(m)
    assert n2.on_unit_sphere() == XiPolyCliff.scalar(m, 1)
    assert XiPolyCliff.norm2_symbol(m, 3).on_unit_sphere() == XiPolyCliff.scalar(m, 1)
    assert XiPolyCliff.norm2_symbol(m, 2).expand_norm2() == n2 * n2


def test_tangential_derivative():
    m = 4
    x1 = XiPolyCliff.xi(m, 1)
    assert (x1 * x1 * XiPolyCliff.xi(m, 2)).d_xi(1) == (x1 * XiPolyCliff.xi(m, 2)).scale(2)


@given(cliff_element(), cliff_element())
def test_trace_of_product_matches_full_product(a, b):
    assert trace_of_product(a, b) == clif_trace(a * b)
