import pytest

from wres_verify.catalog import (
    ReferenceId as R,
    SymbolId as S,
    crosscheck_piplus_sigma_m2,
    reference_form,
    sigma_m2nm1_an_recursive,
    symbol,
)
from wres_verify.clifford import XiPolyCliff
from wres_verify.ratfun import RatFun, d_xim, pi_plus
from wres_verify.ring import GaussRat, param
from wres_verify.symexpr import d_x, d_xi, restrict

NS = range(5)


def same(a: RatFun, b: RatFun) -> bool:
    return (a.on_unit_sphere() - b.on_unit_sphere()).on_unit_sphere().is_zero()


def m_of(n):
    return 2 * n + 4


@pytest.mark.parametrize("n", NS)
def test_sigma_m3_display(n):
    assert same(restrict(symbol(S.SIGMA_M3_A, n)), reference_form(R.SIGMA_M3_A, n))


@pytest.mark.parametrize("n", NS)
def test_sigma_m2nm1_an_even_part_and_recursion(n):
    s = symbol(S.SIGMA_M2NM1_AN, n)
    assert same(restrict(s).even_part(), reference_form(R.SIGMA_M2NM1_AN, n))
    assert s.same_value(sigma_m2nm1_an_recursive(n))


@pytest.mark.parametrize("n", NS)
def test_dpow_family(n):
    m = m_of(n)
    s = symbol(S.SIGMA_M2NM1_DPOW, n)
    assert same(restrict(s), reference_form(R.SIGMA_M2NM1_DPOW, n))
    assert same(restrict(d_xi(s, m)), reference_form(R.D_SIGMA_M2NM1_DPOW_ALT, n))
    assert same(restrict(d_xi(d_xi(s, m), m)), reference_form(R.D2_SIGMA_M2NM1_DPOW, n))
    assert same(restrict(d_x(s, m)), reference_form(R.DXM_SIGMA_M2NM1_DPOW, n))


@pytest.mark.parametrize("n", NS)
def test_dpow_first_derivative_short_display_drops_a_term(n):
    # the short display keeps only the xi_m c(xi) piece; the dropped piece is i c(dx_m)|xi|^{-2n-2}
    m = m_of(n)
    got = restrict(d_xi(symbol(S.SIGMA_M2NM1_DPOW, n), m))
    e = XiPolyCliff.c_dxm(m).scale(GaussRat(0, 1))
    missing = RatFun.one_plus_xm2_power(m, -n - 1, e)
    assert same(got - reference_form(R.D_SIGMA_M2NM1_DPOW, n), missing)


@pytest.mark.parametrize("n", NS)
def test_sigma0_at_base_point(n):
    assert same(restrict(symbol(S.SIGMA0_D_X0, n)), reference_form(R.SIGMA0_D_X0, n))


@pytest.mark.parametrize("n", NS)
def test_sigma_m2nm2_uses_c0_minus_m_over_4(n):
    # the display's leading constant is -(2n+3)/4; with c0 = -m/4 the gap is -h1/4 c(dx_m)|xi|^{-2n-2}
    m = m_of(n)
    got = restrict(symbol(S.SIGMA_M2NM2_DODD, n))
    gap = RatFun.one_plus_xm2_power(m, -n - 1, XiPolyCliff.c_dxm(m).scale(-param("h1") / 4))
    assert same(got - reference_form(R.SIGMA_M2NM2_DODD, n), gap)


@pytest.mark.parametrize("n", NS)
def test_piplus_sigma_m1_by_residue(n):
    # i c(xi)/((xm-i)(xm+i)) has residue (c(xi') + i c(dx_m))/2 at xm = i
    m = m_of(n)
    c = XiPolyCliff.c_xi_prime(m) + XiPolyCliff.c_dxm(m).scale(GaussRat(0, 1))
    expected = RatFun.pole(m, 1, 1, c.scale(GaussRat(1, 0) / 2))
    got = symbol(S.PIPLUS_SIGMA_M1, n)
    assert same(got, expected)
    assert same(got, -reference_form(R.PIPLUS_SIGMA_M1, n))


@pytest.mark.parametrize("n", NS)
def test_piplus_sigma_m1_derivatives(n):
    p = symbol(S.PIPLUS_SIGMA_M1, n)
    assert same(d_xim(p), reference_form(R.D_PIPLUS_SIGMA_M1, n))
    assert same(d_xim(d_xim(p)), reference_form(R.D2_PIPLUS_SIGMA_M1, n))


@pytest.mark.parametrize("n", NS)
def test_piplus_normal_derivative_sigma_m1(n):
    assert same(symbol(S.PIPLUS_DXM_SIGMA_M1, n), reference_form(R.PIPLUS_DXM_SIGMA_M1, n))


@pytest.mark.parametrize("n", NS)
def test_piplus_sigma_m2_family(n):
    m = m_of(n)
    a = pi_plus(restrict(symbol(S.SIGMA_M2_A, n)))
    assert same(d_xim(a), reference_form(R.D_PIPLUS_SIGMA_M2_A, n))
    assert same(d_xim(d_xim(a)), reference_form(R.D2_PIPLUS_SIGMA_M2_A, n))
    assert same(pi_plus(restrict(d_x(symbol(S.SIGMA_M2_A, n), m))), reference_form(R.PIPLUS_DXM_SIGMA_M2_A, n))


@pytest.mark.parametrize("n", NS)
def test_piplus_sigma_m3_even_part(n):
    # the even part of sigma_{-3} restricted is -i h1 ((2n+3)/2 xm (1+xm^2)^-2 + 2 xm (1+xm^2)^-3);
    # its projection is h1 i ((2n+4)/8 i (xm-i)^-2 + 1/4 (xm-i)^-3)
    m = m_of(n)
    got = pi_plus(restrict(symbol(S.SIGMA_M3_A, n)).even_part())
    h1i = param("h1") * GaussRat(0, 1)
    expected = (RatFun.pole(m, 1, 2, GaussRat(0, 2 * n + 4) / 8)
                + RatFun.pole(m, 1, 3, GaussRat(1) / 4)).scale(h1i)
    assert same(got, expected)


@pytest.mark.parametrize("n", NS)
def test_j1_expanded_matches_compact(n):
    assert same(reference_form(R.J1, n), reference_form(R.J1_EXPANDED, n))


@pytest.mark.parametrize("n", range(3))
def test_crosscheck_j1_minus_j2(n):
    cc = crosscheck_piplus_sigma_m2(n)
    assert cc.equal and cc.split_equal


def test_block_constants():
    m = 6
    assert symbol(S.GAMMA_M_X0, 1) == param("h1") * GaussRat(5) / 2
    deltas = symbol(S.DELTA_K_X0, 1)
    assert len(deltas) == m - 1
    assert deltas[0] == (XiPolyCliff.generator(m, 1) * XiPolyCliff.c_dxm(m)).scale(param("h1") / 4)


def test_n_out_of_range():
    with pytest.raises(ValueError):
        symbol(S.SIGMA_M2_A, 9)
    with pytest.raises(ValueError):
        reference_form("NOPE", 0)
