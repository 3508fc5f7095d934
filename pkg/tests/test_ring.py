from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import gauss
from wres_verify.ring import GaussRat, ScalarPoly, format_fraction, param, parse_fraction


def test_gauss_arithmetic_is_exact():
    a = GaussRat(Fraction(1, 3), 2)
    b = GaussRat(-1, Fraction(1, 2))
    assert a * b == GaussRat(Fraction(-1, 3) - 1, Fraction(1, 6) - 2)
    assert (a / b) * b == a
    assert GaussRat(0, 1) ** 2 == GaussRat(-1)
    assert GaussRat(1, 1).inverse() == GaussRat(Fraction(1, 2), Fraction(-1, 2))


def test_gauss_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussRat(0).inverse()


@given(gauss, gauss, gauss)
def test_gauss_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == GaussRat(1)


@given(gauss)
def test_gauss_json_round_trip(a):
    assert GaussRat.from_json(a.to_json()) == a


def test_fraction_text():
    assert parse_fraction(" -6/4 ") == Fraction(-3, 2)
    assert format_fraction(Fraction(2)) == "2/1"


def test_unknown_parameter_rejected():
    with pytest.raises(ValueError):
        param("bogus")


def test_scalar_poly_rendering_and_json():
    p = param("h1") * GaussRat(Fraction(1, 2), 1) + param("f") * param("df_m") - 3
    assert str(p) == "-3 + (1/2 + I)*h1 + f*df_m"
    assert ScalarPoly.from_json(p.to_json()) == p


def test_cancel_pair_removes_matched_factors_only():
    p = param("f") * param("finv") * param("h1") + param("f") * param("dfinv_m")
    assert p.cancel_pair("f", "finv") == param("h1") + param("f") * param("dfinv_m")


def test_evaluate_binds_every_parameter():
    p = param("h1") * 2 + param("pi")
    assert p.evaluate({"h1": 0.5, "pi": 3.0}) == pytest.approx(4.0)
    assert p.substitute({"h1": 1}) == param("pi") + 2


@given(st.lists(gauss, min_size=3, max_size=3))
def test_poly_ring_distributes(cs):
    x, y = param("h1"), param("f")
    a, b, c = (x * cs[0] + 1, y * cs[1] - x, x * y * cs[2])
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
