import math
import time
import warnings
from fractions import Fraction

import pytest

from wres_verify.engine import (
    CASE_IDS,
    ClosedFormWarning,
    case_tuple,
    case_value,
    closed_form,
    enumerate_cases,
    eval_case,
    interior_term,
    normalize_case_id,
    verify,
)
from wres_verify.ring import GaussRat, param

F_JETS = {"df", "dfinv"}
H1_PI = param("h1") * param("pi")


def jet_params(p):
    return {name for name in p.params() if name.split("_")[0] in F_JETS}


@pytest.mark.parametrize("theorem", (1, 2))
@pytest.mark.parametrize("n", range(5))
def test_five_cases_satisfy_the_order_constraint(theorem, n):
    cases = enumerate_cases(theorem, n)
    assert len(cases) == 5
    r_max, l_max = {1: (-2, -2 * n), 2: (-1, -2 * n - 1)}[theorem]
    for t in cases:
        assert t.r - t.k - t.alpha + t.ell - t.j == -2 * n - 3
        assert t.r <= r_max and t.ell <= l_max
        assert min(t.j, t.k, t.alpha) >= 0
    assert len(set(cases)) == 5


def test_case_labels_are_bijective():
    for theorem in (1, 2):
        tuples = {case_tuple(theorem, cid, 2) for cid in CASE_IDS[theorem]}
        assert tuples == set(enumerate_cases(theorem, 2))


def test_case_id_aliases():
    assert normalize_case_id(1, "(a)(II)") == "a.II"
    assert normalize_case_id(1, "aii") == "a.II"
    assert normalize_case_id(2, "(4)") == "4"
    with pytest.raises(ValueError):
        normalize_case_id(1, "d")


def test_theorem_1_values_at_n1():
    got = {cid: case_value(case_tuple(1, cid, 1), 1) for cid in CASE_IDS[1]}
    assert got["a.I"].is_zero()
    assert got["b"] == H1_PI * GaussRat(Fraction(-15, 8))
    assert got["c"] == H1_PI * GaussRat(Fraction(15, 8))


@pytest.mark.parametrize("theorem", (1, 2))
@pytest.mark.parametrize("n", range(5))
def test_routes_agree(theorem, n):
    for t in enumerate_cases(theorem, n):
        assert eval_case(t, theorem, n).routes_agree


@pytest.mark.parametrize("theorem", (1, 2))
@pytest.mark.parametrize("n", range(4))
def test_values_are_linear_in_first_order_data(theorem, n):
    # every term carries exactly one first-order datum: h'(0) or one derivative of f^{+-1}
    for t in enumerate_cases(theorem, n):
        v = case_value(t, n)
        for mono, _ in v.sorted_items():
            names = [name for name, e in mono for _ in range(e)]
            first_order = [x for x in names if x == "h1" or x.split("_")[0] in F_JETS]
            assert len(first_order) == 1, (t, v)
        assert v.degree_in({"h1"}) <= 1


@pytest.mark.parametrize("n", range(5))
def test_theorem_1_is_free_of_f(n):
    for t in enumerate_cases(1, n):
        assert not jet_params(case_value(t, n))


@pytest.mark.parametrize("n", range(4))
def test_odd_part_does_not_contribute(n):
    for t in enumerate_cases(1, n):
        assert case_value(t, n, drop_odd=True) == case_value(t, n)
    with pytest.raises(ValueError):
        case_value(enumerate_cases(2, n)[0], n, drop_odd=True)


@pytest.mark.parametrize("n", range(5))
def test_theorem_1_total_vanishes(n):
    assert verify(1, n).total.is_zero()


@pytest.mark.parametrize("n,h1_coeff,f_coeff", [(0, Fraction(1, 8), Fraction(1, 2)),
                                                (1, Fraction(1, 4), Fraction(1))])
def test_theorem_2_totals(n, h1_coeff, f_coeff):
    pi = param("pi")
    expected = (H1_PI * GaussRat(h1_coeff)
                + param("f") * param("df_m") * pi * GaussRat(0, f_coeff)
                - param("f") * param("dfinv_m") * pi * GaussRat(f_coeff)
                + param("finv") * param("df_m") * pi * GaussRat(f_coeff))
    assert verify(2, n).total == expected


def test_report_flags_and_warnings():
    rep = verify(2, 1)
    assert rep.internally_consistent
    assert rep.aggregate_verdict in {"match", "mismatch"}
    assert any("A^{3+n}_{-1-n}" in w for w in rep.warnings)


def test_undefined_symbol_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        closed_form("Y0", 1)
    assert any(issubclass(w.category, ClosedFormWarning) for w in caught)


def test_closed_form_id_validation():
    with pytest.raises(ValueError):
        closed_form("NOPE", 1)
    with pytest.raises(ValueError):
        closed_form("CASE_B", 9)


@pytest.mark.parametrize("n", range(5))
def test_interior_term_structure(n):
    term = interior_term(1, n)
    assert term.coefficient == Fraction(2 ** (4 * n + 12), math.factorial(2 * n + 4))
    assert term.pi_power == 2 * n + 6
    assert interior_term(2, n) == term
    assert term.bracket.substitute({"s": 0, "lapf": 0, "gradf2": 0, "flapf": 0}).is_zero()


def test_interior_term_with_constant_f():
    # constant f leaves only the scalar-curvature term
    term = interior_term(1, 0).substitute({"lapf": 0, "gradf2": 0, "flapf": 0})
    assert term.bracket == param("s") * GaussRat(Fraction(-1, 12))


@pytest.mark.parametrize("theorem,limit", [(1, 10.0), (2, 10.0)])
def test_runtime_at_n4(theorem, limit):
    start = time.perf_counter()
    verify(theorem, 4)
    assert time.perf_counter() - start < limit


def test_theorem_1_tuples_at_n1():
    got = {(t.r, t.ell, t.k, t.j, t.alpha) for t in enumerate_cases(1, 1)}
    assert got == {(-2, -2, 0, 0, 1), (-2, -2, 0, 1, 0), (-2, -2, 1, 0, 0), (-2, -3, 0, 0, 0), (-3, -2, 0, 0, 0)}
    labels = {cid: case_tuple(1, cid, 1) for cid in CASE_IDS[1]}
    assert (labels["a.I"].alpha, labels["a.II"].j, labels["a.III"].k) == (1, 1, 1)
    assert (labels["b"].ell, labels["c"].r) == (-3, -3)
