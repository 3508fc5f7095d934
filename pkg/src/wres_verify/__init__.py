"""Exact symbolic verification of boundary terms in noncommutative residues
of conformally perturbed Dirac operators on manifolds with boundary."""
from .catalog import ReferenceId, SymbolId, reference_form, symbol
from .engine import (
    BoundaryReport,
    CaseReport,
    CaseTuple,
    case_value,
    closed_form,
    enumerate_cases,
    eval_case,
    interior_term,
    verify,
)
from .ratfun import NotInHError, RatFun, integrate_line, partial_fractions, pi_minus, pi_plus
from .ring import GaussRat, ScalarPoly, param

__version__ = "0.1.0"

__all__ = [
    "BoundaryReport", "CaseReport", "CaseTuple", "GaussRat", "NotInHError", "RatFun",
    "ReferenceId", "ScalarPoly", "SymbolId", "case_value", "closed_form", "enumerate_cases",
    "eval_case", "integrate_line", "interior_term", "param", "partial_fractions", "pi_minus",
    "pi_plus", "reference_form", "symbol", "verify",
]
