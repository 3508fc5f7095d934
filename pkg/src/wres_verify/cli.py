"""Command-line front end: ``wres-verify {verify,case,piplus,dump-symbol}``.

Exit codes: 0 success (mismatches against published forms are findings, reported as
warnings), 1 internal inconsistency between routes, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from dataclasses import dataclass, field

from .catalog import N_MAX, N_MIN, ReferenceId, SymbolId, reference_form, symbol
from .engine import (
    UNITS,
    BoundaryReport,
    CaseReport,
    case_tuple,
    enumerate_cases,
    eval_case,
    verify,
)
from .ratfun import NotInHError, RatFun, XmPoly, pi_plus
from .ring import GaussRat, ScalarPoly
from .symexpr import SymExpr

__all__ = ["main", "CliConfig", "ParseError", "parse_expr", "report_to_json", "case_to_json",
           "dumps_canonical"]

_EXPR_M = 4  # scalar expressions need some Clifford dimension; the smallest one


# -- expression grammar ---------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class _Parser:
    """expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
    factor := base ('^' int)?; base := 'xm' | 'I' | rational | '(' expr ')'
    with an optional leading unary minus on terms."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _eat(self, ch: str) -> bool:
        if self._peek() == ch:
            self.pos += 1
            return True
        return False

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def parse(self) -> RatFun:
        out = self._expr()
        self._skip()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return out

    def _expr(self) -> RatFun:
        out = self._signed_term()
        while True:
            if self._eat("+"):
                out = out + self._term()
            elif self._eat("-"):
                out = out - self._term()
            else:
                return out

    def _signed_term(self) -> RatFun:
        if self._eat("-"):
            return -self._term()
        return self._term()

    def _term(self) -> RatFun:
        out = self._factor()
        while True:
            if self._eat("*"):
                out = out * self._factor()
            elif self._peek() == "/":
                where = self.pos
                self.pos += 1
                out = _divide(out, self._factor(), where)
            else:
                return out

    def _factor(self) -> RatFun:
        base = self._base()
        if self._eat("^"):
            negative = self._eat("-")
            where = self.pos
            k = self._int()
            out = RatFun.const(_EXPR_M, 1)
            for _ in range(k):
                out = out * base
            if negative:
                out = _divide(RatFun.const(_EXPR_M, 1), out, where)
            return out
        return base

    def _base(self) -> RatFun:
        ch = self._peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if not self._eat(")"):
                raise ParseError("expected ')'", self.pos)
            return inner
        if self.text.startswith("xm", self.pos):
            self.pos += 2
            return RatFun.xm(_EXPR_M)
        if ch == "I":
            self.pos += 1
            return RatFun.const(_EXPR_M, GaussRat(0, 1))
        if ch.isdigit():
            num = self._int()
            save = self.pos
            if self._eat("/") and self._peek().isdigit():
                den = self._int()
                if den == 0:
                    raise ParseError("division by zero", save)
                from fractions import Fraction
                return RatFun.const(_EXPR_M, GaussRat(Fraction(num, den)))
            self.pos = save
            return RatFun.const(_EXPR_M, num)
        if not ch:
            raise ParseError("unexpected end of input", start)
        raise ParseError(f"unexpected {ch!r}", start)


def _divide(a: RatFun, b: RatFun, where: int) -> RatFun:
    """a / b where b's numerator is c (xm-I)^p (xm+I)^q."""
    if b.is_zero():
        raise ParseError("division by zero", where)
    num, p, q = b.numerator, 0, 0
    from .ring import I as I_UNIT
    while num.degree() > 0:
        quo, rem = num.div_linear(I_UNIT)
        if rem.is_zero():
            num, p = quo, p + 1
            continue
        quo, rem = num.div_linear(-I_UNIT)
        if rem.is_zero():
            num, q = quo, q + 1
            continue
        raise ParseError("denominator must be a product of (xm-I), (xm+I), (1+xm^2) powers", where)
    c = num.coeff(0).as_scalar_poly().constant_term()
    top = (XmPoly.linear_power(_EXPR_M, I_UNIT, b.a) * XmPoly.linear_power(_EXPR_M, -I_UNIT, b.b))
    inv = RatFun(top.scale(ScalarPoly.const(c.inverse())), p, q)
    return a * inv


def parse_expr(text: str) -> RatFun:
    """Parse the piplus expression grammar into a RatFun with scalar coefficients."""
    return _Parser(text).parse()


# -- serialisation --------------------------------------------------------------

def _poly(p: ScalarPoly | None):
    return None if p is None else p.to_json()


def case_to_json(c: CaseReport) -> dict:
    return {
        "id": c.id,
        "tuple": c.tuple.as_dict(),
        "value": _poly(c.value),
        "paper_form": _poly(c.paper_form),
        "verdict": c.verdict,
        "diff": _poly(c.diff),
    }


def report_to_json(r: BoundaryReport, oracle=None) -> dict:
    out = {
        "theorem": r.theorem,
        "n": r.n,
        "cases": [case_to_json(c) for c in r.cases],
        "total": _poly(r.total),
        "paper_total": _poly(r.paper_total),
        "aggregate_verdict": r.aggregate_verdict,
        "warnings": list(r.warnings),
        "units": UNITS,
    }
    if oracle is not None:
        out["numeric_oracle"] = oracle
    return out


def dumps_canonical(obj) -> str:
    """Sorted keys, two-space indent, trailing newline; stable under parse/re-dump."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _case_text(c: CaseReport) -> str:
    t = c.tuple
    lines = [f"case {c.label}  r={t.r} ell={t.ell} k={t.k} j={t.j} alpha={t.alpha}",
             f"  value:      {c.value}",
             f"  paper form: {c.paper_form if c.paper_form is not None else '(none)'}",
             f"  verdict:    {c.verdict}"]
    if c.diff is not None:
        lines.append(f"  diff:       {c.diff}")
    return "\n".join(lines)


def report_to_text(r: BoundaryReport, oracle=None) -> str:
    lines = [f"theorem {r.theorem}, n = {r.n}  (units: {UNITS})"]
    lines += [_case_text(c) for c in r.cases]
    lines.append(f"total:       {r.total}")
    lines.append(f"paper total: {r.paper_total}")
    lines.append(f"aggregate:   {r.aggregate_verdict}")
    if oracle is not None:
        lines.append(f"numeric oracle: max relative error {oracle['max_rel_err']:.3e} "
                     f"({'pass' if oracle['pass'] else 'FAIL'})")
    lines += [f"warning: {w}" for w in r.warnings]
    return "\n".join(lines) + "\n"


# -- config and commands --------------------------------------------------------

@dataclass
class CliConfig:
    theorems: list = field(default_factory=lambda: [1])
    n_list: list = field(default_factory=lambda: [1])
    output: str = "text"
    out_path: str | None = None
    numeric_oracle: bool = False
    oracle_tol: float = 1e-9


class UsageError(Exception):
    pass


def _parse_n_list(text: str) -> list:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"--n expects a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise UsageError("--n needs at least one value")
    bad = [v for v in values if not N_MIN <= v <= N_MAX]
    if bad:
        raise UsageError(f"--n values must lie in {N_MIN}..{N_MAX}; got {bad}")
    return values


def _parse_theorems(text: str) -> list:
    if text == "both":
        return [1, 2]
    if text in ("1", "2"):
        return [int(text)]
    raise UsageError(f"--theorem must be 1, 2 or both, got {text!r}")


def _run_oracle(theorem: int, n: int, tol: float) -> dict:
    from .oracle import check_case, needed_params, random_bindings

    rng = random.Random(1000 * theorem + n)
    worst = 0.0
    ok = True
    for t in enumerate_cases(theorem, n):
        res = check_case(t, n, random_bindings(rng, needed_params(t, n)), tol)
        scale = abs(res.exact) if abs(res.exact) > 0 else 1.0
        worst = max(worst, res.abs_err / scale)
        ok = ok and res.ok
    return {"max_rel_err": worst, "pass": ok, "tol": tol}


def _emit(text: str, cfg: CliConfig):
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(cfg: CliConfig) -> int:
    reports = []
    status = 0
    for theorem in cfg.theorems:
        for n in cfg.n_list:
            rep = verify(theorem, n)
            oracle = _run_oracle(theorem, n, cfg.oracle_tol) if cfg.numeric_oracle else None
            if not rep.internally_consistent or (oracle is not None and not oracle["pass"]):
                status = 1
            if cfg.output == "json" or cfg.out_path:
                for w in rep.warnings:
                        print(f"warning: theorem {theorem}, n = {n}: {w}", file=sys.stderr)
            reports.append((rep, oracle))
    if cfg.output == "json":
        docs = [report_to_json(r, o) for r, o in reports]
        _emit(dumps_canonical(docs[0] if len(docs) == 1 else docs), cfg)
    else:
        _emit("\n".join(report_to_text(r, o) for r, o in reports), cfg)
    return status


def cmd_case(theorem: int, case_id: str, n: int, cfg: CliConfig) -> int:
    report = eval_case(case_tuple(theorem, case_id, n), theorem, n)
    if cfg.output == "json":
        doc = case_to_json(report)
        doc.update({"theorem": theorem, "n": n, "units": UNITS})
        _emit(dumps_canonical(doc), cfg)
    else:
        _emit(f"theorem {theorem}, n = {n}  (units: {UNITS})\n{_case_text(report)}\n", cfg)
    return 0 if report.routes_agree else 1


def _render_symbol(value) -> str:
    if isinstance(value, RatFun):
        if value.a == value.b and value.a:
            return f"({value.numerator}) / (1+xm^2)^{value.a}"
        return f"({value.numerator}) / ((xm-I)^{value.a} * (xm+I)^{value.b})"
    if isinstance(value, SymExpr):
        return str(value)
    if isinstance(value, tuple):
        return "\n".join(f"k={k}: {v}" for k, v in enumerate(value, start=1))
    return str(value)


def cmd_dump_symbol(symbol_id: str, n: int, cfg: CliConfig) -> int:
    key = symbol_id.strip().upper()
    if key.startswith("REF:"):
        value = reference_form(ReferenceId(key[4:]), n)
    else:
        value = symbol(SymbolId(key), n)
    text = _render_symbol(value)
    if cfg.output == "json":
        _emit(dumps_canonical({"id": symbol_id, "n": n, "expression": text}), cfg)
    else:
        _emit(text + "\n", cfg)
    return 0


def cmd_piplus(expr: str, cfg: CliConfig) -> int:
    r = parse_expr(expr)
    result = pi_plus(r).to_text()
    if cfg.output == "json":
        _emit(dumps_canonical({"input": expr, "pi_plus": result}), cfg)
    else:
        _emit(result + "\n", cfg)
    return 0


# -- entry point ----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--out", dest="out_path", default=None, help="write the report to this file")

    p = argparse.ArgumentParser(prog="wres-verify",
                                description="Exact boundary-term verification for conformally "
                                            "perturbed Dirac operator residues.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="evaluate all cases and aggregates")
    v.add_argument("--theorem", default="1", help="1, 2 or both")
    v.add_argument("--n", default="1", help="comma-separated list in 0..8")
    v.add_argument("--numeric-oracle", action="store_true", help="also cross-check with quadrature")
    v.add_argument("--tol", type=float, default=1e-9, help="relative tolerance of the numeric oracle")

    c = sub.add_parser("case", parents=[common], help="evaluate one case")
    c.add_argument("--theorem", default="1")
    c.add_argument("--id", required=True, help="case label, e.g. a.II, b, 3")
    c.add_argument("--n", default="1")

    d = sub.add_parser("dump-symbol", parents=[common], help="print a catalog entry")
    d.add_argument("--id", required=True, help="symbol id, or ref:<published form id>")
    d.add_argument("--n", default="0")

    q = sub.add_parser("piplus", parents=[common], help="project an expression in xm onto H+")
    q.add_argument("expr")
    return p


def _single_n(text: str) -> int:
    values = _parse_n_list(text)
    if len(values) != 1:
        raise UsageError("--n takes a single value for this command")
    return values[0]


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    warnings.simplefilter("ignore")
    try:
        cfg = CliConfig(output=args.output, out_path=args.out_path)
        if args.command == "verify":
            cfg.theorems = _parse_theorems(args.theorem)
            cfg.n_list = _parse_n_list(args.n)
            cfg.numeric_oracle = args.numeric_oracle
            if not args.tol > 0:
                raise UsageError("--tol must be positive")
            cfg.oracle_tol = args.tol
            return cmd_verify(cfg)
        if args.command == "case":
            theorems = _parse_theorems(args.theorem)
            if len(theorems) != 1:
                raise UsageError("case needs a single theorem")
            return cmd_case(theorems[0], args.id, _single_n(args.n), cfg)
        if args.command == "dump-symbol":
            return cmd_dump_symbol(args.id, _single_n(args.n), cfg)
        return cmd_piplus(args.expr, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wres-verify: error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"wres-verify: parse error: {exc.message} at position {exc.position}", file=sys.stderr)
        print(f"  {args.expr}\n  {' ' * exc.position}^", file=sys.stderr)
        return 2
    except NotInHError as exc:
        print(f"wres-verify: not in H: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"wres-verify: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
