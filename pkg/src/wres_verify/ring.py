"""Exact scalar arithmetic.

``GaussRat`` is a Gaussian rational ``a + b*i`` with ``a, b`` arbitrary
precision fractions.  ``ScalarPoly`` is a sparse commutative polynomial in
named formal parameters with ``GaussRat`` coefficients.

Parameter names
---------------
``h1``               h'(0), the collar metric derivative at the boundary
``f``, ``finv``      the conformal factor and its inverse at x0
``df_<j>``           first derivative of f in direction j (``df_m`` is normal)
``dfinv_<j>``        same for f^{-1}
``vol``              Vol(S_{2n+2})
``pi``               the circle constant, only used by formula rendering
``s``, ``lapf``, ``gradf2``, ``flapf``   opaque interior-term symbols

No relation between parameters is applied by the ring itself.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussRat",
    "ScalarPoly",
    "I",
    "ONE",
    "ZERO",
    "param",
    "parse_fraction",
    "format_fraction",
    "validate_param",
]

_PARAM_RE = re.compile(r"^(h1|f|finv|vol|pi|s|lapf|gradf2|flapf|(?:df|dfinv)_(?:m|[1-9][0-9]*))$")

# display / sort order of parameter families
_PARAM_RANK = {"h1": 0, "f": 1, "finv": 2, "df": 3, "dfinv": 4, "pi": 5, "vol": 6,
               "s": 7, "lapf": 8, "gradf2": 9, "flapf": 10}


def validate_param(name: str) -> str:
    if not _PARAM_RE.match(name):
        raise ValueError(f"unknown formal parameter {name!r}")
    return name


def _param_key(name: str):
    family, _, idx = name.partition("_")
    if idx == "m":
        idx_key = (1, 0)
    elif idx:
        idx_key = (0, int(idx))
    else:
        idx_key = (0, 0)
    return (_PARAM_RANK[family], idx_key)


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    return Fraction(text.strip())


def format_fraction(q: Fraction) -> str:
    """Canonical ``"p/q"`` string (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    """Exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, complex):
            raise TypeError("floating point complex values are not exact")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussRat")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Rational)):
                return GaussRat(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Rational)):
                return GaussRat(self.re / other, self.im / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussRat(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return self.render()

    def render(self, imag_unit: str = "I") -> str:
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        im_part = {1: imag_unit, -1: f"-{imag_unit}"}.get(im_, f"{im_}*{imag_unit}")
        if re_ == 0:
            return im_part
        sign = "-" if im_ < 0 else "+"
        mag = -im_ if im_ < 0 else im_
        mag_part = imag_unit if mag == 1 else f"{mag}*{imag_unit}"
        return f"({re_} {sign} {mag_part})"

    def to_json(self) -> dict:
        return {"re": format_fraction(self.re), "im": format_fraction(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "GaussRat":
        return cls(parse_fraction(obj["re"]), parse_fraction(obj["im"]))


I = GaussRat(0, 1)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items(), key=lambda kv: _param_key(kv[0])))


def _mono_str(mono: tuple) -> str:
    if not mono:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in mono)


class ScalarPoly:
    """Sparse polynomial in formal parameters with GaussRat coefficients.

    ``terms`` maps a monomial, a sorted tuple of ``(name, exponent)`` pairs,
    to its nonzero coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = GaussRat.coerce(c)
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "ScalarPoly":
        return cls({(): GaussRat.coerce(c)})

    @classmethod
    def coerce(cls, value) -> "ScalarPoly":
        if isinstance(value, ScalarPoly):
            return value
        return cls.const(value)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not mono for mono in self.terms)

    def constant_term(self) -> GaussRat:
        return self.terms.get((), GaussRat(0))

    def params(self) -> set:
        return {name for mono in self.terms for name, _ in mono}

    def degree_in(self, names) -> int:
        names = {names} if isinstance(names, str) else set(names)
        best = 0
        for mono in self.terms:
            best = max(best, sum(e for n, e in mono if n in names))
        return best

    def __eq__(self, other):
        if not isinstance(other, ScalarPoly):
            try:
                other = ScalarPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, ScalarPoly):
            try:
                other = ScalarPoly.coerce(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            if mono in out:
                s = out[mono] + c
                if s.is_zero():
                    del out[mono]
                else:
                    out[mono] = s
            else:
                out[mono] = c
        return ScalarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ScalarPoly.coerce(other))

    def __rsub__(self, other):
        return ScalarPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ScalarPoly):
            try:
                g = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
            if g.is_zero():
                return ScalarPoly()
            return ScalarPoly._raw({m: c * g for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                prod = c1 * c2
                if mono in out:
                    s = out[mono] + prod
                    if s.is_zero():
                        del out[mono]
                    else:
                        out[mono] = s
                else:
                    out[mono] = prod
        return ScalarPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        g = GaussRat.coerce(other)
        return self * g.inverse()

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of a polynomial are not polynomials")
        result = ScalarPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def normalize(self) -> "ScalarPoly":
        """Re-canonicalize (drops zeros, re-sorts monomials); idempotent."""
        out = {}
        for mono, c in self.terms.items():
            key = _mono_mul((), tuple(sorted(((n, e) for n, e in mono if e),
                                             key=lambda kv: _param_key(kv[0]))))
            out[key] = out.get(key, GaussRat(0)) + c
        return ScalarPoly(out)

    def substitute(self, bindings: dict) -> "ScalarPoly":
        """Replace bound parameters by exact values; unbound ones stay."""
        if not bindings:
            return self
        vals = {validate_param(k): GaussRat.coerce(v) for k, v in bindings.items()}
        out = ScalarPoly()
        for mono, c in self.terms.items():
            coeff = c
            rest = []
            for name, e in mono:
                if name in vals:
                    coeff = coeff * vals[name] ** e
                else:
                    rest.append((name, e))
            out = out + ScalarPoly({tuple(rest): coeff})
        return out

    def cancel_pair(self, a: str, b: str) -> "ScalarPoly":
        """Apply the relation ``a*b = 1`` to every monomial."""
        out = ScalarPoly()
        for mono, c in self.terms.items():
            d = dict(mono)
            k = min(d.get(a, 0), d.get(b, 0))
            if k:
                d[a] -= k
                d[b] -= k
            new = tuple(sorted(((n, e) for n, e in d.items() if e),
                               key=lambda kv: _param_key(kv[0])))
            out = out + ScalarPoly({new: c})
        return out

    def coefficient_split(self, names) -> dict:
        """Group terms by their sub-monomial in ``names``."""
        names = set(names)
        groups = {}
        for mono, c in self.terms.items():
            key = tuple((n, e) for n, e in mono if n in names)
            rest = tuple((n, e) for n, e in mono if n not in names)
            groups.setdefault(key, {})[rest] = c
        return {k: ScalarPoly(v) for k, v in groups.items()}

    def sorted_items(self):
        return sorted(self.terms.items(),
                      key=lambda kv: [(_param_key(n), e) for n, e in kv[0]])

    def __repr__(self):
        return f"ScalarPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_items():
            cs = c.render()
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(_mono_str(mono))
            elif c == -1:
                parts.append("-" + _mono_str(mono))
            else:
                parts.append(f"{cs}*{_mono_str(mono)}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {_mono_str(m): c.to_json() for m, c in self.sorted_items()}

    @classmethod
    def from_json(cls, obj: dict) -> "ScalarPoly":
        terms = {}
        for key, val in obj.items():
            if key == "1":
                mono = ()
            else:
                pairs = []
                for factor in key.split("*"):
                    name, _, e = factor.partition("^")
                    pairs.append((validate_param(name), int(e) if e else 1))
                mono = tuple(sorted(pairs, key=lambda kv: _param_key(kv[0])))
            terms[mono] = GaussRat.from_json(val)
        return cls(terms)

    def evaluate(self, bindings: dict) -> complex:
        """Numeric value with every parameter bound to a float/complex."""
        total = 0j
        for mono, c in self.terms.items():
            v = complex(c)
            for name, e in mono:
                if name not in bindings:
                    raise KeyError(f"parameter {name!r} is unbound")
                v *= complex(bindings[name]) ** e
            total += v
        return total

    def to_complex(self) -> complex:
        if not self.is_constant():
            raise ValueError(f"polynomial still has free parameters: {sorted(self.params())}")
        return complex(self.constant_term())


def param(name: str, power: int = 1) -> ScalarPoly:
    """The monomial ``name**power`` as a ScalarPoly."""
    validate_param(name)
    if power == 0:
        return ScalarPoly.const(1)
    return ScalarPoly({((name, power),): GaussRat(1)})


ONE = ScalarPoly.const(1)
ZERO = ScalarPoly()
