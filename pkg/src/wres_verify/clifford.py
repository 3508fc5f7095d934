"""Clifford algebra Cl(m) at the boundary point x0.

Elements are finite sums ``coeff * xi-monomial * e_I`` where ``e_I`` is the
ordered product of orthonormal frame generators ``c(e_k), k in I``, the
xi-monomial lives in the tangential cotangent variables ``xi_1 .. xi_{m-1}``
and ``coeff`` is a :class:`~wres_verify.ring.ScalarPoly`.  Index 0 in an
xi-monomial is the symbol ``|xi'|^2`` itself, kept unexpanded so that powers
of ``|xi|^2 = |xi'|^2 + xi_m^2`` stay small.  Generators obey
``c(e_i) c(e_j) + c(e_j) c(e_i) = -2 delta_ij``.

Blades are stored as integer bitmasks (bit ``k-1`` for ``e_k``).
"""
from __future__ import annotations

from .ring import ScalarPoly, param

__all__ = [
    "DimensionError",
    "XiPolyCliff",
    "blade_mul",
    "blade_str",
    "blade_indices",
    "xi_mono_mul",
    "xi_degree",
    "spinor_rank",
]


class DimensionError(ValueError):
    """Operands live in Clifford algebras of different dimension."""


def blade_indices(blade: int) -> tuple:
    out = []
    k = 1
    while blade:
        if blade & 1:
            out.append(k)
        blade >>= 1
        k += 1
    return tuple(out)


def blade_str(blade: int) -> str:
    if blade == 0:
        return "1"
    return ".".join(f"e{k}" for k in blade_indices(blade))


def blade_from_indices(indices) -> int:
    mask = 0
    for k in indices:
        mask |= 1 << (k - 1)
    return mask


def blade_mul(a: int, b: int) -> tuple:
    """Return ``(sign, blade)`` with ``e_a e_b = sign * e_blade``."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b).count("1")  # each e_k e_k = -1
    return (-1 if swaps & 1 else 1), a ^ b


def xi_mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _xi_factor_str(k, e):
    if k == 0:
        return "|xi'|^2" if e == 1 else f"|xi'|^{2 * e}"
    return f"xi{k}" if e == 1 else f"xi{k}^{e}"


def xi_mono_str(mono: tuple) -> str:
    return "*".join(_xi_factor_str(k, e) for k, e in mono)


def xi_degree(mono: tuple) -> int:
    """Total degree in xi'; the |xi'|^2 symbol counts twice."""
    return sum(2 * e if k == 0 else e for k, e in mono)


def spinor_rank(m: int) -> int:
    """trace of the identity on spinors, 2^(m/2)."""
    if m % 2:
        raise DimensionError(f"spinor trace needs even dimension, got m={m}")
    return 2 ** (m // 2)


def _add_into(out: dict, key, coeff: ScalarPoly):
    if key in out:
        s = out[key] + coeff
        if s.is_zero():
            del out[key]
        else:
            out[key] = s
    elif not coeff.is_zero():
        out[key] = coeff


class XiPolyCliff:
    """Element of Cl(m) with polynomial dependence on the tangential xi's."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms=None):
        self.m = m
        clean = {}
        if terms:
            for key, c in terms.items():
                c = ScalarPoly.coerce(c)
                if not c.is_zero():
                    clean[key] = c
        self.terms = clean

    @classmethod
    def _raw(cls, m, terms):
        obj = cls.__new__(cls)
        obj.m = m
        obj.terms = terms
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, m):
        return cls._raw(m, {})

    @classmethod
    def scalar(cls, m, c=1):
        c = ScalarPoly.coerce(c)
        return cls._raw(m, {(0, ()): c} if c else {})

    @classmethod
    def generator(cls, m, k):
        """c(e_k); ``k = m`` is c(dx_m)."""
        if not 1 <= k <= m:
            raise DimensionError(f"generator index {k} outside 1..{m}")
        return cls._raw(m, {(1 << (k - 1), ()): ScalarPoly.const(1)})

    @classmethod
    def xi(cls, m, k, power=1):
        """The tangential variable xi_k (k < m) as a scalar element."""
        if not 1 <= k < m:
            raise DimensionError(f"tangential index {k} outside 1..{m - 1}")
        return cls._raw(m, {(0, ((k, power),)): ScalarPoly.const(1)})

    @classmethod
    def c_xi_prime(cls, m):
        """c(xi') = sum_{k<m} xi_k c(e_k)."""
        return cls._raw(m, {(1 << (k - 1), ((k, 1),)): ScalarPoly.const(1) for k in range(1, m)})

    @classmethod
    def c_dxm(cls, m):
        return cls.generator(m, m)

    @classmethod
    def xi_prime_norm2(cls, m):
        """|xi'|^2 = sum_{k<m} xi_k^2 (not reduced to 1)."""
        return cls._raw(m, {(0, ((k, 2),)): ScalarPoly.const(1) for k in range(1, m)})

    @classmethod
    def norm2_symbol(cls, m, power=1):
        """The unexpanded symbol (|xi'|^2)^power."""
        if power == 0:
            return cls.scalar(m, 1)
        return cls._raw(m, {(0, ((0, power),)): ScalarPoly.const(1)})

    @classmethod
    def dxm_c_xi_prime(cls, m):
        """d/dx_m of c(xi') at x0, realized as (h'(0)/2) c(xi')."""
        return cls.c_xi_prime(m).scale(param("h1") / 2)

    # -- basic protocol -----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, XiPolyCliff):
            raise TypeError(f"expected XiPolyCliff, got {type(other).__name__}")
        if other.m != self.m:
            raise DimensionError(f"Cl({self.m}) vs Cl({other.m})")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, XiPolyCliff):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, XiPolyCliff):
            other = XiPolyCliff.scalar(self.m, other)
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add_into(out, key, c)
        return XiPolyCliff._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return XiPolyCliff._raw(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, XiPolyCliff):
            other = XiPolyCliff.scalar(self.m, other)
        return self + (-other)

    def __rsub__(self, other):
        return XiPolyCliff.scalar(self.m, other) - self

    def scale(self, c) -> "XiPolyCliff":
        c = ScalarPoly.coerce(c)
        if c.is_zero():
            return XiPolyCliff.zero(self.m)
        out = {}
        for key, v in self.terms.items():
            p = v * c
            if p:
                out[key] = p
        return XiPolyCliff._raw(self.m, out)

    def __mul__(self, other):
        if not isinstance(other, XiPolyCliff):
            return self.scale(other)
        return clif_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    # -- structure ----------------------------------------------------------
    def blades(self) -> set:
        return {b for b, _ in self.terms}

    def scalar_part(self) -> "XiPolyCliff":
        return XiPolyCliff._raw(self.m, {k: c for k, c in self.terms.items() if k[0] == 0})

    def is_scalar(self) -> bool:
        return all(b == 0 for b, _ in self.terms)

    def xi_free(self) -> bool:
        return all(not xi for _, xi in self.terms)

    def as_scalar_poly(self) -> ScalarPoly:
        """The coefficient of ``1 * e_0``; other terms must be absent."""
        if not self.is_scalar() or not self.xi_free():
            raise ValueError("element still carries blades or xi-monomials")
        return self.terms.get((0, ()), ScalarPoly())

    def xi_parity(self) -> set:
        """Set of total xi'-degree parities present."""
        return {xi_degree(xi) % 2 for _, xi in self.terms}

    def even_part(self) -> "XiPolyCliff":
        """Drop terms odd in any single xi_k (those integrate to zero on the sphere)."""
        return XiPolyCliff._raw(self.m, {k: c for k, c in self.terms.items()
                                         if all(e % 2 == 0 for i, e in k[1] if i)})

    def map_coeffs(self, fn) -> "XiPolyCliff":
        out = {}
        for key, c in self.terms.items():
            v = fn(c)
            if v:
                out[key] = v
        return XiPolyCliff._raw(self.m, out)

    def d_xi(self, k: int) -> "XiPolyCliff":
        """Formal partial derivative in the tangential variable xi_k."""
        out = {}
        for (blade, xi), c in self.terms.items():
            d = dict(xi)
            e = d.get(k, 0)
            if e:
                dd = dict(d)
                if e == 1:
                    del dd[k]
                else:
                    dd[k] = e - 1
                _add_into(out, (blade, tuple(sorted(dd.items()))), c * e)
            t = d.get(0, 0)
            if t:
                # d/dxi_k |xi'|^2 = 2 xi_k
                dd = dict(d)
                if t == 1:
                    del dd[0]
                else:
                    dd[0] = t - 1
                dd[k] = dd.get(k, 0) + 1
                _add_into(out, (blade, tuple(sorted(dd.items()))), c * (2 * t))
        return XiPolyCliff._raw(self.m, out)

    def euler(self) -> "XiPolyCliff":
        """sum_k xi_k d/dxi_k, i.e. each term times its xi'-degree."""
        out = {}
        for (blade, xi), c in self.terms.items():
            deg = xi_degree(xi)
            if deg:
                out[(blade, xi)] = c * deg
        return XiPolyCliff._raw(self.m, out)

    def times_xi(self, k: int) -> "XiPolyCliff":
        out = {}
        for (blade, xi), c in self.terms.items():
            out[(blade, xi_mono_mul(xi, ((k, 1),)))] = c
        return XiPolyCliff._raw(self.m, out)

    def on_unit_sphere(self) -> "XiPolyCliff":
        """Normal form modulo |xi'|^2 - 1.

        Rewrites xi_1^2 -> 1 - sum_{k>=2} xi_k^2 until no monomial has
        xi_1-degree >= 2.  This is a canonical representative of the class.
        """
        work = {}
        for (blade, xi), c in self.terms.items():
            _add_into(work, (blade, tuple((k, e) for k, e in xi if k)), c)
        if self.m <= 2:
            # the sphere is {xi_1 = +-1}
            out = {}
            for (blade, xi), c in work.items():
                e = dict(xi).get(1, 0)
                _add_into(out, (blade, ((1, 1),) if e % 2 else ()), c)
            return XiPolyCliff._raw(self.m, out)
        out = {}
        while work:
            (blade, xi), c = work.popitem()
            d = dict(xi)
            e1 = d.get(1, 0)
            if e1 < 2:
                _add_into(out, (blade, xi), c)
                continue
            d[1] = e1 - 2
            if d[1] == 0:
                del d[1]
            base = tuple(sorted(d.items()))
            _add_into(work, (blade, base), c)
            for k in range(2, self.m):
                _add_into(work, (blade, xi_mono_mul(base, ((k, 2),))), -c)
        return XiPolyCliff._raw(self.m, out)

    def expand_norm2(self) -> "XiPolyCliff":
        """Replace the |xi'|^2 symbol by sum_{k<m} xi_k^2."""
        out = XiPolyCliff.zero(self.m)
        for (blade, xi), c in self.terms.items():
            d = dict(xi)
            t = d.pop(0, 0)
            term = XiPolyCliff._raw(self.m, {(blade, tuple(sorted(d.items()))): c})
            for _ in range(t):
                term = XiPolyCliff.xi_prime_norm2(self.m) * term
            out = out + term
        return out

    def substitute(self, bindings) -> "XiPolyCliff":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def params(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.params()
        return out

    # -- rendering ----------------------------------------------------------
    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].bit_count(), kv[0][0], kv[0][1]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (blade, xi), c in self.sorted_items():
            factors = []
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            factors.append(cs)
            if xi:
                factors.append(xi_mono_str(xi))
            if blade:
                factors.append(blade_str(blade))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"XiPolyCliff(m={self.m}: {self})"


def clif_mul(a: XiPolyCliff, b: XiPolyCliff) -> XiPolyCliff:
    """Clifford product under c(e_i)c(e_j) + c(e_j)c(e_i) = -2 delta_ij."""
    a._check(b)
    out = {}
    for (ba, xa), ca in a.terms.items():
        for (bb, xb), cb in b.terms.items():
            sign, blade = blade_mul(ba, bb)
            c = ca * cb
            if sign < 0:
                c = -c
            _add_into(out, (blade, xi_mono_mul(xa, xb)), c)
    return XiPolyCliff._raw(a.m, out)


def clif_trace(a: XiPolyCliff, n: int | None = None) -> XiPolyCliff:
    """Spinor trace: 2^(m/2) times the scalar-blade part.

    The result is a scalar element (an xi'-polynomial over ScalarPoly).
    When ``n`` is given it must match ``m = 2n + 4``.
    """
    if n is not None and a.m != 2 * n + 4:
        raise DimensionError(f"m={a.m} does not equal 2n+4 for n={n}")
    return a.scalar_part().scale(spinor_rank(a.m))


def trace_of_product(a: XiPolyCliff, b: XiPolyCliff) -> XiPolyCliff:
    """trace(a*b) without forming the full product."""
    a._check(b)
    by_blade = {}
    for (bb, xb), cb in b.terms.items():
        by_blade.setdefault(bb, []).append((xb, cb))
    out = {}
    rank = spinor_rank(a.m)
    for (ba, xa), ca in a.terms.items():
        partners = by_blade.get(ba)
        if not partners:
            continue
        sign, _ = blade_mul(ba, ba)
        for xb, cb in partners:
            c = ca * cb * (sign * rank)
            _add_into(out, (0, xi_mono_mul(xa, xb)), c)
    return XiPolyCliff._raw(a.m, out)


__all__ += ["clif_mul", "clif_trace", "trace_of_product", "blade_from_indices"]
