"""Univariate polynomials and rational functions in t over a finite field.

``Poly`` and ``RatFunc`` are immutable.  A ``RatFunc`` is always kept in
canonical form: numerator and denominator coprime, denominator monic.
Places of the rational function field are closed points of P^1 over the
coefficient field: monic irreducible polynomials plus one point at infinity.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import FieldDesc, FieldElement

__all__ = ["Poly", "RatFunc", "Place", "INFINITY", "valuation", "factor",
           "coeff_frobenius", "places_of", "residue", "INF_VALUATION"]

# valuation of the zero function
INF_VALUATION = float("inf")


class Poly:
    """Polynomial over ``field`` with little-endian coefficients (empty = 0)."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: FieldDesc):
        cs = [c if isinstance(c, FieldElement) and c.field is field else field(c)
              for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)
        self.field = field

    @classmethod
    def _raw(cls, coeffs: list, field: FieldDesc) -> Poly:
        obj = cls.__new__(cls)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        obj.coeffs = tuple(coeffs)
        obj.field = field
        return obj

    @classmethod
    def t(cls, field: FieldDesc) -> Poly:
        return cls._raw([field.zero, field.one], field)

    @classmethod
    def const(cls, a, field: FieldDesc) -> Poly:
        return cls([a], field)

    @classmethod
    def monomial(cls, a, n: int, field: FieldDesc) -> Poly:
        return cls([0] * n + [a], field)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = self.coeffs[-1].inverse()
        return Poly._raw([c * inv for c in self.coeffs], self.field)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return Poly([other], self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly._raw([], self.field)
        if len(b) == 1:
            s = b[0]
            return Poly._raw([c * s for c in a], self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = o.degree
        if len(r) <= db:
            return Poly._raw([], self.field), self
        inv = o.lc.inverse()
        q = [self.field.zero] * (len(r) - db)
        bc = o.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            coef = r[i] * inv
            if coef:
                q[i - db] = coef
                for j in range(db + 1):
                    r[i - db + j] = r[i - db + j] - coef * bc[j]
        return Poly._raw(q, self.field), Poly._raw(r[:db], self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, (Poly, RatFunc)):
            return RatFunc(self) / other
        if isinstance(other, (int, FieldElement)):
            return self * self.field(other).inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, FieldElement)):
            return RatFunc(Poly([other], self.field)) / self
        return NotImplemented

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ValueError("division is not exact")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self.coeffs == Poly([other], self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(c.to_int() for c in self.coeffs)))

    def sort_key(self) -> tuple:
        """Graded lexicographic key: degree, then coefficients from the top."""
        return (self.degree, tuple(c.to_int() for c in reversed(self.coeffs)))

    # -- evaluation and substitution ----------------------------------
    def __call__(self, a):
        result = self.field.zero if isinstance(a, FieldElement) and a.field is self.field else 0
        for c in reversed(self.coeffs):
            result = result * a + c
        return result

    def derivative(self) -> Poly:
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def subs_power(self, m: int) -> Poly:
        """Return self(t^m)."""
        out = [self.field.zero] * (m * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return Poly._raw(out, self.field)

    def reverse(self, n: int | None = None) -> Poly:
        """t^n * self(1/t), with n = degree by default."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return Poly._raw(list(reversed(cs[: n + 1])), self.field)

    def map_coeffs(self, fn) -> Poly:
        return Poly._raw([fn(c) for c in self.coeffs], self.field)

    def change_field(self, field: FieldDesc) -> Poly:
        return Poly._raw([field.embed(c) for c in self.coeffs], field)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c.is_zero():
                continue
            cs = repr(c)
            if self.field.k > 1 and "+" in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)


def pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def pxgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, u) with s*a + u*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(1, F), Poly([], F)
    u0, u1 = Poly([], F), Poly.const(1, F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    inv = r0.lc.inverse()
    return r0 * inv, s0 * inv, u0 * inv


def inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = pxgcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError("not invertible modulo m")
    return s % m


def powmod(base: Poly, e: int, m: Poly) -> Poly:
    result = Poly.const(1, base.field) % m
    base = base % m
    while e:
        if e & 1:
            result = (result * base) % m
        e >>= 1
        if e:
            base = (base * base) % m
    return result


class RatFunc:
    """Reduced fraction num/den with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        if not isinstance(num, Poly):
            if den is None or not isinstance(den, Poly):
                raise TypeError("RatFunc needs a Poly numerator or denominator")
            num = Poly([num], den.field)
        if den is None:
            den = Poly.const(1, num.field)
        elif not isinstance(den, Poly):
            den = Poly([den], num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1, num.field)
            else:
                g = pgcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lc = den.lc
                if lc != 1:
                    inv = lc.inverse()
                    num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def t(cls, field: FieldDesc) -> RatFunc:
        return cls(Poly.t(field))

    @classmethod
    def const(cls, a, field: FieldDesc) -> RatFunc:
        return cls(Poly.const(a, field))

    @property
    def field(self) -> FieldDesc:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    @property
    def degree(self) -> int:
        """max(deg num, deg den), the degree of the map P^1 -> P^1."""
        return max(self.num.degree, self.den.degree, 0)

    def _coerce(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, _reduced=True) if other else RatFunc(other)
        if isinstance(other, (int, FieldElement)):
            return RatFunc(Poly([other], self.field))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_const() and o.num:
            return RatFunc(self.num * o.num.lc, self.den, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, _reduced=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, a: FieldElement) -> FieldElement:
        d = self.den(a)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(a) / d

    def subs_power(self, m: int) -> RatFunc:
        """self(t^m); substitution by a power keeps coprimality."""
        return RatFunc(self.num.subs_power(m), self.den.subs_power(m), _reduced=True)

    def subs_scale(self, lam: FieldElement) -> RatFunc:
        """self(lam * t)."""
        def scaled(P: Poly) -> Poly:
            out, pw = [], P.field.one
            for c in P.coeffs:
                out.append(c * pw)
                pw = pw * lam
            return Poly._raw(out, P.field)
        return RatFunc(scaled(self.num), scaled(self.den))

    def at_infinity(self, twist: int = 0) -> RatFunc:
        """s^twist * self(1/s) as a rational function of s."""
        dn, dd = self.num.degree, self.den.degree
        if self.is_zero():
            return self
        shift = dd - dn + twist
        num, den = self.num.reverse(), self.den.reverse()
        if shift >= 0:
            num = num * Poly.monomial(1, shift, self.field)
        else:
            den = den * Poly.monomial(1, -shift, self.field)
        return RatFunc(num, den)

    def map_coeffs(self, fn) -> RatFunc:
        return RatFunc(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def change_field(self, field: FieldDesc) -> RatFunc:
        return RatFunc(self.num.change_field(field), self.den.change_field(field), _reduced=True)

    def coefficients(self) -> list[FieldElement]:
        return list(self.num.coeffs) + list(self.den.coeffs)

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class Place:
    """A closed point of P^1: a monic irreducible polynomial, or infinity."""

    poly: Poly | None

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self) -> tuple:
        return (1, ()) if self.poly is None else (0, self.poly.sort_key())

    def __repr__(self):
        return "Place(inf)" if self.poly is None else f"Place({self.poly})"


INFINITY = Place(None)


def poly_valuation(f: Poly, pi: Poly) -> int:
    if f.is_zero():
        raise ValueError("valuation of the zero polynomial")
    n = 0
    while True:
        q, r = divmod(f, pi)
        if r:
            return n
        f = q
        n += 1


def valuation(f, v: Place):
    """Order of vanishing of f at v; INF_VALUATION for f = 0."""
    if isinstance(f, Poly):
        f = RatFunc(f, _reduced=True)
    if f.is_zero():
        return INF_VALUATION
    if v.is_infinity:
        return f.den.degree - f.num.degree
    return poly_valuation(f.num, v.poly) - poly_valuation(f.den, v.poly)


def coeff_frobenius(f, power: int):
    """Raise every coefficient of a Poly or RatFunc to ``power`` (t fixed)."""
    if isinstance(f, Poly):
        return f.map_coeffs(lambda c: c ** power)
    if isinstance(f, RatFunc):
        return RatFunc(f.num.map_coeffs(lambda c: c ** power),
                       f.den.map_coeffs(lambda c: c ** power), _reduced=True)
    if isinstance(f, FieldElement):
        return f ** power
    raise TypeError(f"cannot apply Frobenius to {type(f).__name__}")


# -- factorization (Cantor-Zassenhaus) ------------------------------------

def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.p
    root_exp = p ** (F.k - 1)
    return Poly._raw([f.coeffs[i] ** root_exp for i in range(0, len(f.coeffs), p)], F)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition of a monic f into (squarefree, multiplicity)."""
    F = f.field
    p = F.p
    out: list[tuple[Poly, int]] = []
    f = f.monic()
    if f.degree <= 0:
        return out
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = pgcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = pgcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w, c = y, c // y
    if c.degree > 0:
        for g, m in squarefree_decomposition(_pth_root(c)):
            out.append((g, m * p))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    Q = F.q
    t = Poly.t(F)
    out = []
    h = t % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, Q, f)
        g = pgcd(f, h - t)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f.monic()]
    F = f.field
    Q = F.q
    e = (Q ** d - 1) // 2
    while True:
        a = Poly([F.random(rng) for _ in range(f.degree)], F)
        if a.degree <= 0:
            continue
        g = pgcd(a, f)
        if 0 < g.degree < f.degree:
            break
        b = powmod(a, e, f) - 1
        g = pgcd(b, f)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


@functools.lru_cache(maxsize=4096)
def _factor_cached(f: Poly) -> tuple[tuple[Poly, int], ...]:
    rng = random.Random(0x5EED)
    result: dict[Poly, int] = {}
    for g, m in squarefree_decomposition(f):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                result[irr] = result.get(irr, 0) + m
    return tuple(sorted(result.items(), key=lambda kv: kv[0].sort_key()))


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in canonical order."""
    if f.is_zero():
        raise ValueError("cannot factor zero")
    return list(_factor_cached(f.monic()))


def places_of(*functions) -> list[Place]:
    """Finite places where some given RatFunc/Poly has a zero or a pole."""
    seen: dict[Poly, Place] = {}
    for f in functions:
        if isinstance(f, Poly):
            parts = [f]
        else:
            parts = [f.num, f.den]
        for P in parts:
            if P.degree > 0:
                for g, _ in factor(P):
                    seen.setdefault(g, Place(g))
    return sorted(seen.values(), key=Place.sort_key)


def residue(f: RatFunc, v: Place, shift: int) -> Poly:
    """Class of f * pi^(-shift) in the residue field at v, as a reduced Poly.

    Requires valuation(f, v) >= shift.  At infinity the local parameter is
    1/t and the residue field is the coefficient field.
    """
    if v.is_infinity:
        return residue(f.at_infinity(), Place(Poly.t(f.field)), shift)
    if f.is_zero():
        return Poly([], f.field)
    val = valuation(f, v)
    if val < shift:
        raise ValueError("valuation below the requested shift")
    if val > shift:
        return Poly([], f.field)
    pi = v.poly
    num, den = f.num, f.den
    for _ in range(max(val, 0)):
        num = num // pi
    for _ in range(max(-val, 0)):
        den = den // pi
    return (num * inverse_mod(den, pi)) % pi
