"""Finite fields F_p and single-step extensions F_p[z]/(m(z)).

Elements are immutable and carry their field descriptor.  The total order
behind every canonical root choice is the
integer encoding ``sum(c_i * p**i)`` of the coefficient vector, which is the
plain integer order on a prime field.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "FieldDesc",
    "FieldElement",
    "SpecialConstants",
    "make_field",
    "is_prime",
    "sqrt",
    "nth_roots",
    "cube_roots",
    "cubic_symbol",
    "legendre",
    "special_constants",
]

MAX_DEGREE = 6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % d == 0:
            return n == d
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- integer-coefficient polynomial helpers over F_p (little-endian lists) --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([v % p for v in out])


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] * inv % p
        if coef:
            q[i - db] = coef
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - coef * b[j]) % p
    return _trim(q), _trim(a[:db])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [v * inv % p for v in a]
    return a


def _ppowmod(base: list[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f over F_p."""
    k = len(f) - 1
    if k == 1:
        return True
    z = [0, 1]

    def frob_iter(times: int) -> list[int]:
        h = z
        for _ in range(times):
            h = _ppowmod(h, p, f, p)
        return h

    h = frob_iter(k)
    if _trim([(x - y) % p for x, y in itertools.zip_longest(h, z, fillvalue=0)]):
        return False
    for r in _prime_factors(k):
        g = frob_iter(k // r)
        diff = _trim([(x - y) % p for x, y in itertools.zip_longest(g, z, fillvalue=0)])
        if len(_pgcd(f, diff, p)) != 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """The field F_{p^k}; ``modulus`` is the monic defining polynomial (k > 1)."""

    p: int
    k: int
    modulus: tuple[int, ...] | None = None
    _red: tuple[tuple[int, ...], ...] = dc_field(default=(), repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.k, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.k - 1), self)

    @property
    def gen(self) -> FieldElement:
        """The class of z (the prime element 1 is returned for k = 1)."""
        if self.k == 1:
            return self.one
        return FieldElement((0, 1) + (0,) * (self.k - 2), self)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return self.embed(value)
        if isinstance(value, int):
            return FieldElement((value % self.p,) + (0,) * (self.k - 1), self)
        coeffs = [int(v) % self.p for v in value]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients for this field")
        return FieldElement(tuple(coeffs) + (0,) * (self.k - len(coeffs)), self)

    def embed(self, a: FieldElement) -> FieldElement:
        """Embed a prime-field element (or an element of this field)."""
        if a.field is self:
            return a
        if a.field.p != self.p:
            raise ValueError("characteristic mismatch")
        if a.field.k == 1:
            return self(a.c[0])
        if a.field == self:
            return FieldElement(a.c, self)
        raise ValueError("only prime-field elements embed implicitly")

    def from_int(self, n: int) -> FieldElement:
        """Inverse of :meth:`FieldElement.to_int`."""
        coeffs = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            coeffs.append(r)
        return FieldElement(tuple(coeffs), self)

    def elements(self) -> Iterator[FieldElement]:
        for n in range(self.q):
            yield self.from_int(n)

    def random(self, rng) -> FieldElement:
        return FieldElement(tuple(rng.randrange(self.p) for _ in range(self.k)), self)

    def __eq__(self, other):
        return (isinstance(other, FieldDesc) and self.p == other.p
                and self.modulus == other.modulus and self.k == other.k)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldDesc:
    """Return F_{p^k} with the smallest irreducible monic modulus of degree k."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p <= 3:
        raise ValueError("characteristic must exceed 3")
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"extension degree must lie in [1, {MAX_DEGREE}]")
    if k == 1:
        return FieldDesc(p, 1)
    for n in range(p ** k):
        low = []
        m = n
        for _ in range(k):
            m, r = divmod(m, p)
            low.append(r)
        if low[0] == 0:
            continue
        f = low + [1]
        if _is_irreducible(f, p):
            red = []
            # z^i mod f for i in [k, 2k - 2]
            cur = [(-v) % p for v in low]
            for _ in range(k - 1):
                red.append(tuple(cur))
                shifted = [0] + cur
                top = shifted.pop()
                cur = [(s - top * lv) % p for s, lv in zip(shifted, low)]
            red.append(tuple(cur))
            return FieldDesc(p, k, tuple(f), tuple(red))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldElement:
    __slots__ = ("c", "field")

    def __init__(self, c: tuple[int, ...], field: FieldDesc):
        self.c = c
        self.field = field

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            if other.field.p == self.field.p:
                if other.field.k == 1:
                    return self.field(other.c[0])
                if self.field.k == 1:
                    return None
                if other.field == self.field:
                    return other
            raise TypeError(f"cannot mix {self.field} and {other.field}")
        if isinstance(other, int):
            return self.field(other)
        return None

    def _lift(self, other) -> FieldElement | None:
        # a prime-field element meeting an extension element moves up
        if (isinstance(other, FieldElement) and self.field.k == 1
                and other.field.k > 1 and other.field.p == self.field.p):
            return other.field(self.c[0])
        return None

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            up = self._lift(other)
            return NotImplemented if up is None else up + other
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.c, o.c)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(tuple((-a) % p for a in self.c), self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            up = self._lift(other)
            return NotImplemented if up is None else up - other
        p = self.field.p
        return FieldElement(tuple((a - b) % p for a, b in zip(self.c, o.c)), self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            up = self._lift(other)
            return NotImplemented if up is None else up * other
        F = self.field
        p = F.p
        if F.k == 1:
            return FieldElement((self.c[0] * o.c[0] % p,), F)
        k = F.k
        a, b = self.c, o.c
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = prod[:k]
        for i in range(k, 2 * k - 1):
            v = prod[i]
            if v:
                red = F._red[i - k]
                for j in range(k):
                    out[j] += v * red[j]
        return FieldElement(tuple(v % p for v in out), F)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero")
        F = self.field
        p = F.p
        if F.k == 1:
            return FieldElement((pow(self.c[0], -1, p),), F)
        # extended Euclid in F_p[z]
        r0, r1 = list(F.modulus), _trim(list(self.c))
        s0, s1 = [], [1]
        while len(r1) > 1:
            qt, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            prod = _pmul(qt, s1, p)
            s0, s1 = s1, _trim([(x - y) % p for x, y in
                                itertools.zip_longest(s0, prod, fillvalue=0)])
        inv = pow(r1[0], -1, p)
        s1 = [v * inv % p for v in s1]
        return F(s1)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            up = self._lift(other)
            return NotImplemented if up is None else up / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        F = self.field
        if F.k == 1:
            return FieldElement((pow(self.c[0], e, F.p),), F)
        result = F.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, power: int) -> FieldElement:
        """Return self ** power where ``power`` is typically the base q."""
        return self ** power

    # -- comparison -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return self.c == other.c
            if other.field.p != self.field.p:
                return False
            if other.field.k == 1:
                return self.c == self.field(other.c[0]).c
            if self.field.k == 1:
                return other.c == other.field(self.c[0]).c
            return False
        if isinstance(other, int):
            return self.c == self.field(other).c
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def to_int(self) -> int:
        n = 0
        for v in reversed(self.c):
            n = n * self.field.p + v
        return n

    def sort_key(self) -> int:
        return self.to_int()

    def __lt__(self, other: FieldElement):
        return self.to_int() < other.to_int()

    def in_prime_field(self) -> bool:
        return not any(self.c[1:])

    def degree(self) -> int:
        """Degree over F_p of the smallest subfield containing self."""
        F = self.field
        for d in range(1, F.k + 1):
            if F.k % d == 0 and self ** (F.p ** d) == self:
                return d
        return F.k  # pragma: no cover

    def __repr__(self):
        if self.field.k == 1:
            return str(self.c[0])
        terms = []
        for i, v in enumerate(self.c):
            if v:
                terms.append(str(v) if i == 0 else (f"{v}*z" if i == 1 else f"{v}*z^{i}"))
        return " + ".join(reversed(terms)) if terms else "0"


class SpecialConstants(NamedTuple):
    omega: FieldElement
    sqrt_minus3: FieldElement
    # the chosen sqrt(-3) is the smaller of its two roots
    root_choice: str = "min"


@functools.lru_cache(maxsize=None)
def _nonresidue(F: FieldDesc, r: int) -> FieldElement:
    e = (F.q - 1) // r
    for n in range(2, F.q):
        g = F.from_int(n)
        if g ** e != 1:
            return g
    raise ValueError("no non-residue")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _roots_of_unity(F: FieldDesc, r: int) -> tuple[FieldElement, ...]:
    if (F.q - 1) % r:
        return (F.one,)
    g = _nonresidue(F, r) ** ((F.q - 1) // r)
    return tuple(g ** i for i in range(r))


def _one_root(a: FieldElement, r: int) -> FieldElement | None:
    """Adleman-Manders-Miller r-th root for prime r; None if a is no r-th power."""
    F = a.field
    Q = F.q
    if a.is_zero():
        return F.zero
    order = Q - 1
    if order % r:
        return a ** pow(r, -1, order)
    if a ** (order // r) != 1:
        return None
    s, t = 0, order
    while t % r == 0:
        t //= r
        s += 1
    u = pow(r, -1, t) if t > 1 else 0
    x0 = a ** u
    # x0^r / a lies in the r-Sylow subgroup
    b = x0 ** r / a
    z = _nonresidue(F, r) ** t  # generates the r-Sylow subgroup, order r^s
    # discrete log of b to base z, digit by digit
    zr = z ** (r ** (s - 1))  # primitive r-th root of unity
    zr_pows = [zr ** i for i in range(r)]
    e = 0
    zinv = z.inverse()
    for i in range(s):
        h = (b * zinv ** e) ** (r ** (s - 1 - i))
        digit = zr_pows.index(h)
        e += digit * r ** i
    assert e % r == 0
    return x0 * zinv ** (e // r)


def nth_roots(a: FieldElement, r: int) -> list[FieldElement]:
    """All r-th roots (r prime) of a in its own field, ascending."""
    root = _one_root(a, r)
    if root is None:
        return []
    if root.is_zero():
        return [root]
    return sorted({root * w for w in _roots_of_unity(a.field, r)}, key=FieldElement.to_int)


def sqrt(a: FieldElement) -> FieldElement | None:
    """Canonical (smaller) square root, or None for non-squares."""
    roots = nth_roots(a, 2)
    return roots[0] if roots else None


def cube_roots(a: FieldElement) -> list[FieldElement]:
    return nth_roots(a, 3)


def legendre(a: FieldElement) -> int:
    if a.is_zero():
        return 0
    return 1 if a ** ((a.field.q - 1) // 2) == 1 else -1


@functools.lru_cache(maxsize=None)
def special_constants(F: FieldDesc) -> SpecialConstants:
    if F.q % 3 != 1:
        raise ValueError(f"q = {F.q} is not 1 mod 3; omega is not in the field")
    s = sqrt(F(-3))
    omega = (s - 1) / 2
    return SpecialConstants(omega=omega, sqrt_minus3=s)


def cubic_symbol(a: FieldElement) -> int:
    """Exponent e with a^((q-1)/3) = omega^e for the canonical omega."""
    if a.is_zero():
        raise ValueError("cubic symbol of zero")
    F = a.field
    omega = special_constants(F).omega
    s = a ** ((F.q - 1) // 3)
    if s == 1:
        return 0
    if s == omega:
        return 1
    if s == omega * omega:
        return 2
    raise AssertionError("a^((q-1)/3) is not a cube root of unity")  # pragma: no cover
