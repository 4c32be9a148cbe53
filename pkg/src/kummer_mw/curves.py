"""Short Weierstrass curves y^2 = x^3 + A x + B over a field or over K(t).

One group law serves both settings: coordinates are either
:class:`~kummer_mw.fields.FieldElement` (points over a finite field) or
:class:`~kummer_mw.poly.RatFunc` (sections of an elliptic surface).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .fields import FieldDesc, FieldElement, legendre
from .poly import RatFunc, coeff_frobenius

__all__ = ["WeierstrassCurve", "Point", "Section", "PointOverField",
           "QuadraticTwist", "quadratic_twist", "count_points"]


class WeierstrassCurve:
    """y^2 = x^3 + A x + B with coefficients in a field or a rational function field."""

    def __init__(self, A, B, field: FieldDesc | None = None):
        if field is None:
            field = B.field if not isinstance(B, int) else A.field
        self.field = field
        self.function_field = isinstance(A, RatFunc) or isinstance(B, RatFunc)
        if self.function_field:
            A = A if isinstance(A, RatFunc) else RatFunc.const(A, field)
            B = B if isinstance(B, RatFunc) else RatFunc.const(B, field)
        else:
            A, B = field(A), field(B)
        self.A, self.B = A, B
        if self.discriminant().is_zero():
            raise ValueError("singular curve")

    def discriminant(self):
        return -16 * (4 * self.A ** 3 + 27 * self.B ** 2)

    def j_invariant(self):
        four_a3 = 4 * self.A ** 3
        return 1728 * four_a3 / (four_a3 + 27 * self.B ** 2)

    @property
    def zero(self) -> Point:
        return Point(self, None, None)

    def point(self, x, y, check: bool = True) -> Point:
        if self.function_field:
            x = x if isinstance(x, RatFunc) else RatFunc.const(x, self.field)
            y = y if isinstance(y, RatFunc) else RatFunc.const(y, self.field)
        else:
            x, y = self.field(x), self.field(y)
        P = Point(self, x, y)
        if check and not P.on_curve():
            raise ValueError(f"({x}, {y}) is not on {self}")
        return P

    def rhs(self, x):
        return x ** 3 + self.A * x + self.B

    def specialize(self, a: FieldElement) -> WeierstrassCurve:
        """Fiber at t = a (raises ValueError if the fiber is singular)."""
        if not self.function_field:
            raise TypeError("not a curve over a function field")
        return WeierstrassCurve(self.A(a), self.B(a), a.field)

    def change_field(self, field: FieldDesc) -> WeierstrassCurve:
        if self.function_field:
            return WeierstrassCurve(self.A.change_field(field), self.B.change_field(field), field)
        return WeierstrassCurve(field.embed(self.A), field.embed(self.B), field)

    def __eq__(self, other):
        return (isinstance(other, WeierstrassCurve) and self.A == other.A
                and self.B == other.B)

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        if self.A.is_zero():
            return f"y^2 = x^3 + {self.B}"
        return f"y^2 = x^3 + ({self.A})*x + {self.B}"


class Point:
    """A point of a WeierstrassCurve; ``x is None`` encodes the zero point."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x, y):
        self.curve, self.x, self.y = curve, x, y

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def on_curve(self) -> bool:
        if self.x is None:
            return True
        return self.y ** 2 == self.curve.rhs(self.x)

    def __neg__(self) -> Point:
        if self.x is None:
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other: Point) -> Point:
        if not isinstance(other, Point):
            return NotImplemented
        if self.x is None:
            return other
        if other.x is None:
            return self
        E = self.curve
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 == -y2:
                return E.zero
            lam = (3 * x1 * x1 + E.A) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return Point(E, x3, lam * (x1 - x3) - y1)

    def __sub__(self, other: Point) -> Point:
        return self + (-other)

    def __rmul__(self, n: int) -> Point:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-n) * (-self)
        result, base = self.curve.zero, self
        while n:
            if n & 1:
                result = result + base
            n >>= 1
            if n:
                base = base + base
        return result

    __mul__ = __rmul__

    def order(self, bound: int = 12) -> int | None:
        """Smallest n <= bound with n*P = O, else None."""
        Q = self
        for n in range(1, bound + 1):
            if Q.is_zero:
                return n
            Q = Q + self
        return None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    # -- function-field specific --------------------------------------
    def specialize(self, a: FieldElement) -> Point:
        """Evaluate a section at t = a on the specialized fiber."""
        E = self.curve.specialize(a)
        if self.x is None:
            return E.zero
        if self.x.den(a) == 0:
            return E.zero
        return Point(E, self.x(a), self.y(a))

    def frobenius(self, power: int) -> Point:
        """Raise all coefficients to ``power`` (the curve must be defined over the fixed field)."""
        if self.x is None:
            return self
        return Point(self.curve, coeff_frobenius(self.x, power), coeff_frobenius(self.y, power))

    @property
    def ext_degree(self) -> int:
        """Degree over F_p of the field generated by the coordinates' coefficients."""
        if self.x is None:
            return 1
        if not self.curve.function_field:
            return max(self.x.degree(), self.y.degree())
        d = 1
        for c in self.x.coefficients() + self.y.coefficients():
            cd = c.degree()
            d = d * cd // _gcd(d, cd)
        return d

    def __repr__(self):
        if self.x is None:
            return "O"
        return f"({self.x}, {self.y})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# aliases for the two uses of Point
Section = Point
PointOverField = Point


@dataclass(frozen=True)
class QuadraticTwist:
    """The model c*y^2 = x^3 + A x + B together with its short form.

    ``curve`` is Y^2 = X^3 + A c^2 X + B c^3 with X = c x, Y = c^2 y.
    """

    c: FieldElement
    base: WeierstrassCurve
    curve: WeierstrassCurve

    def to_short(self, x, y) -> Point:
        return self.curve.point(self.c * x, self.c * self.c * y)

    def from_short(self, P: Point) -> tuple:
        return P.x / self.c, P.y / (self.c * self.c)

    def on_model(self, x, y) -> bool:
        return self.c * y * y == self.base.rhs(x)


def quadratic_twist(E: WeierstrassCurve, c) -> QuadraticTwist:
    if E.function_field:
        raise TypeError("quadratic twists are built over finite fields here")
    c = E.field(c)
    if c.is_zero() or legendre(c) == 1:
        raise ValueError("twisting by a square gives an isomorphic curve")
    short = WeierstrassCurve(E.A * c * c, E.B * c ** 3, E.field)
    return QuadraticTwist(c, E, short)


def count_points(E: WeierstrassCurve) -> int:
    """|E(F_q)| by enumeration over x (desk-scale fields only)."""
    if E.function_field:
        raise TypeError("point counting needs a finite field")
    total = 1
    for x in E.field.elements():
        total += 1 + legendre(E.rhs(x))
    return total


def points(E: WeierstrassCurve) -> list[Point]:
    """All points of E(F_q) by enumeration, zero first."""
    from .fields import sqrt

    out = [E.zero]
    for x in E.field.elements():
        r = sqrt(E.rhs(x))
        if r is None:
            continue
        out.append(Point(E, x, r))
        if r:
            out.append(Point(E, x, -r))
    return out


def map_point(P: Point, fn: Callable) -> Point:
    if P.is_zero:
        return P
    return Point(P.curve, fn(P.x), fn(P.y))
