"""The surfaces K_2 and K_6n together with the elliptic curves E and E_j.

Everything is built from a parameter triple (q, b, c).  Coordinates that need
roots of the parameters live in the degree-6 extension F_{q^6}, which
contains all of them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .curves import Point, WeierstrassCurve
from .fields import (FieldDesc, FieldElement, cube_roots, cubic_symbol, is_prime,
                     legendre, make_field, special_constants, sqrt)
from .poly import INFINITY, Place, Poly, RatFunc, factor, valuation

__all__ = [
    "ParamError", "FamilyParams", "validate_params", "SurfaceId", "KummerSurface",
    "KummerPoint", "EXCEPTIONAL", "build_surface", "weierstrass_model", "curve_Ej",
    "phi", "phi_inv", "zero_section", "torsion_sections", "named_sections",
    "base_change", "check_global_minimality", "infinity_isomorphism",
    "sample_kummer_points", "PRESETS", "scan_params", "RoundTripReport",
    "verify_phi_identity", "schwartz_zippel_log2",
]

EXT_DEGREE = 6


class ParamError(ValueError):
    """A violated hypothesis on (q, b, c); ``code`` names the first one."""

    def __init__(self, codes: list[str], message: str):
        super().__init__(message)
        self.codes = codes
        self.code = codes[0]


@dataclass(frozen=True, eq=False)
class FamilyParams:
    q: int
    b: FieldElement
    c: FieldElement
    relaxed: bool
    flags: tuple[str, ...]
    base: FieldDesc
    ext: FieldDesc
    omega: FieldElement
    sqrt_minus3: FieldElement
    cbrt_c: FieldElement
    sqrt_c: FieldElement
    cbrt_b: FieldElement
    cbrt_4b: FieldElement
    symbol_b: int
    symbol_4b: int

    def config(self) -> dict:
        return {"q": self.q, "b": self.b.to_int(), "c": self.c.to_int(),
                "mode": "relaxed" if self.relaxed else "strict"}

    def __repr__(self):
        mode = ", relaxed" if self.relaxed else ""
        return f"FamilyParams(q={self.q}, b={self.b}, c={self.c}{mode})"


def _violations(q: int, b: int, c: int) -> tuple[list[str], list[str]]:
    codes, msgs = [], []
    if not is_prime(q) or q <= 3:
        return ["q-not-prime"], [f"q = {q} must be a prime > 3"]
    if q % 3 != 1:
        return ["q-mod-3"], [f"q = {q} is not 1 mod 3"]
    F = make_field(q)
    bb, cc = F(b), F(c)
    if bb.is_zero():
        codes.append("b-zero"); msgs.append("b must be nonzero")
    if cc.is_zero():
        codes.append("c-zero"); msgs.append("c must be nonzero")
    if cc and not cube_roots(cc):
        codes.append("c-not-cube"); msgs.append(f"c = {cc} is not a cube in F_{q}")
    if cc and legendre(cc) == 1:
        codes.append("c-is-square"); msgs.append(f"c = {cc} is a square in F_{q}")
    if bb and cube_roots(bb):
        codes.append("b-is-cube"); msgs.append(f"b = {bb} is a cube in F_{q}")
    return codes, msgs


def validate_params(q: int, b: int, c: int, relaxed: bool = False) -> FamilyParams:
    """Check the hypotheses on (q, b, c) and fix all canonical roots.

    Relaxed mode tolerates b being a cube (recorded in ``flags``).
    """
    codes, msgs = _violations(q, b, c)
    flags = ()
    if relaxed and codes == ["b-is-cube"]:
        flags = ("b-is-cube",)
    elif codes:
        raise ParamError(codes, "; ".join(msgs))
    F = make_field(q)
    L = make_field(q, EXT_DEGREE)
    bb, cc = F(b), F(c)
    consts = special_constants(F)
    cbrt_c = cube_roots(cc)[0]
    return FamilyParams(
        q=q, b=bb, c=cc, relaxed=relaxed, flags=flags, base=F, ext=L,
        omega=consts.omega, sqrt_minus3=consts.sqrt_minus3, cbrt_c=cbrt_c,
        sqrt_c=sqrt(L(cc)), cbrt_b=cube_roots(L(bb))[0],
        cbrt_4b=cube_roots(L(4 * bb))[0],
        symbol_b=cubic_symbol(bb), symbol_4b=cubic_symbol(4 * bb),
    )


def scan_params(q: int, relaxed: bool = False) -> Iterator[tuple[int, int, int]]:
    """All valid (q, b, c) for a prime q, in increasing (b, c) order."""
    if _violations(q, 1, 1)[0][:1] in (["q-not-prime"], ["q-mod-3"]):
        return
    # cubes and squares of F_q* by Euler's criterion
    cube = [False] + [pow(a, (q - 1) // 3, q) == 1 for a in range(1, q)]
    square = [False] + [pow(a, (q - 1) // 2, q) == 1 for a in range(1, q)]
    cs = [cv for cv in range(1, q) if cube[cv] and not square[cv]]
    for bv in range(1, q):
        if cube[bv] and not relaxed:
            continue
        for cv in cs:
            yield (q, bv, cv)


PRESETS: dict[str, tuple[int, int, int, bool]] = {
    "q7": (7, 2, 6, False),
    "q13": (13, 2, 5, False),
    "q7-relaxed": (7, 6, 6, True),
}


# -- surfaces ---------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceId:
    """K2, K6n(n), E (the Weierstrass model of K_6) or Ej(j mod 6)."""

    tag: str
    index: int = 0

    def __post_init__(self):
        if self.tag not in ("K2", "K6n", "E", "Ej"):
            raise ValueError(f"unknown surface tag {self.tag!r}")
        if self.tag == "K6n" and self.index < 1:
            raise ValueError("K6n needs n >= 1")
        if self.tag == "Ej":
            object.__setattr__(self, "index", self.index % 6)

    @classmethod
    def parse(cls, text: str) -> SurfaceId:
        s = text.strip().upper()
        if s == "K2":
            return cls("K2")
        if s == "E":
            return cls("E")
        if s == "K6":
            return cls("K6n", 1)
        if s.startswith("K6N"):
            return cls("K6n", int(s[3:] or 1))
        if s.startswith("K") and s[1:].isdigit() and int(s[1:]) % 6 == 0:
            return cls("K6n", int(s[1:]) // 6)
        if s.startswith("E") and s[1:].lstrip("-").isdigit():
            return cls("Ej", int(s[1:]))
        raise ValueError(f"cannot parse surface id {text!r}")

    def __str__(self):
        if self.tag == "K6n":
            return f"K{6 * self.index}"
        if self.tag == "Ej":
            return f"E{self.index}"
        return self.tag


@dataclass(frozen=True)
class KummerSurface:
    """(x1^3 - b) t^e = c (x0^3 - b) with e = 2 (K_2) or e = 6n (K_6n)."""

    params: FamilyParams
    exponent: int

    @property
    def n(self) -> int | None:
        return self.exponent // 6 if self.exponent % 6 == 0 else None

    def residual(self, x0, x1, t):
        b, c = self.params.b, self.params.c
        return (x1 ** 3 - b) * t ** self.exponent - c * (x0 ** 3 - b)

    def contains(self, P: KummerPoint) -> bool:
        if P.is_affine:
            return _is_zero(self.residual(P.x0, P.x1, P.t))
        # homogenized: (X1^3 - b X2^3) t^e = c (X0^3 - b X2^3)
        b, c = self.params.b, self.params.c
        X0, X1, X2, t = P.X0, P.X1, P.X2, P.t
        lhs = (X1 ** 3 - b * X2 ** 3) * t ** self.exponent
        return _is_zero(lhs - c * (X0 ** 3 - b * X2 ** 3))

    def pullback(self, n: int) -> KummerSurface:
        """Equation after t -> t^(3n) (defined for K_2 only)."""
        if self.exponent != 2:
            raise ValueError("pullback starts from K_2")
        return KummerSurface(self.params, 6 * n)

    def __str__(self):
        return f"(x1^3 - {self.params.b})*t^{self.exponent} = {self.params.c}*(x0^3 - {self.params.b})"


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def _t(F: FieldDesc) -> RatFunc:
    return RatFunc.t(F)


def weierstrass_model(params: FamilyParams, n: int = 1, field: FieldDesc | None = None) -> WeierstrassCurve:
    """y^2 = x^3 + ((t^(6n) - c) / (2 b^2))^2; n = 1 gives E."""
    F = field or params.base
    t = _t(F)
    D = t ** (6 * n) - F.embed(params.c)
    return WeierstrassCurve(RatFunc.const(0, F), (D / (2 * F.embed(params.b) ** 2)) ** 2, F)


def curve_Ej(params: FamilyParams, j: int, field: FieldDesc | None = None) -> WeierstrassCurve:
    """E_j: y^2 = x^3 + t^j ((t - c) / (2 b^2))^2 for j mod 6."""
    F = field or params.base
    t = _t(F)
    b, c = F.embed(params.b), F.embed(params.c)
    return WeierstrassCurve(RatFunc.const(0, F), t ** (j % 6) * ((t - c) / (2 * b * b)) ** 2, F)


def build_surface(params: FamilyParams, sid: SurfaceId):
    """KummerSurface for K-types (with ``.weierstrass`` for K6n) or a curve for E / E_j."""
    if sid.tag == "K2":
        return KummerSurface(params, 2)
    if sid.tag == "K6n":
        return KummerSurface(params, 6 * sid.index)
    if sid.tag == "E":
        return weierstrass_model(params, 1)
    return curve_Ej(params, sid.index)


# -- points of K_6n and the isomorphism to the Weierstrass model -------------

@dataclass(frozen=True, eq=False)
class KummerPoint:
    """Affine (x0, x1) or projective (X0 : X1 : X2) point over the parameter t."""

    X0: object
    X1: object
    X2: object
    t: object

    @classmethod
    def affine(cls, x0, x1, t) -> KummerPoint:
        one = t ** 0 if not isinstance(t, RatFunc) else RatFunc.const(1, t.field)
        return cls(x0, x1, one, t)

    @property
    def is_affine(self) -> bool:
        return not _is_zero(self.X2)

    @property
    def x0(self):
        return self.X0 / self.X2

    @property
    def x1(self):
        return self.X1 / self.X2

    def __eq__(self, other):
        if not isinstance(other, KummerPoint):
            return NotImplemented
        a = (self.X0, self.X1, self.X2)
        b = (other.X0, other.X1, other.X2)
        return self.t == other.t and all(
            _is_zero(a[i] * b[j] - a[j] * b[i]) for i in range(3) for j in range(i + 1, 3))

    def __hash__(self):  # pragma: no cover - points are compared, not hashed
        raise TypeError("KummerPoint is unhashable")

    def base_change(self, n: int) -> KummerPoint:
        return base_change(self, n)

    def __repr__(self):
        if self.is_affine:
            return f"KummerPoint(x0={self.x0}, x1={self.x1})"
        return f"KummerPoint({self.X0} : {self.X1} : {self.X2})"


class _Exceptional:
    """Result of phi/phi_inv where the formulas' denominator vanishes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EXCEPTIONAL"

    def __bool__(self):
        return False


EXCEPTIONAL = _Exceptional()


def _consts_in(params: FamilyParams, F: FieldDesc):
    return (F.embed(params.b), F.embed(params.c), F.embed(params.cbrt_c),
            F.embed(params.sqrt_minus3))


def _field_of(v) -> FieldDesc:
    return v.field


def phi(params: FamilyParams, P: KummerPoint, n: int = 1, curve: WeierstrassCurve | None = None):
    """K_6n -> Weierstrass model.  Returns a Point, or EXCEPTIONAL.

    The zero section (X2 = 0 with x0 cbrt(c) = t^(2n) x1) maps to the zero
    point; other points at infinity use the formulas with X2 cleared.
    """
    F = _field_of(P.t)
    b, c, cbrt_c, s3 = _consts_in(params, F)
    t = P.t
    u = P.X0 * cbrt_c
    v = t ** (2 * n) * P.X1
    w = b * (u - v)
    D = t ** (6 * n) - c
    if curve is None:
        if isinstance(t, RatFunc):
            curve = weierstrass_model(params, n, F)
        elif not _is_zero(D):
            curve = WeierstrassCurve(F.zero, (D / (2 * b * b)) ** 2, F)
    if _is_zero(w):
        if not P.is_affine:
            return curve.zero if curve is not None else None
        return EXCEPTIONAL
    x = D * P.X2 / w
    y = s3 * (u + v) * D / (-2 * b * w)
    if curve is None:
        return (x, y)
    return Point(curve, x, y)


def phi_inv(params: FamilyParams, Q, t=None, n: int = 1):
    """Weierstrass model -> K_6n, as a KummerPoint (projective at x = 0)."""
    if isinstance(Q, Point):
        if Q.is_zero:
            if t is None:
                t = _t(Q.curve.field)
            return zero_section(params, n, t)
        x, y = Q.x, Q.y
        if t is None:
            t = _t(Q.curve.field)
    else:
        x, y = Q
    F = _field_of(t)
    b, c, cbrt_c, s3 = _consts_in(params, F)
    D = t ** (6 * n) - c
    t2n = t ** (2 * n)
    N0 = 2 * b * b * y - s3 * D
    N1 = 2 * b * b * y + s3 * D
    X0 = N0 * t2n
    X1 = N1 * cbrt_c
    X2 = -2 * s3 * b * cbrt_c * t2n * x
    if _is_zero(X0) and _is_zero(X1) and _is_zero(X2):
        return EXCEPTIONAL
    if _is_zero(X2):
        return KummerPoint(X0, X1, X2, t)
    return KummerPoint.affine(X0 / X2, X1 / X2, t)


def zero_section(params: FamilyParams, n: int = 1, t=None) -> KummerPoint:
    """(t^(2n) : cbrt(c) : 0)."""
    if t is None:
        t = _t(params.base)
    F = _field_of(t)
    return KummerPoint(t ** (2 * n), t ** 0 * F.embed(params.cbrt_c) if not isinstance(t, RatFunc)
                       else RatFunc.const(F.embed(params.cbrt_c), F), t * 0, t)


def torsion_sections(params: FamilyParams, n: int = 1, t=None) -> tuple[KummerPoint, KummerPoint]:
    """(t^(2n) : omega^j cbrt(c) : 0) for j = 1, 2."""
    if t is None:
        t = _t(params.base)
    F = _field_of(t)
    out = []
    for j in (1, 2):
        val = F.embed(params.omega ** j * params.cbrt_c)
        X1 = RatFunc.const(val, F) if isinstance(t, RatFunc) else val
        out.append(KummerPoint(t ** (2 * n), X1, t * 0, t))
    return out[0], out[1]


def named_sections(params: FamilyParams, which: str, k: int) -> Point:
    """P_k on E_1 or Q_k on E_2, over F_{q^6}(t)."""
    L = params.ext
    t = _t(L)
    b, c = L(params.b), L(params.c)
    omega_k = L(params.omega) ** (k % 3)
    if which == "P":
        E1 = curve_Ej(params, 1, L)
        x = omega_k * (t - c) / (-b * params.cbrt_4b)
        y = params.sqrt_c * (t - c) / (2 * b * b)
        return E1.point(x, y)
    if which == "Q":
        E2 = curve_Ej(params, 2, L)
        x = omega_k * L(params.cbrt_c) * t / (b * params.cbrt_b)
        y = (t * t + c * t) / (2 * b * b)
        return E2.point(x, y)
    raise ValueError("which must be 'P' or 'Q'")


def base_change(obj, n: int):
    """Substitute t -> t^(3n) in a KummerPoint (or a KummerSurface K_2)."""
    if isinstance(obj, KummerSurface):
        return obj.pullback(n)
    m = 3 * n

    def sub(v):
        if isinstance(v, RatFunc):
            return v.subs_power(m)
        if isinstance(v, Poly):
            return v.subs_power(m)
        return v

    return KummerPoint(sub(obj.X0), sub(obj.X1), sub(obj.X2), sub(obj.t))


# -- minimality -------------------------------------------------------------

@dataclass
class MinimalityReport:
    minimal: bool
    finite: list[tuple[Place, int]]
    infinity_twist: int
    infinity_valuation: int
    reasons: list[str] = dc_field(default_factory=list)


def infinity_chart(B: RatFunc) -> tuple[int, int, RatFunc]:
    """(m, v, B') with B'(s) = s^(6m) B(1/s) and v = ord_s B' in [0, 5]."""
    v_inf = valuation(B, INFINITY)
    m = (5 - v_inf) // 6
    Bp = B.at_infinity(6 * m)
    return m, v_inf + 6 * m, Bp


def check_global_minimality(E: WeierstrassCurve) -> MinimalityReport:
    """Minimality of y^2 = x^3 + B at every place of F_q(t), including infinity."""
    if not E.A.is_zero():
        raise ValueError("only curves y^2 = x^3 + B are handled")
    B = E.B
    reasons = []
    finite = []
    if B.den.degree > 0:
        reasons.append("B has finite poles")
    for g, _ in factor(B.num):
        v = valuation(B, Place(g))
        finite.append((Place(g), v))
        if v >= 6:
            reasons.append(f"v(B) = {v} >= 6 at {g}")
    m, v_inf, _ = infinity_chart(B)
    return MinimalityReport(not reasons, finite, m, v_inf, reasons)


def infinity_isomorphism(params: FamilyParams, j: int) -> dict:
    """Identify the chart of E_j at infinity with E_{4-j}.

    With B'(s) = s^(6m) B_j(1/s), one has B_{4-j}(t) = lam^6 B'(t / c^2) for
    lam = cbrt(c)^(j'+1), j' = 4 - j mod 6.  Returns the data and whether the
    identity holds exactly.
    """
    F = params.base
    Bj = curve_Ej(params, j).B
    m, v, Bp = infinity_chart(Bj)
    jp = (4 - j) % 6
    lam = params.cbrt_c ** (jp + 1)
    inv_c2 = (params.c * params.c).inverse()
    pulled = Bp.subs_scale(inv_c2) * lam ** 6
    target = curve_Ej(params, jp).B
    return {"j": j % 6, "partner": jp, "twist": m, "scale": lam, "holds": pulled == target}


# -- sampling ---------------------------------------------------------------

def sample_kummer_points(params: FamilyParams, n: int, count: int, rng: random.Random,
                         field: FieldDesc | None = None) -> Iterator[KummerPoint]:
    """Random affine points of K_6n over F_{q^6} with t^(6n) != c and t != 0."""
    L = field or params.ext
    b, c = L(params.b), L(params.c)
    produced = 0
    while produced < count:
        t = L.random(rng)
        if t.is_zero() or t ** (6 * n) == c:
            continue
        x1 = L.random(rng)
        rhs = b + (x1 ** 3 - b) * t ** (6 * n) / c
        roots = cube_roots(rhs)
        if not roots:
            continue
        x0 = roots[rng.randrange(len(roots))]
        produced += 1
        yield KummerPoint.affine(x0, x1, t)


def schwartz_zippel_log2(degree: int, field_size: int, samples: int) -> float:
    """log2 of (degree / field_size) ** samples."""
    return samples * (math.log2(degree) - math.log2(field_size))


@dataclass
class RoundTripReport:
    n: int
    samples: int
    failures: int
    exceptional: int
    degree_bound: int
    field_size: int
    log2_bound: float

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.samples > 0


def verify_phi_identity(params: FamilyParams, n: int = 1, samples: int = 1000,
                        seed: int = 42) -> RoundTripReport:
    """Sampled check that phi_inv(phi(P)) = P and phi(P) lies on the model.

    Points where phi is undefined are redrawn and counted.  A false identity
    is a nonzero rational function of degree at most 24n + 3 in the first
    coordinate along a fibre, so each sample misses it with probability at
    most (24n + 3)/|L|; ``log2_bound`` is the log of that to the power N.
    """
    L = params.ext
    rng = random.Random(seed)
    failures = exceptional = checked = 0
    pts = sample_kummer_points(params, n, 10 * samples + 100, rng)
    for P in pts:
        if checked == samples:
            break
        Q = phi(params, P, n)
        if Q is EXCEPTIONAL:
            exceptional += 1
            continue
        checked += 1
        if not Q.on_curve() or phi_inv(params, Q, P.t, n) != P:
            failures += 1
    degree = 24 * n + 3
    return RoundTripReport(n, checked, failures, exceptional, degree, L.q,
                           schwartz_zippel_log2(degree, L.q, checked))
