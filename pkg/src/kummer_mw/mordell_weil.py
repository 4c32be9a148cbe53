"""Canonical heights and the Frobenius action, leading to the F_q-rank of K_6.

Heights use the intersection formula

    <P, Q> = chi + (P.O) + (Q.O) - (P.Q) - sum_v contr_v(P, Q)

on curves y^2 = x^3 + B(t) that are minimal at every finite place.  All local
work at t = infinity happens in the chart s = 1/t, x -> s^(2m) x,
y -> s^(3m) y that makes the model minimal there.

Component identification at a bad place v uses the blow-up charts

    IV:  (x/pi,   y/pi)    label = y/pi   mod pi
    IV*: (x/pi^2, y/pi^2)  label = y/pi^2 mod pi
    I0*: (x/pi,   y/pi^2)  label = x/pi   mod pi

which are smooth along the simple non-identity components.  Two sections
meeting the same component intersect with multiplicity equal to their order
of contact in that chart.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .curves import Point, WeierstrassCurve
from .family import (FamilyParams, curve_Ej, infinity_chart, infinity_isomorphism,
                     named_sections, phi, torsion_sections, weierstrass_model)
from .kodaira import FibrationReport, MWGroup, contribution, fiber_configuration
from .poly import INF_VALUATION, INFINITY, Place, Poly, RatFunc, factor, residue, valuation

__all__ = [
    "ComponentError", "SectionLattice", "FrobMatrix", "MWReport",
    "intersection_with_zero", "intersection", "local_contribution", "height_pairing",
    "height_matrix", "is_torsion", "frobenius_action", "invariant_rank",
    "lattice_L1", "lattice_L2", "mw_rank_K6", "verify_relations",
    "L1_GRAM", "L2_GRAM", "L1_FROBENIUS", "L2_FROBENIUS", "torsion_images",
]


class ComponentError(ArithmeticError):
    """The valuation pattern of a section matches no fibre component."""


# Reference values; the Frobenius tables are indexed by the cubic symbol class
# of 4b (for L1) and of b (for L2), with matrix columns giving the images of
# the two generators.
L1_GRAM = [[Fraction(1, 3), Fraction(-1, 6)], [Fraction(-1, 6), Fraction(1, 3)]]
L2_GRAM = [[Fraction(2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(2, 3)]]
L1_FROBENIUS = {0: [[-1, 0], [0, -1]], 1: [[1, -1], [1, 0]], 2: [[0, 1], [-1, 1]]}
L2_FROBENIUS = {0: [[1, 0], [0, 1]], 1: [[-1, 1], [-1, 0]], 2: [[0, -1], [1, -1]]}

# (shift of x, shift of y) of the chart covering the simple non-identity components
_CHART = {"IV": (1, 1), "IV*": (2, 2), "I0*": (1, 2)}


@functools.lru_cache(maxsize=256)
def _report(E: WeierstrassCurve) -> FibrationReport:
    return fiber_configuration(E, with_mw=False)


@functools.lru_cache(maxsize=256)
def _inf_twist(E: WeierstrassCurve) -> int:
    return infinity_chart(E.B)[0]


def _local(P: Point, v: Place) -> tuple[RatFunc, RatFunc, Place]:
    """Coordinates of P in the minimal chart at v, and v in that chart."""
    if not v.is_infinity:
        return P.x, P.y, v
    m = _inf_twist(P.curve)
    s = Place(Poly.t(P.curve.field))
    return P.x.at_infinity(2 * m), P.y.at_infinity(3 * m), s


def _component(x: RatFunc, y: RatFunc, v: Place, ftype: str | None):
    """('O',), ('id',) or ('nonid', label) for the component met at v."""
    vx = valuation(x, v)
    if vx < 0:
        return ("O",)
    vy = valuation(y, v)
    if not (vx > 0 and vy > 0):
        return ("id",)
    if ftype == "IV" and vy == 1:
        return ("nonid", residue(y, v, 1))
    if ftype == "IV*" and vx >= 2 and vy == 2:
        return ("nonid", residue(y, v, 2))
    if ftype == "I0*" and vx == 1 and vy >= 2:
        return ("nonid", residue(x, v, 1))
    raise ComponentError(f"section through the singular point of a {ftype} fibre "
                         f"with v(x) = {vx}, v(y) = {vy}")


def intersection_with_zero(P: Point) -> int:
    """(P.O): half the degree-weighted pole order of x over all places."""
    if P.is_zero:
        raise ValueError("(O.O) is not defined by this formula")
    total = 0
    poles = [Place(g) for g, _ in factor(P.x.den)] if P.x.den.degree > 0 else []
    for v in poles + [INFINITY]:
        x, _, w = _local(P, v)
        vx = valuation(x, w)
        if vx < 0:
            if vx % 2:
                raise ArithmeticError(f"odd pole order {-vx} of x at {v}")
            total += v.degree * (-vx // 2)
    return total


def _contact(P: Point, Q: Point, v: Place, ftype: str | None) -> int:
    xP, yP, w = _local(P, v)
    xQ, yQ, _ = _local(Q, v)
    cP = _component(xP, yP, w, ftype)
    cQ = _component(xQ, yQ, w, ftype)
    if cP[0] == "O" and cQ[0] == "O":
        val = valuation(xP / yP - xQ / yQ, w)
    elif cP[0] == "O" or cQ[0] == "O":
        return 0
    elif cP[0] == "id" and cQ[0] == "id":
        val = min(valuation(xP - xQ, w), valuation(yP - yQ, w))
    elif cP[0] != cQ[0]:
        return 0
    elif cP[1] != cQ[1]:
        return 0
    else:
        a, b = _CHART[ftype]
        val = min(valuation(xP - xQ, w) - a, valuation(yP - yQ, w) - b)
    if val == INF_VALUATION:
        raise ValueError("sections coincide; use the self-pairing")
    return max(int(val), 0)


def intersection(P: Point, Q: Point) -> int:
    """(P.Q) for distinct nonzero sections, summed over all places."""
    report = _report(P.curve)
    dx, dy = P.x - Q.x, P.y - Q.y
    cands: dict[Poly, Place] = {}
    lead = dx if not dx.is_zero() else dy
    for poly in (lead.num, P.x.den, Q.x.den):
        if poly.degree > 0:
            for g, _ in factor(poly):
                cands.setdefault(g, Place(g))
    total = 0
    for v in sorted(cands.values(), key=Place.sort_key) + [INFINITY]:
        fib = report.fiber_at(v)
        total += v.degree * _contact(P, Q, v, fib.type if fib else None)
    return total


def local_contribution(fib, P: Point, Q: Point | None = None) -> Fraction:
    """contr_v(P, Q) at the fibre ``fib``; Q = None means contr_v(P, P)."""
    if P.is_zero or (Q is not None and Q.is_zero):
        return Fraction(0)
    xP, yP, w = _local(P, fib.place)
    cP = _component(xP, yP, w, fib.type)
    if Q is None:
        cQ = cP
    else:
        xQ, yQ, _ = _local(Q, fib.place)
        cQ = _component(xQ, yQ, w, fib.type)
    if cP[0] != "nonid" or cQ[0] != "nonid":
        return Fraction(0)
    return contribution(fib.type, cP[1] == cQ[1])


def height_pairing(P: Point, Q: Point | None = None) -> Fraction:
    """Canonical height pairing <P, Q>; <P, P> when Q is None."""
    if P.is_zero or (Q is not None and Q.is_zero):
        return Fraction(0)
    report = _report(P.curve)
    chi = report.chi
    if Q is None or P == Q:
        contr = sum((f.degree * local_contribution(f, P) for f in report.fibers), Fraction(0))
        return 2 * chi + 2 * intersection_with_zero(P) - contr
    contr = sum((f.degree * local_contribution(f, P, Q) for f in report.fibers), Fraction(0))
    return (chi + intersection_with_zero(P) + intersection_with_zero(Q)
            - intersection(P, Q) - contr)


def height_matrix(generators: Sequence[Point]) -> list[list[Fraction]]:
    n = len(generators)
    H = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        H[i][i] = height_pairing(generators[i])
        for j in range(i + 1, n):
            H[i][j] = H[j][i] = height_pairing(generators[i], generators[j])
    return H


def is_torsion(P: Point) -> tuple[bool, int | None]:
    """(height is zero, order up to 12)."""
    if P.is_zero:
        return True, 1
    if height_pairing(P) != 0:
        return False, None
    return True, P.order(12)


@dataclass
class SectionLattice:
    name: str
    generators: list[Point]
    gram: list[list[Fraction]] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.gram:
            self.gram = height_matrix(self.generators)

    @property
    def curve(self) -> WeierstrassCurve:
        return self.generators[0].curve

    def combination(self, coeffs: Sequence[int]) -> Point:
        total = self.curve.zero
        for a, g in zip(coeffs, self.generators):
            total = total + a * g
        return total


def lattice_L1(params: FamilyParams) -> SectionLattice:
    return SectionLattice("L1", [named_sections(params, "P", 0), named_sections(params, "P", 1)])


def lattice_L2(params: FamilyParams) -> SectionLattice:
    return SectionLattice("L2", [named_sections(params, "Q", 0), named_sections(params, "Q", 1)])


@dataclass
class FrobMatrix:
    matrix: list[list[int]]
    symbol_class: int | None
    verified: bool

    @property
    def order(self) -> int:
        M = linalg.as_fractions(self.matrix)
        P = M
        for n in range(1, 13):
            if P == linalg.identity(len(M)):
                return n
            P = linalg.matmul(P, M)
        raise ArithmeticError("matrix of infinite order")


def frobenius_action(lattice: SectionLattice, q: int, symbol_class: int | None = None) -> FrobMatrix:
    """Matrix of the q-power Frobenius on the lattice (column j = image of generator j).

    Image coordinates come from the Gram matrix and are then confirmed by
    rebuilding each image with the group law.
    """
    E = lattice.curve
    if E.B.map_coeffs(lambda a: a ** q) != E.B or E.A.map_coeffs(lambda a: a ** q) != E.A:
        raise ValueError("curve is not defined over the fixed field of Frobenius")
    H = lattice.gram
    n = len(lattice.generators)
    cols = []
    for g in lattice.generators:
        img = g.frobenius(q)
        if not img.on_curve():
            raise ArithmeticError("Frobenius image left the curve")
        vec = [height_pairing(img, h) for h in lattice.generators]
        coords = linalg.solve(H, vec)
        if any(c.denominator != 1 for c in coords):
            raise ArithmeticError(f"image not in the lattice: coordinates {coords}")
        ints = [int(c) for c in coords]
        if lattice.combination(ints) != img:
            raise ArithmeticError("image does not match its lattice coordinates")
        cols.append(ints)
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    return FrobMatrix(M, symbol_class, True)


def invariant_rank(M) -> int:
    """Rank of ker(M - I) over Q."""
    n = len(M)
    return n - linalg.rank(linalg.matsub(M, linalg.identity(n)))


def is_isometry(M, H) -> bool:
    Mf = linalg.as_fractions(M)
    return linalg.matmul(linalg.matmul(linalg.transpose(Mf), H), Mf) == linalg.as_fractions(H)


@dataclass
class MWReport:
    params: FamilyParams
    rank: int
    torsion: MWGroup
    ranks: dict[int, int]
    symbol_4b: int
    symbol_b: int
    frob_L1: FrobMatrix
    frob_L2: FrobMatrix
    gram_L1: list[list[Fraction]]
    gram_L2: list[list[Fraction]]
    geometric: dict[int, MWGroup]
    notes: list[str]

    @property
    def group(self) -> MWGroup:
        return MWGroup(self.rank, self.torsion.torsion)


def torsion_images(params: FamilyParams) -> list[Point]:
    return [phi(params, T) for T in torsion_sections(params)]


def mw_rank_K6(params: FamilyParams) -> MWReport:
    """F_q-rank of K_6 as the sum of the ranks of E_0..E_5."""
    notes = []
    ranks: dict[int, int] = {}
    geometric: dict[int, MWGroup] = {}
    for j in range(6):
        rep = fiber_configuration(curve_Ej(params, j))
        if rep.mw_geometric is None:
            raise ArithmeticError(f"no geometric Mordell-Weil data for E{j}")
        geometric[j] = rep.mw_geometric
        if rep.mw_geometric.rank == 0:
            ranks[j] = 0
    L1, L2 = lattice_L1(params), lattice_L2(params)
    for L in (L1, L2):
        if linalg.det(L.gram) == 0:
            raise ArithmeticError(f"{L.name} is degenerate")
    f1 = frobenius_action(L1, params.q, params.symbol_4b)
    f2 = frobenius_action(L2, params.q, params.symbol_b)
    ranks[1] = invariant_rank(f1.matrix)
    ranks[2] = invariant_rank(f2.matrix)
    iso = infinity_isomorphism(params, 3)
    if not (iso["holds"] and iso["partner"] == 1):
        raise ArithmeticError("E3 is not identified with E1")
    ranks[3] = ranks[1]
    notes.append("rk(E3) = rk(E1) through the chart at infinity")
    total = sum(ranks[j] for j in range(6))
    geo_total = sum(g.rank for g in geometric.values())
    if geo_total != 6:
        raise ArithmeticError(f"geometric ranks sum to {geo_total}, expected 6")

    # F_q-rational 3-torsion from the two sections at infinity
    orders = []
    for T in torsion_images(params):
        rational = T.frobenius(params.q) == T
        orders.append(T.order(12) if rational else None)
    torsion = MWGroup(0, (3,)) if all(o == 3 for o in orders) else MWGroup(0)
    return MWReport(params, total, torsion, dict(sorted(ranks.items())), params.symbol_4b,
                    params.symbol_b, f1, f2, L1.gram, L2.gram, geometric, notes)


def verify_relations(params: FamilyParams) -> dict[str, bool]:
    P = [named_sections(params, "P", k) for k in range(3)]
    Q = [named_sections(params, "Q", k) for k in range(3)]
    return {
        "P0+P1+P2=O": (P[0] + P[1] + P[2]).is_zero,
        "Q0+Q1+Q2=O": (Q[0] + Q[1] + Q[2]).is_zero,
    }
