"""Kodaira fibres of y^2 = x^3 + B(t) and the Shioda-Tate bookkeeping.

For these curves (p > 3) Tate's algorithm collapses to a lookup on
k = v(B) at a minimal place: k = 0 is good reduction and k = 1..5 give
II, IV, I0*, IV*, II*.  Fibres at non-rational closed points are counted
once per irreducible factor and weighted by its degree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .curves import WeierstrassCurve
from .family import infinity_chart
from .poly import INFINITY, Place, factor, valuation

__all__ = [
    "KodairaFiber", "FibrationReport", "MWGroup", "NonMinimalError",
    "UnsupportedConfiguration", "KODAIRA_TABLE", "tate_at_place",
    "fiber_configuration", "geometric_mw", "shioda_tate_rho", "lattice_rank",
    "format_lattice", "format_fibers",
]


class NonMinimalError(ValueError):
    pass


class UnsupportedConfiguration(LookupError):
    pass


class KodairaType(NamedTuple):
    name: str
    components: int
    euler: int
    component_group: str
    root_lattice: str | None


# Standard Kodaira table for the additive types reached by j = 0 curves.
KODAIRA_TABLE: dict[int, KodairaType] = {
    1: KodairaType("II", 1, 2, "0", None),
    2: KodairaType("IV", 3, 4, "Z/3", "A2"),
    3: KodairaType("I0*", 5, 6, "Z/2xZ/2", "D4"),
    4: KodairaType("IV*", 7, 8, "Z/3", "E6"),
    5: KodairaType("II*", 9, 10, "0", "E8"),
}


@dataclass(frozen=True)
class KodairaFiber:
    place: Place
    valuation: int  # v(B) in the minimal chart
    type: str
    components: int
    euler: int
    component_group: str
    root_lattice: str | None

    @property
    def degree(self) -> int:
        return self.place.degree


def lattice_rank(name: str | None) -> int:
    return 0 if name is None else int(name[1:])


def tate_at_place(E: WeierstrassCurve, v: Place) -> KodairaFiber | None:
    """Fibre type at v, or None for good reduction."""
    if not E.A.is_zero():
        raise ValueError("Tate's algorithm is implemented for y^2 = x^3 + B only")
    if v.is_infinity:
        _, k, _ = infinity_chart(E.B)
    else:
        if E.B.den.degree > 0 and valuation(E.B.den, v) > 0:
            raise NonMinimalError(f"B has a pole at {v}")
        k = valuation(E.B, v)
        if k >= 6:
            raise NonMinimalError(f"v(B) = {k} at {v}; the model is not minimal")
    if k == 0:
        return None
    kt = KODAIRA_TABLE[k]
    return KodairaFiber(v, k, kt.name, kt.components, kt.euler, kt.component_group,
                        kt.root_lattice)


_LATTICE_ORDER = {"A": 0, "D": 1, "E": 2}


def _lattice_key(name: str) -> tuple[int, int]:
    return (_LATTICE_ORDER[name[0]], int(name[1:]))


def format_lattice(T: tuple[str, ...]) -> str:
    """('A2', 'E8', 'E8') -> 'A2+E8^2'; empty -> '0'."""
    if not T:
        return "0"
    counts = Counter(T)
    parts = []
    for name in sorted(counts, key=_lattice_key):
        m = counts[name]
        parts.append(name if m == 1 else f"{name}^{m}")
    return "+".join(parts)


_FIBER_ORDER = ["I0", "II", "III", "IV", "I0*", "IV*", "III*", "II*"]


def format_fibers(types: list[str]) -> str:
    """['IV', 'II*', 'II*'] -> 'IV+2II*'."""
    counts = Counter(types)
    parts = []
    for name in sorted(counts, key=lambda s: _FIBER_ORDER.index(s) if s in _FIBER_ORDER else 99):
        m = counts[name]
        parts.append(name if m == 1 else f"{m}{name}")
    return "+".join(parts)


@dataclass(frozen=True)
class MWGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{n}" for n in self.torsion)
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FibrationReport:
    curve: WeierstrassCurve
    chi: int
    fibers: tuple[KodairaFiber, ...]
    T: tuple[str, ...]
    mw_geometric: MWGroup | None = None
    rho_geometric: int | None = None
    mw_source: str | None = None

    @property
    def euler_sum(self) -> int:
        return sum(f.degree * f.euler for f in self.fibers)

    @property
    def T_rank(self) -> int:
        return sum(lattice_rank(n) for n in self.T)

    def geometric_fiber_types(self) -> list[str]:
        return [f.type for f in self.fibers for _ in range(f.degree)]

    def fiber_at(self, v: Place) -> KodairaFiber | None:
        for f in self.fibers:
            if f.place == v:
                return f
        return None


def fiber_configuration(E: WeierstrassCurve, with_mw: bool = True) -> FibrationReport:
    """All bad fibres (finite places dividing B, then infinity) with chi and T."""
    fibers = []
    for g, _ in factor(E.B.num):
        fib = tate_at_place(E, Place(g))
        if fib is not None:
            fibers.append(fib)
    fib = tate_at_place(E, INFINITY)
    if fib is not None:
        fibers.append(fib)
    euler = sum(f.degree * f.euler for f in fibers)
    if euler % 12:
        raise ArithmeticError(f"Euler number {euler} is not a multiple of 12")
    chi = euler // 12
    T = tuple(sorted((f.root_lattice for f in fibers for _ in range(f.degree)
                      if f.root_lattice is not None), key=_lattice_key))
    report = FibrationReport(E, chi, tuple(fibers), T)
    if not with_mw:
        return report
    try:
        mw, source = geometric_mw(report)
    except UnsupportedConfiguration:
        return report
    return FibrationReport(E, chi, tuple(fibers), T, mw,
                           shioda_tate_rho(chi, T, mw), source)


# Cited structure results, keyed by (chi, T).  Not recomputed here.
GEOMETRIC_MW_TABLE: dict[tuple[int, tuple[str, ...]], tuple[MWGroup, str]] = {
    (1, ("A2", "E6")): (MWGroup(0, (3,)), "Oguiso-Shioda classification of rational elliptic surfaces"),
    (1, ("A2", "D4")): (MWGroup(2), "Oguiso-Shioda classification of rational elliptic surfaces"),
    (1, ("A2", "A2", "A2")): (MWGroup(2, (3,)), "Oguiso-Shioda classification of rational elliptic surfaces"),
    (2, ("A2", "E8", "E8")): (MWGroup(0), "Shimada-Zhang list of extremal elliptic K3 surfaces, no. 297"),
    (2, ("A2",) * 6): (MWGroup(6, (3,)), "Mordell-Weil group of the Kuwata surface K6 over the algebraic closure (Shioda)"),
}


def geometric_mw(report: FibrationReport) -> tuple[MWGroup, str]:
    key = (report.chi, report.T)
    if key not in GEOMETRIC_MW_TABLE:
        raise UnsupportedConfiguration(
            f"no cited Mordell-Weil data for chi = {report.chi}, T = {format_lattice(report.T)}")
    return GEOMETRIC_MW_TABLE[key]


def shioda_tate_rho(chi: int, T: tuple[str, ...], mw: MWGroup) -> int:
    return 2 + sum(lattice_rank(n) for n in T) + mw.rank


def contribution(fiber_type: str, same: bool) -> Fraction:
    """Local height correction for two sections on non-identity components."""
    if fiber_type in ("II", "II*"):
        return Fraction(0)
    table = {"IV": (Fraction(2, 3), Fraction(1, 3)),
             "IV*": (Fraction(4, 3), Fraction(2, 3)),
             "I0*": (Fraction(1), Fraction(1, 2))}
    if fiber_type not in table:
        raise ValueError(f"no contribution data for fibre type {fiber_type}")
    return table[fiber_type][0 if same else 1]
