"""Exhaustive bounded-degree search for affine F_q-sections of K_2 and K_6n.

The surface is (x1^3 - b) t^e = c (x0^3 - b).  Fixing x1 = f/h determines
x0^3, so only x1 is enumerated:

    x0^3 = N / (c h^3),   N = b c h^3 + (f^3 - b h^3) t^e,

and x0 = g / (c h) exactly when c^2 N = g^3 in F_q[t].  The cube test runs
in the kernel backend; every hit is then re-checked by full expansion of
the surface equation.  The searched family is all pairs (x0, x1) of
polynomials of degree <= d, or with ``rational=True`` all pairs of reduced
fractions whose numerators and denominators have degree <= d.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import product

from . import _backend
from .family import FamilyParams, KummerPoint, KummerSurface, SurfaceId, build_surface
from .fields import cube_roots
from .poly import Poly, RatFunc, pgcd

__all__ = ["SearchSpec", "SearchResult", "SearchCapExceeded", "search_sections",
           "verify_candidate", "DEFAULT_CAP"]

DEFAULT_CAP = 10 ** 9


class SearchCapExceeded(ValueError):
    def __init__(self, space_size: int, cap: int):
        super().__init__(f"search would examine {space_size} candidates; cap is {cap}")
        self.space_size = space_size
        self.cap = cap


@dataclass(frozen=True)
class SearchSpec:
    params: FamilyParams
    surface: SurfaceId
    max_deg: int
    rational: bool = False

    def __post_init__(self):
        if isinstance(self.surface, str):
            object.__setattr__(self, "surface", SurfaceId.parse(self.surface))
        if self.surface.tag not in ("K2", "K6n"):
            raise ValueError(f"search runs on K2 or K6n, not {self.surface}")
        if self.max_deg < 0:
            raise ValueError("max_deg must be >= 0")
        if self.params.base.k != 1:
            raise ValueError("search runs over a prime field")

    @property
    def exponent(self) -> int:
        return 2 if self.surface.tag == "K2" else 6 * self.surface.index

    @property
    def family(self) -> str:
        return "rational" if self.rational else "polynomial"

    @property
    def space_size(self) -> int:
        """Nominal count of pairs with numerator and denominator degree <= d."""
        return self.params.q ** (2 * (2 * self.max_deg + 2))

    @property
    def family_size(self) -> int:
        q, d = self.params.q, self.max_deg
        return q ** (2 * d + 2) if not self.rational else self.space_size

    @property
    def candidates(self) -> int:
        """Values of x1 = f/h the kernel scans (before the coprimality filter)."""
        q, d = self.params.q, self.max_deg
        if not self.rational:
            return q ** (d + 1)
        return q ** (d + 1) * sum(q ** k for k in range(d + 1))


@dataclass
class SearchResult:
    spec: SearchSpec
    found: list[tuple[RatFunc, RatFunc]]
    exhausted: bool
    space_size: int
    family_size: int
    examined: int
    elapsed: float
    backend: str
    notes: list[str] = dc_field(default_factory=list)


def verify_candidate(surface: KummerSurface, x0, x1=None) -> bool:
    """Exact identity check of an affine section; points at infinity are rejected."""
    if isinstance(x0, KummerPoint):
        if not x0.is_affine:
            return False
        x0, x1 = x0.x0, x0.x1
    if x0 is None or x1 is None:
        return False
    F = surface.params.base
    x0, x1 = (v if isinstance(v, RatFunc) else RatFunc.const(v, F) for v in (x0, x1))
    if x0.field != F or x1.field != F:
        return False
    return surface.residual(x0, x1, RatFunc.t(F)).is_zero()


def _ints(P: Poly) -> list[int]:
    return [a.to_int() for a in P.coeffs]


def _monic_polys(F, degree: int):
    if degree == 0:
        yield Poly.const(1, F)
        return
    for low in product(range(F.q), repeat=degree):
        yield Poly(list(low) + [1], F)


def _denominators(spec: SearchSpec) -> list[Poly]:
    F = spec.params.base
    if not spec.rational:
        return [Poly.const(1, F)]
    return [h for k in range(spec.max_deg + 1) for h in _monic_polys(F, k)]


def _run_block(args):
    backend, p, e, d, lead, A, Bh, c2, table = args
    return _backend.get_backend(backend).scan_numerators(p, e, d, lead, A, Bh, c2, table)


def _pair_key(pair: tuple[RatFunc, RatFunc]) -> tuple:
    return tuple((v.num.sort_key(), v.den.sort_key()) for v in pair)


def search_sections(spec: SearchSpec, cap: int = DEFAULT_CAP, workers: int = 1,
                    backend: str | None = None) -> SearchResult:
    """Enumerate the family described by ``spec``; raises SearchCapExceeded first if too big.

    Work is split into blocks by (denominator, leading numerator coefficient of
    x1); blocks are independent and the merged output is sorted canonically.
    """
    if spec.candidates > cap:
        raise SearchCapExceeded(spec.candidates, cap)
    start = time.perf_counter()
    params = spec.params
    F, p, d, e = params.base, params.q, spec.max_deg, spec.exponent
    kern = _backend.get_backend(backend)
    name = "python" if kern is _backend._kernels_py else "cython"
    table = kern.cube_table(p)
    b, c = params.b, params.c
    c2 = (c * c).to_int()
    units = cube_roots(F.one)
    surface = build_surface(params, spec.surface)

    denoms = _denominators(spec)
    tasks = []
    for h in denoms:
        h3 = h ** 3
        A = _ints(h3 * (c ** 3 * b))
        Bh = _ints(h3 * (c * c * b))
        for lead in range(p):
            tasks.append((name, p, e, d, lead, A, Bh, c2, table))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_run_block, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        outputs = [kern.scan_numerators(*task[1:]) for task in tasks]

    examined = 0
    found: set[tuple[RatFunc, RatFunc]] = set()
    for i, (count, hits) in enumerate(outputs):
        examined += count
        h = denoms[i // p]
        for f_coeffs, g_coeffs in hits:
            f = Poly(list(f_coeffs), F)
            if h.degree > 0 and pgcd(f, h).degree != 0:
                continue
            x1 = RatFunc(f, h)
            g = Poly(list(g_coeffs), F)
            for u in units:
                x0 = RatFunc(g * u, h * c)
                if x0.num.degree > d or x0.den.degree > d:
                    continue
                if not verify_candidate(surface, x0, x1):
                    raise AssertionError(f"kernel hit ({x0}, {x1}) fails the identity")
                found.add((x0, x1))
    notes = []
    if not spec.rational:
        notes.append("polynomial pairs only; pass rational=True for fractions")
    return SearchResult(spec, sorted(found, key=_pair_key), True, spec.space_size,
                        spec.family_size, examined, time.perf_counter() - start, name, notes)
