"""Pure-Python section-search kernels over a prime field F_p.

Polynomials are little-endian lists of ints in [0, p).  ``_kernels.pyx``
implements the same functions; results must agree exactly.
"""

from __future__ import annotations

from itertools import product

__all__ = ["cube_table", "poly_cube_root", "scan_numerators"]


def cube_table(p: int) -> list[int]:
    """table[a] = smallest r with r^3 = a mod p, or -1 if a is not a cube."""
    table = [-1] * p
    for r in range(p - 1, -1, -1):
        table[r * r * r % p] = r
    return table


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_cube_root(N: list[int], p: int, table: list[int]) -> list[int] | None:
    """g with g^3 = N exactly (g has lc table[lc N]), or None."""
    deg = len(N) - 1
    while deg >= 0 and N[deg] % p == 0:
        deg -= 1
    if deg < 0:
        return []
    if deg % 3:
        return None
    r = table[N[deg] % p]
    if r < 0:
        return None
    m = deg // 3
    g = [0] * (m + 1)
    g[m] = r
    inv = pow(3 * r * r % p, p - 2, p)
    for k in range(1, m + 1):
        idx = 3 * m - k
        lo = m - k + 1
        s = 0
        for i in range(lo, m + 1):
            gi = g[i]
            for j in range(lo, m + 1):
                l = idx - i - j
                if lo <= l <= m:
                    s += gi * g[j] * g[l]
        g[m - k] = (N[idx] - s) * inv % p
    cube = _mul(_mul(g, g, p), g, p)
    for i in range(deg + 1):
        if cube[i] != N[i] % p:
            return None
    return g


def scan_numerators(p: int, e: int, d: int, lead: int, A: list[int], Bh: list[int],
                    c2: int, table: list[int]) -> tuple[int, list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Scan every f of degree <= d with f[d] = lead.

    Tests whether N = A + t^e (c2 f^3 - Bh) is a cube in F_p[t] and returns
    (examined, [(f, g), ...]) with g^3 = N.
    """
    size = max(len(A), e + max(len(Bh), 3 * d + 1))
    hits = []
    examined = 0
    for low in product(range(p), repeat=d):
        f = list(low) + [lead]
        examined += 1
        f3 = _mul(_mul(f, f, p), f, p)
        N = [0] * size
        for i, a in enumerate(A):
            N[i] = a
        for i in range(max(len(f3), len(Bh))):
            v = c2 * (f3[i] if i < len(f3) else 0) - (Bh[i] if i < len(Bh) else 0)
            N[e + i] = (N[e + i] + v) % p
        g = poly_cube_root(N, p, table)
        if g is not None:
            hits.append((tuple(f), tuple(g)))
    return examined, hits
