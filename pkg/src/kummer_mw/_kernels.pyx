# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled section-search kernels; same API and results as _kernels_py."""

from libc.stdlib cimport malloc, free

__all__ = ["cube_table", "poly_cube_root", "scan_numerators"]

ctypedef long long i64


def cube_table(long p):
    table = [-1] * p
    cdef i64 r
    for r in range(p - 1, -1, -1):
        table[r * r * r % p] = r
    return table


cdef inline i64 _powmod(i64 a, i64 e, i64 p):
    cdef i64 r = 1
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


cdef void _mul(i64* a, int la, i64* b, int lb, i64* out, i64 p):
    cdef int i, j
    for i in range(la + lb - 1):
        out[i] = 0
    for i in range(la):
        if a[i]:
            for j in range(lb):
                out[i + j] = (out[i + j] + a[i] * b[j]) % p


cdef int _cube_root(i64* N, int size, i64 p, i64* table, i64* g, i64* work) noexcept:
    """Writes g and returns deg(g) + 1 (0 for N = 0), or -1 if N is not a cube."""
    cdef int deg = size - 1
    cdef int m, k, idx, lo, i, j, l
    cdef i64 r, inv, s
    while deg >= 0 and N[deg] == 0:
        deg -= 1
    if deg < 0:
        return 0
    if deg % 3:
        return -1
    r = table[N[deg]]
    if r < 0:
        return -1
    m = deg // 3
    for i in range(m + 1):
        g[i] = 0
    g[m] = r
    inv = _powmod(3 * r * r % p, p - 2, p)
    for k in range(1, m + 1):
        idx = 3 * m - k
        lo = m - k + 1
        s = 0
        for i in range(lo, m + 1):
            for j in range(lo, m + 1):
                l = idx - i - j
                if lo <= l <= m:
                    s = (s + g[i] * g[j] % p * g[l]) % p
        g[m - k] = ((N[idx] - s) % p + p) % p * inv % p
    # work = g^2, then work[2m+1:] = g^3
    _mul(g, m + 1, g, m + 1, work, p)
    _mul(work, 2 * m + 1, g, m + 1, work + 2 * m + 1, p)
    for i in range(deg + 1):
        if work[2 * m + 1 + i] != N[i]:
            return -1
    return m + 1


def poly_cube_root(N, long p, table):
    cdef int size = len(N)
    cdef int n, i
    cdef i64* buf = <i64*> malloc(sizeof(i64) * (8 * size + 8 + p))
    if buf == NULL:
        raise MemoryError()
    cdef i64* cN = buf
    cdef i64* g = buf + size
    cdef i64* work = buf + 2 * size + 1
    cdef i64* tab = buf + 8 * size + 8
    try:
        for i in range(size):
            cN[i] = N[i] % p
        for i in range(p):
            tab[i] = table[i]
        n = _cube_root(cN, size, p, tab, g, work)
        if n < 0:
            return None
        return [g[i] for i in range(n)]
    finally:
        free(buf)


def scan_numerators(long p, int e, int d, long lead, A, Bh, long c2, table):
    cdef int lf3 = 3 * d + 1
    cdef int lbh = len(Bh)
    cdef int la = len(A)
    cdef int size = max(la, e + max(lbh, lf3))
    cdef int i, n, pos
    cdef i64 v
    cdef long examined = 0
    cdef i64* buf = <i64*> malloc(sizeof(i64) * (11 * size + 4 * d + 16 + p + la + lbh))
    if buf == NULL:
        raise MemoryError()
    cdef i64* f = buf
    cdef i64* f2 = f + d + 1
    cdef i64* f3 = f2 + 2 * d + 1
    cdef i64* N = f3 + 3 * d + 1
    cdef i64* g = N + size
    cdef i64* work = g + size + 1
    cdef i64* tab = work + 6 * size + 6
    cdef i64* cA = tab + p
    cdef i64* cB = cA + la
    hits = []
    try:
        for i in range(p):
            tab[i] = table[i]
        for i in range(la):
            cA[i] = A[i] % p
        for i in range(lbh):
            cB[i] = Bh[i] % p
        for i in range(d):
            f[i] = 0
        f[d] = lead % p
        while True:
            examined += 1
            _mul(f, d + 1, f, d + 1, f2, p)
            _mul(f2, 2 * d + 1, f, d + 1, f3, p)
            for i in range(size):
                N[i] = cA[i] if i < la else 0
            for i in range(max(lbh, lf3)):
                v = c2 * (f3[i] if i < lf3 else 0) % p - (cB[i] if i < lbh else 0)
                N[e + i] = ((N[e + i] + v) % p + p) % p
            n = _cube_root(N, size, p, tab, g, work)
            if n >= 0:
                hits.append((tuple([f[i] for i in range(d + 1)]),
                             tuple([g[i] for i in range(n)])))
            # odometer over f[0..d-1]
            pos = 0
            while pos < d:
                f[pos] += 1
                if f[pos] < p:
                    break
                f[pos] = 0
                pos += 1
            if pos == d:
                break
        return examined, hits
    finally:
        free(buf)
