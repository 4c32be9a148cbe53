"""Compare the compiled and pure-Python section-search kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each workload is timed on both backends (best of --repeat), outputs are
checked for equality, and the speedup is printed.
"""

from __future__ import annotations

import argparse
import time

from kummer_mw import _backend
from kummer_mw.family import validate_params
from kummer_mw.search import SearchSpec, search_sections


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def kernel_workloads(quick: bool):
    # (label, p, e, d): scans all p^d numerators with a fixed leading coefficient
    rows = [("K2 q=13 d=3", 13, 2, 3), ("K6 q=7 d=4", 7, 6, 4), ("K12 q=13 d=3", 13, 12, 3)]
    if not quick:
        rows += [("K2 q=13 d=4", 13, 2, 4), ("K2 q=31 d=3", 31, 2, 3)]
    return rows


def search_workloads(quick: bool):
    rows = [((7, 2, 6), "K2", 3, False), ((13, 2, 5), "K2", 1, True)]
    if not quick:
        rows += [((7, 2, 6), "K2", 2, True), ((13, 2, 5), "K6", 3, False)]
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)

    py = _backend.get_backend("python")
    try:
        cy = _backend.get_backend("cython")
    except ImportError:
        print("compiled kernels are not built; run `pip install -e .` first")
        return 1

    print(f"{'workload':<28}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for label, p, e, d in kernel_workloads(args.quick):
        table = py.cube_table(p)
        call = (p, e, d, 1, [1, 2, 3], [4, 5], 3, table)
        tp, op = _best(lambda: py.scan_numerators(*call), args.repeat)
        tc, oc = _best(lambda: cy.scan_numerators(*call), args.repeat)
        assert op == oc, f"backends disagree on {label}"
        print(f"{'scan ' + label:<28}{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.1f}x")

    for qbc, surface, d, rational in search_workloads(args.quick):
        spec = SearchSpec(validate_params(*qbc), surface, d, rational)
        tp, rp = _best(lambda: search_sections(spec, backend="python"), args.repeat)
        tc, rc = _best(lambda: search_sections(spec, backend="cython"), args.repeat)
        assert rp.found == rc.found and rp.examined == rc.examined
        label = f"search {surface} {qbc} d={d}" + (" rat" if rational else "")
        print(f"{label:<28}{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
