from itertools import product

import pytest

from kummer_mw.family import SurfaceId, build_surface, validate_params, zero_section
from kummer_mw.poly import Poly, RatFunc
from kummer_mw.search import (SearchCapExceeded, SearchSpec, search_sections,
                              verify_candidate)


def brute_force(params, surface, d):
    """Enumerate both coordinates independently (polynomial pairs)."""
    F = params.base
    S = build_surface(params, SurfaceId.parse(surface))
    polys = [RatFunc(Poly(list(c), F)) for c in product(range(F.q), repeat=d + 1)]
    return sorted(((x0, x1) for x0 in polys for x1 in polys if verify_candidate(S, x0, x1)),
                  key=lambda p: tuple((v.num.sort_key(), v.den.sort_key()) for v in p))


def as_ints(found):
    return [(x0.num[0].to_int(), x1.num[0].to_int()) for x0, x1 in found]


def test_strict_k2_degree_two_is_empty(p726):
    res = search_sections(SearchSpec(p726, "K2", 2))
    assert res.found == [] and res.exhausted
    assert res.space_size == 7 ** 12
    assert res.examined == 7 ** 3


def test_relaxed_constant_sections(p766):
    res = search_sections(SearchSpec(p766, "K2", 0))
    assert (3, 3) in as_ints(res.found)
    assert sorted(as_ints(res.found)) == [(a, b) for a in (3, 5, 6) for b in (3, 5, 6)]


def test_k6_has_no_affine_sections_of_degree_one(p726):
    assert search_sections(SearchSpec(p726, "K6", 1)).found == []


@pytest.mark.parametrize("qbc,relaxed,surface", [
    ((7, 2, 6), False, "K2"), ((7, 6, 6), True, "K2"), ((7, 2, 6), False, "K6"),
    ((7, 6, 6), True, "K6"), ((7, 4, 6), False, "K2"),
])
def test_matches_brute_force(qbc, relaxed, surface):
    params = validate_params(*qbc, relaxed=relaxed)
    for d in (0, 1):
        got = search_sections(SearchSpec(params, surface, d)).found
        assert got == brute_force(params, surface, d)


def test_verify_candidate_examples(p726, p766):
    assert verify_candidate(build_surface(p766, SurfaceId("K2")), 3, 3)
    assert not verify_candidate(build_surface(p726, SurfaceId("K2")), 0, 0)
    K6 = build_surface(p726, SurfaceId.parse("K6"))
    assert not verify_candidate(K6, zero_section(p726))
    assert not verify_candidate(K6, None, None)


def test_results_are_sound(p766):
    for surface in ("K2", "K6", "K6n2"):
        spec = SearchSpec(p766, surface, 1, rational=True)
        S = build_surface(p766, spec.surface)
        for x0, x1 in search_sections(spec).found:
            assert verify_candidate(S, x0, x1)


def test_monotone_in_degree(p766):
    for rational in (False, True):
        prev = set()
        for d in range(3):
            cur = set(search_sections(SearchSpec(p766, "K2", d, rational)).found)
            assert prev <= cur
            prev = cur


def test_rational_family_counts(p726):
    spec = SearchSpec(p726, "K2", 1, rational=True)
    res = search_sections(spec)
    assert res.examined == spec.candidates == 49 * 8
    assert res.found == [] and res.family_size == res.space_size


def test_cap_refusal(p726):
    spec = SearchSpec(p726, "K2", 3)
    with pytest.raises(SearchCapExceeded) as err:
        search_sections(spec, cap=100)
    assert err.value.space_size == 7 ** 4


def test_parallel_matches_serial(p766):
    spec = SearchSpec(p766, "K2", 1, rational=True)
    a = search_sections(spec, workers=1)
    b = search_sections(spec, workers=2)
    assert a.found == b.found and a.examined == b.examined


def test_backends_agree(p766, p1325):
    for params in (p766, p1325):
        spec = SearchSpec(params, "K2", 1, rational=True)
        a = search_sections(spec, backend="python")
        try:
            b = search_sections(spec, backend="cython")
        except ImportError:
            pytest.skip("compiled kernels not built")
        assert a.found == b.found and a.examined == b.examined


def test_invalid_specs(p726):
    with pytest.raises(ValueError):
        SearchSpec(p726, "E", 1)
    with pytest.raises(ValueError):
        SearchSpec(p726, "K2", -1)
