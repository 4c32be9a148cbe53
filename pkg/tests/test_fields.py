import random

import pytest
from hypothesis import given, strategies as st

from kummer_mw.fields import (cube_roots, cubic_symbol, is_prime, legendre, make_field,
                              nth_roots, special_constants, sqrt)

FIELDS = [(7, 1), (7, 2), (13, 3), (7, 6), (31, 1)]


def naive_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(300) if is_prime(n)] == [n for n in range(300) if naive_prime(n)]


def test_prime_field():
    F = make_field(7)
    assert F.q == 7 and F.k == 1
    assert len(list(F.elements())) == 7


def test_quadratic_extension_uses_smallest_irreducible():
    F = make_field(7, 2)
    assert F.modulus == (1, 0, 1)  # z^2 + 1
    assert F.gen * F.gen == F(-1)
    # the irreducible monic quadratic with the smallest integer encoding
    encoded = [c0 + 7 * c1 for c1 in range(7) for c0 in range(1, 7)
               if not any((x * x + c1 * x + c0) % 7 == 0 for x in range(7))]
    assert min(encoded) == 1


@pytest.mark.parametrize("p,k", [(4, 1), (9, 1), (3, 1), (7, 7), (7, 0)])
def test_make_field_rejects(p, k):
    with pytest.raises(ValueError):
        make_field(p, k)


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_random(p, k):
    F = make_field(p, k)
    rng = random.Random(1000 * p + k)
    for _ in range(1000):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == F.zero
        if a:
            assert a * a.inverse() == F.one
            assert (b / a) * a == b


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group_order(p, k):
    F = make_field(p, k)
    rng = random.Random(p + k)
    for _ in range(50):
        a = F.random(rng)
        if a:
            assert a ** (F.q - 1) == F.one


@pytest.mark.parametrize("p,k", [(7, 2), (13, 3), (7, 6)])
def test_frobenius_is_a_field_automorphism(p, k):
    F = make_field(p, k)
    rng = random.Random(7)
    for _ in range(200):
        a, b = F.random(rng), F.random(rng)
        assert (a + b).frobenius(p) == a.frobenius(p) + b.frobenius(p)
        assert (a * b).frobenius(p) == a.frobenius(p) * b.frobenius(p)
        assert a.frobenius(p ** k) == a


def test_sqrt_examples():
    F = make_field(7)
    assert sqrt(F(4)) == F(2)
    assert sqrt(F(3)) is None
    assert sqrt(F(0)) == F(0)


def test_cube_root_examples():
    F = make_field(7)
    assert cube_roots(F(6)) == [F(3), F(5), F(6)]
    assert cube_roots(F(2)) == []
    assert cube_roots(F(1)) == [F(1), F(2), F(4)]


def test_symbol_examples():
    F = make_field(7)
    assert cubic_symbol(F(6)) == 0
    assert cubic_symbol(F(2)) == 1
    assert cubic_symbol(F(1)) == 0
    assert legendre(F(6)) == -1
    assert legendre(F(2)) == 1
    assert legendre(F(0)) == 0
    with pytest.raises(ValueError):
        cubic_symbol(F(0))


def test_special_constants():
    c = special_constants(make_field(7))
    assert c.sqrt_minus3.to_int() == 2 and c.omega.to_int() == 4
    F13 = make_field(13)
    w = special_constants(F13).omega
    assert w ** 3 == F13.one and w != F13.one
    with pytest.raises(ValueError):
        special_constants(make_field(11))


@pytest.mark.parametrize("q", [p for p in range(5, 100) if naive_prime(p)])
def test_cube_criteria_agree_exhaustively(q):
    F = make_field(q)
    cubes = {(x * x * x) % q for x in range(1, q)}
    for a in range(1, q):
        is_cube = a in cubes
        assert bool(cube_roots(F(a))) == is_cube
        if q % 3 == 1:
            assert (cubic_symbol(F(a)) == 0) == is_cube


@pytest.mark.parametrize("p,k", [(7, 1), (13, 1), (7, 2), (7, 6)])
def test_sqrt_and_legendre_agree(p, k):
    F = make_field(p, k)
    rng = random.Random(p * k)
    for _ in range(300):
        a = F.random(rng)
        r = sqrt(a)
        if a:
            assert (r is not None) == (legendre(a) == 1)
        if r is not None:
            assert r * r == a


def test_nth_roots_complete_in_extension():
    L = make_field(7, 6)
    rng = random.Random(3)
    for _ in range(20):
        a = L.random(rng)
        if not a:
            continue
        roots = nth_roots(a ** 3, 3)
        assert len(roots) == 3 and all(r ** 3 == a ** 3 for r in roots)
        assert roots == sorted(roots)


@given(st.integers(1, 30), st.integers(1, 30))
def test_cubic_symbol_multiplicative(a, b):
    F = make_field(31)
    assert cubic_symbol(F(a) * F(b)) == (cubic_symbol(F(a)) + cubic_symbol(F(b))) % 3


@given(st.integers(1, 12), st.integers(1, 12))
def test_cubic_symbol_multiplicative_q13(a, b):
    F = make_field(13)
    assert cubic_symbol(F(a * b)) == (cubic_symbol(F(a)) + cubic_symbol(F(b))) % 3


def test_prime_field_embeds_in_extension():
    F, L = make_field(7), make_field(7, 6)
    assert L.embed(F(3)) + 1 == L(4)
    assert L(5).in_prime_field() and not L.gen.in_prime_field()
    assert F(3) == L(3)
