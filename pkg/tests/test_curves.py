import random

import pytest

from kummer_mw.curves import (WeierstrassCurve, count_points, points, quadratic_twist)
from kummer_mw.family import curve_Ej, named_sections, phi, torsion_sections
from kummer_mw.fields import make_field, sqrt
from kummer_mw.poly import RatFunc

F13 = make_field(13)


def random_points(E, rng, n):
    pts = points(E)
    return [pts[rng.randrange(len(pts))] for _ in range(n)]


@pytest.mark.parametrize("B", [1, 2, 5])
def test_group_axioms_finite_field(B):
    E = WeierstrassCurve(0, B, F13)
    rng = random.Random(B)
    O = E.zero
    for P, Q, R in zip(*[iter(random_points(E, rng, 300))] * 3):
        assert (P + Q) + R == P + (Q + R)
        assert P + Q == Q + P
        assert P + O == P and O + P == P
        assert (P - P).is_zero
        assert (P + Q).on_curve()


def test_group_axioms_with_x_term():
    F = make_field(7, 2)
    E = WeierstrassCurve(F.gen, 3, F)
    rng = random.Random(5)
    for _ in range(100):
        pts = []
        while len(pts) < 3:
            x = F.random(rng)
            y = sqrt(E.rhs(x))
            if y is not None:
                pts.append(E.point(x, y))
        P, Q, R = pts
        assert (P + Q) + R == P + (Q + R)
        assert P + Q == Q + P


def test_group_order_annihilates():
    E = WeierstrassCurve(0, 2, F13)
    n = count_points(E)
    assert n == len(points(E))
    for P in points(E):
        assert (n * P).is_zero


def test_on_curve_examples(p726):
    E = WeierstrassCurve(0, 1, F13)
    assert E.zero.on_curve()
    assert not E.point(0, 0, check=False).on_curve()
    assert named_sections(p726, "P", 0).on_curve()


def test_j_invariant():
    assert WeierstrassCurve(0, 5, F13).j_invariant() == 0
    assert WeierstrassCurve(1, 0, F13).j_invariant() == 1728 % 13
    with pytest.raises(ValueError):
        WeierstrassCurve(0, 0, F13)


@pytest.mark.parametrize("q", [7, 13, 19, 31])
def test_twist_counts_sum_to_2q_plus_2(q):
    F = make_field(q)
    c = next(a for a in range(2, q) if pow(a, (q - 1) // 2, q) == q - 1)
    for b in range(1, q):
        E = WeierstrassCurve(0, -b, F)
        tw = quadratic_twist(E, c)
        assert count_points(E) + count_points(tw.curve) == 2 * q + 2


def test_twist_model(p726):
    F = p726.base
    E = WeierstrassCurve(0, -2, F)
    tw = quadratic_twist(E, 6)  # 6 y^2 = x^3 - 2
    for P in points(tw.curve)[1:]:
        x, y = tw.from_short(P)
        assert tw.on_model(x, y)
        assert tw.to_short(x, y) == P
    with pytest.raises(ValueError):
        quadratic_twist(E, 2)  # 2 = 3^2 mod 7


def test_function_field_group_law(p726):
    P0, P1, P2 = (named_sections(p726, "P", k) for k in range(3))
    assert (P0 + P1) + P2 == P0 + (P1 + P2)
    assert P0 + P1 == P1 + P0
    assert (P0 - P0).is_zero
    assert (P0 + P0).on_curve()


def test_specialization_commutes_with_addition(p726):
    L = p726.ext
    P0, Q0 = named_sections(p726, "P", 0), named_sections(p726, "P", 1)
    S = P0 + Q0
    D = 2 * P0 - Q0
    rng = random.Random(11)
    done = 0
    while done < 20:
        a = L.random(rng)
        try:
            Ea = P0.curve.specialize(a)
            for R in (P0, Q0, S, D):
                if not R.is_zero and R.x.den(a) == 0:
                    raise ZeroDivisionError
        except (ValueError, ZeroDivisionError):
            continue
        assert P0.specialize(a) + Q0.specialize(a) == S.specialize(a)
        assert 2 * P0.specialize(a) - Q0.specialize(a) == D.specialize(a)
        assert S.specialize(a).curve == Ea
        done += 1


def test_torsion_sections_have_order_three(p726, p1325):
    for params in (p726, p1325):
        for T in torsion_sections(params):
            S = phi(params, T)
            assert not S.is_zero
            assert not (2 * S).is_zero
            assert (3 * S).is_zero
            assert S.order() == 3


def test_frobenius_on_sections(p726):
    P0 = named_sections(p726, "P", 0)
    assert P0.frobenius(7 ** 6) == P0
    assert P0.frobenius(7).on_curve()
    assert P0.ext_degree in (2, 3, 6)


def test_section_coordinates_are_ratfuncs(p726):
    Q0 = named_sections(p726, "Q", 0)
    assert isinstance(Q0.x, RatFunc) and Q0.curve == curve_Ej(p726, 2, p726.ext)
