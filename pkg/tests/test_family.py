import random

import pytest

from kummer_mw.curves import WeierstrassCurve
from kummer_mw.family import (EXCEPTIONAL, PRESETS, KummerPoint, ParamError, SurfaceId,
                              base_change, build_surface, check_global_minimality, curve_Ej,
                              infinity_isomorphism, named_sections, phi, phi_inv,
                              sample_kummer_points, scan_params, schwartz_zippel_log2,
                              torsion_sections, validate_params, verify_phi_identity,
                              weierstrass_model, zero_section)
from kummer_mw.kodaira import fiber_configuration
from kummer_mw.poly import RatFunc


def test_valid_params(p726):
    assert p726.q == 7 and p726.flags == ()
    assert p726.cbrt_c.to_int() == 3 and p726.omega.to_int() == 4


@pytest.mark.parametrize("q,b,c,code", [
    (7, 6, 6, "b-is-cube"), (7, 2, 2, "c-not-cube"), (5, 1, 1, "q-mod-3"),
    (9, 1, 1, "q-not-prime"), (7, 0, 6, "b-zero"), (7, 2, 0, "c-zero"),
    (7, 2, 1, "c-is-square"),
])
def test_invalid_params(q, b, c, code):
    with pytest.raises(ParamError) as err:
        validate_params(q, b, c)
    assert code in err.value.codes


def test_relaxed_flag(p766):
    assert p766.flags == ("b-is-cube",)
    with pytest.raises(ParamError):
        validate_params(7, 2, 2, relaxed=True)


def test_scan_params_only_valid():
    found = list(scan_params(13))
    assert (13, 2, 5) in found and len(found) >= 2
    for q, b, c in found:
        validate_params(q, b, c)
    relaxed = list(scan_params(7, relaxed=True))
    assert set(scan_params(7)) < set(relaxed)


def test_presets_validate():
    for q, b, c, relaxed in PRESETS.values():
        validate_params(q, b, c, relaxed)


@pytest.mark.parametrize("text,expected", [("K2", "K2"), ("k6", "K6"), ("K6n2", "K12"),
                                           ("K18", "K18"), ("E", "E"), ("E7", "E1")])
def test_surface_ids(text, expected):
    assert str(SurfaceId.parse(text)) == expected


def test_weierstrass_model_formula(p726):
    t = RatFunc.t(p726.base)
    # 2 b^2 = 8 = 1 mod 7
    assert weierstrass_model(p726).B == (t ** 6 - 6) ** 2
    assert curve_Ej(p726, 0).B == (t - 6) ** 2
    assert curve_Ej(p726, 2).B == t ** 2 * (t - 6) ** 2


def test_K12_equation(p726):
    S = build_surface(p726, SurfaceId.parse("K6n2"))
    assert S.exponent == 12
    assert str(S) == "(x1^3 - 2)*t^12 = 6*(x0^3 - 2)"


def test_zero_and_torsion_sections(p726):
    t = RatFunc.t(p726.base)
    O = zero_section(p726)
    assert O == KummerPoint(t ** 2, RatFunc.const(3, p726.base), t * 0, t)
    T1, T2 = torsion_sections(p726)
    assert T1 == KummerPoint(t ** 2, RatFunc.const(5, p726.base), t * 0, t)
    assert T2 == KummerPoint(t ** 2, RatFunc.const(6, p726.base), t * 0, t)
    O12 = zero_section(p726, 2)
    assert O12 == KummerPoint(t ** 4, RatFunc.const(3, p726.base), t * 0, t)
    K6 = build_surface(p726, SurfaceId.parse("K6"))
    for P in (O, T1, T2):
        assert K6.contains(P)


def test_phi_zero_section_conventions(p726):
    O = zero_section(p726)
    assert phi(p726, O).is_zero
    E = weierstrass_model(p726)
    assert phi_inv(p726, E.zero) == O


def test_torsion_images_map_back(p726):
    for T in torsion_sections(p726):
        S = phi(p726, T)
        assert S.on_curve()
        assert phi_inv(p726, S) == T


def test_phi_exceptional_locus(p726):
    L = p726.ext
    t = L(3)
    x1 = L(2)
    x0 = t ** 2 * x1 / L(p726.cbrt_c)  # x0 cbrt(c) = t^2 x1
    assert phi(p726, KummerPoint.affine(x0, x1, t)) is EXCEPTIONAL


@pytest.mark.parametrize("n", [1, 2])
def test_phi_round_trip_small(p726, n):
    rng = random.Random(n)
    K = build_surface(p726, SurfaceId("K6n", n))
    for P in sample_kummer_points(p726, n, 50, rng):
        assert K.contains(P)
        Q = phi(p726, P, n)
        assert Q.on_curve() and Q.curve.j_invariant() == 0
        assert phi_inv(p726, Q, P.t, n) == P


def test_torsion_group_law_over_function_field(p726):
    # the two sections at infinity are mutually inverse under the group law
    t = RatFunc.t(p726.ext)
    T1, T2 = torsion_sections(p726, 1, t)
    S = phi(p726, T1)
    assert S.curve == weierstrass_model(p726, 1, p726.ext)
    assert phi_inv(p726, S + S) == T2
    assert phi_inv(p726, -S) == T2


def test_round_trip_report(p1325):
    rep = verify_phi_identity(p1325, 1, samples=100, seed=1)
    assert rep.passed and rep.samples == 100
    assert rep.log2_bound < -40


def test_schwartz_zippel_bound():
    assert schwartz_zippel_log2(2, 8, 3) == -6.0


def test_named_sections_on_curves(p726, p1325):
    for params in (p726, p1325):
        for k in range(3):
            assert named_sections(params, "P", k).curve == curve_Ej(params, 1, params.ext)
            assert named_sections(params, "Q", k).on_curve()
    with pytest.raises(ValueError):
        named_sections(p726, "R", 0)


def test_constant_section_survives_base_change(p766):
    t = RatFunc.t(p766.base)
    three = RatFunc.const(3, p766.base)
    P = KummerPoint.affine(three, three, t)
    assert build_surface(p766, SurfaceId("K2")).contains(P)
    for n in (1, 2):
        assert build_surface(p766, SurfaceId("K6n", n)).contains(base_change(P, n))
    assert not build_surface(validate_params(7, 2, 6), SurfaceId("K2")).contains(
        KummerPoint.affine(three * 0, three * 0, t))


def test_global_minimality(p726, p1325):
    for params in (p726, p1325):
        assert check_global_minimality(weierstrass_model(params)).minimal
        for j in range(6):
            assert check_global_minimality(curve_Ej(params, j)).minimal
        for n in (1, 2, 3):
            assert check_global_minimality(weierstrass_model(params, n)).minimal


def test_non_minimal_model_detected(p726):
    t = RatFunc.t(p726.base)
    rep = check_global_minimality(WeierstrassCurve(RatFunc.const(0, p726.base), t ** 6, p726.base))
    assert not rep.minimal and rep.reasons


@pytest.mark.parametrize("n", [1, 2, 3])
def test_arithmetic_genus_of_K6n(p726, n):
    rep = fiber_configuration(weierstrass_model(p726, n), with_mw=False)
    assert rep.euler_sum == 24 * n and rep.chi == 2 * n


@pytest.mark.parametrize("j", range(6))
def test_chart_at_infinity(p726, p1325, j):
    for params in (p726, p1325):
        iso = infinity_isomorphism(params, j)
        assert iso["holds"] and iso["partner"] == (4 - j) % 6


def test_fibres_have_j_zero(p726):
    E = weierstrass_model(p726)
    for a in p726.base.elements():
        if a ** 6 != p726.c:
            assert E.specialize(a).j_invariant() == 0
