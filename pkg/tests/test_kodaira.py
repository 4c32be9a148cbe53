from fractions import Fraction

import pytest

from kummer_mw.curves import WeierstrassCurve
from kummer_mw.family import curve_Ej, scan_params, validate_params, weierstrass_model
from kummer_mw.fields import make_field
from kummer_mw.kodaira import (KODAIRA_TABLE, MWGroup, NonMinimalError,
                               UnsupportedConfiguration, contribution, fiber_configuration,
                               format_fibers, format_lattice, geometric_mw, lattice_rank,
                               tate_at_place)
from kummer_mw.poly import INFINITY, Place, Poly, RatFunc
from kummer_mw.report import TABLE1_EXPECTED

PARAM_SETS = [(7, 2, 6), (13, 2, 5), (19, 2, 8), (31, 3, 15), (43, 3, 2)]


def place(params, a):
    return Place(Poly([-a, 1], params.base))


def test_table_entries():
    assert [KODAIRA_TABLE[k].name for k in range(1, 6)] == ["II", "IV", "I0*", "IV*", "II*"]
    assert [KODAIRA_TABLE[k].euler for k in range(1, 6)] == [2, 4, 6, 8, 10]


def test_local_types(p726):
    assert tate_at_place(curve_Ej(p726, 0), place(p726, 6)).type == "IV"
    E1 = curve_Ej(p726, 1)
    assert tate_at_place(E1, place(p726, 0)).type == "II"
    assert tate_at_place(E1, INFINITY).type == "I0*"
    assert tate_at_place(curve_Ej(p726, 5), place(p726, 0)).type == "II*"
    assert tate_at_place(E1, place(p726, 1)) is None


def test_E2_configuration(p726):
    r = fiber_configuration(curve_Ej(p726, 2))
    assert format_fibers(r.geometric_fiber_types()) == "3IV"
    assert r.T == ("A2", "A2", "A2") and r.chi == 1


def test_K6_model_configuration(p726):
    r = fiber_configuration(weierstrass_model(p726))
    assert r.geometric_fiber_types() == ["IV"] * 6
    assert r.chi == 2
    assert str(r.mw_geometric) == "Z^6+Z/3" and r.rho_geometric == 20
    # the six fibres sit at closed points of degree > 1 over F_7
    assert all(f.degree == 2 for f in r.fibers)


def test_E5(p726):
    r = fiber_configuration(curve_Ej(p726, 5))
    assert format_lattice(r.T) == "A2+E8^2" and r.chi == 2
    assert str(r.mw_geometric) == "0" and r.rho_geometric == 20


@pytest.mark.parametrize("qbc", PARAM_SETS)
def test_table_rows_parameter_independent(qbc):
    params = validate_params(*qbc)
    for j, (fib, lat, mw, rho) in TABLE1_EXPECTED.items():
        r = fiber_configuration(curve_Ej(params, j))
        assert format_fibers(r.geometric_fiber_types()) == fib
        assert format_lattice(r.T) == lat
        assert str(r.mw_geometric) == mw and r.rho_geometric == rho


@pytest.mark.parametrize("qbc", PARAM_SETS)
def test_euler_budget_and_shioda_tate(qbc):
    params = validate_params(*qbc)
    total = 0
    for j in range(6):
        r = fiber_configuration(curve_Ej(params, j))
        assert r.euler_sum == 12 * r.chi
        assert r.T_rank + r.mw_geometric.rank + 2 == r.rho_geometric
        total += r.mw_geometric.rank
    assert total == 6


def test_euler_budget_sweep():
    for q in (7, 13, 19):
        for qbc in list(scan_params(q))[:3]:
            params = validate_params(*qbc)
            for n in (1, 2):
                r = fiber_configuration(weierstrass_model(params, n), with_mw=False)
                assert r.euler_sum == 12 * r.chi == 24 * n


def test_unit_rescaling_invariance(p1325):
    F = p1325.base
    for j in range(6):
        E = curve_Ej(p1325, j)
        for u in (2, 5, 11):
            Eu = WeierstrassCurve(E.A, E.B * F(u) ** 6, F)
            a = fiber_configuration(E, with_mw=False)
            b = fiber_configuration(Eu, with_mw=False)
            assert [(f.place, f.type) for f in a.fibers] == [(f.place, f.type) for f in b.fibers]


def test_non_minimal_rejected():
    F = make_field(7)
    t = RatFunc.t(F)
    E = WeierstrassCurve(RatFunc.const(0, F), t ** 6 + t ** 7, F)
    with pytest.raises(NonMinimalError):
        tate_at_place(E, Place(Poly.t(F)))


def test_unsupported_configuration():
    F = make_field(7)
    t = RatFunc.t(F)
    E = WeierstrassCurve(RatFunc.const(0, F), t * (t - 1), F)  # 2II + IV*, T = E6
    rep = fiber_configuration(E)
    assert rep.T == ("E6",) and rep.mw_geometric is None
    with pytest.raises(UnsupportedConfiguration):
        geometric_mw(rep)


def test_a_term_rejected():
    F = make_field(7)
    t = RatFunc.t(F)
    with pytest.raises(ValueError):
        tate_at_place(WeierstrassCurve(t, t, F), INFINITY)


def test_formatting():
    assert format_lattice(("E8", "A2", "E8")) == "A2+E8^2"
    assert format_lattice(()) == "0"
    assert format_fibers(["II*", "IV", "II*"]) == "IV+2II*"
    assert str(MWGroup(2, (3,))) == "Z^2+Z/3" and str(MWGroup(0)) == "0"
    assert lattice_rank("E6") == 6 and lattice_rank(None) == 0


def test_contributions():
    assert contribution("IV", True) == Fraction(2, 3)
    assert contribution("IV", False) == Fraction(1, 3)
    assert contribution("IV*", True) == Fraction(4, 3)
    assert contribution("I0*", False) == Fraction(1, 2)
    assert contribution("II*", True) == 0
    with pytest.raises(ValueError):
        contribution("I3", True)
