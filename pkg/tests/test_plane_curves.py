import pytest
from hypothesis import given, strategies as st

from twistfm import plane_curves as pc
from twistfm.errors import InputError
from twistfm.plane_curves import PlaneCurveClass


def test_sextic_dual():
    dual = pc.dual_curve(PlaneCurveClass(6))
    assert (dual.degree, dual.cusps, dual.nodes) == (30, 72, 324)
    assert pc.dual_degree(dual) == 6
    assert pc.geometric_genus(dual) == pc.geometric_genus(PlaneCurveClass(6)) == 10


@pytest.mark.parametrize("d, bitangents, flexes", [(3, 0, 9), (4, 28, 24), (5, 120, 45)])
def test_classical_counts(d, bitangents, flexes):
    c = PlaneCurveClass(d)
    assert pc.dual_nodes(c) == bitangents
    assert pc.dual_cusps(c) == flexes


@given(st.integers(2, 40))
def test_biduality_and_genus_for_smooth_curves(d):
    c = PlaneCurveClass(d)
    dual = pc.dual_curve(c)
    assert pc.dual_degree(dual) == d
    assert pc.dual_cusps(dual) == 0  # a smooth curve has no cusps, so its dual has no flexes
    assert pc.geometric_genus(dual) == pc.geometric_genus(c)


def test_singular_curves():
    nodal_cubic = PlaneCurveClass(3, nodes=1)
    assert pc.dual_degree(nodal_cubic) == 4
    assert pc.dual_cusps(nodal_cubic) == 3
    cuspidal_cubic = PlaneCurveClass(3, cusps=1)
    assert pc.dual_degree(cuspidal_cubic) == 3
    with pytest.raises(InputError):
        pc.dual_nodes(nodal_cubic)


def test_curve_euler():
    # a nodal cubic is a sphere with two points identified
    assert pc.nodal_curve_euler(PlaneCurveClass(3, nodes=1)) == 1
    assert pc.nodal_curve_euler(PlaneCurveClass(3, cusps=1)) == 2
    assert pc.nodal_curve_euler(PlaneCurveClass(3)) == 0


def test_invalid_classes():
    with pytest.raises(InputError):
        PlaneCurveClass(3, nodes=2)
    with pytest.raises(InputError):
        PlaneCurveClass(0)
    with pytest.raises(InputError):
        pc.dual_degree(PlaneCurveClass(1))


def test_branch_genus():
    assert pc.branch_genus_check(6) == 2
    with pytest.raises(InputError):
        pc.branch_genus_check(5)


def test_sextic_stratification():
    strat = pc.stratify_sextic()
    assert [s.base_euler for s in strat.strata] == [345, -738, 72, 324]
    assert strat.euler == pc.P2_EULER
    assert strat.by_type(4).count == 324 and strat.by_type(3).count == 72
    assert [s.base_dimension for s in strat.strata] == [2, 1, 0, 0]
    # the dual curve: χ = 2 - 2g - nodes
    assert pc.nodal_curve_euler(pc.dual_curve(PlaneCurveClass(6))) == 2 - 20 - 324
