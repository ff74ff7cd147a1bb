"""Newton-graph predicates and self-duality."""

import pytest

from conftest import (build_chiral, build_efail_n2, build_grid4,
                      build_loop_map, build_sphere_n2)
from newtonmaps import (EWitness, check_degree_bounds, check_e_property,
                        is_newton, is_self_dual, self_duality)


def test_n2_is_newton(n2):
    rep = is_newton(n2, 2)
    assert rep.order == 2
    assert rep.connected
    assert rep.cellular_toroidal
    assert rep.loopless
    assert rep.e_property.holds
    assert rep.e_property.witness is None
    assert rep.degree_bounds
    assert rep.a_property_status == "always-holds"
    assert rep.verdict == "newton"


def test_case1_case3_are_newton(case1, case3):
    for m in (case1, case3):
        rep = is_newton(m, 3)
        assert rep.verdict == "newton"
        assert rep.a_property_status == "implied-by-E"


def test_e_property_witness():
    m = build_efail_n2()
    rep = check_e_property(m)
    assert not rep.holds
    assert not rep
    assert rep.witness == EWitness(walk_index=0, repeated_edge="a")
    full = is_newton(m, 2)
    assert full.cellular_toroidal
    assert full.loopless
    assert not full.e_property.holds
    # the doubled edge stretches one walk past the face-degree cap
    assert not full.degree_bounds
    assert full.verdict == "not-newton"


def test_e_property_passes(n2, case1):
    assert check_e_property(n2)
    assert check_e_property(case1).witness is None


def test_sphere_is_not_newton():
    rep = is_newton(build_sphere_n2(), 2)
    assert rep.connected
    assert not rep.cellular_toroidal
    assert rep.verdict == "not-newton"


def test_loop_map_is_not_newton():
    rep = is_newton(build_loop_map(), 2)
    assert not rep.loopless
    assert rep.verdict == "not-newton"


def test_wrong_order_is_not_newton(case1):
    rep = is_newton(case1, 2)
    assert not rep.cellular_toroidal
    assert rep.verdict == "not-newton"


def test_invalid_map_short_circuits():
    from newtonmaps import EmbeddedMap
    bad = EmbeddedMap(("u",), ("a",), (0, 1), (0, 1), ("u", "u"))
    rep = is_newton(bad, 1)
    assert not rep.connected
    assert rep.verdict == "not-newton"


def test_order4_is_e_only():
    rep = is_newton(build_grid4(), 4)
    assert rep.cellular_toroidal
    assert rep.loopless
    assert rep.e_property.holds
    assert rep.degree_bounds
    assert rep.a_property_status == "unavailable"
    assert rep.verdict == "e-only"


def test_degree_bounds(n2, case1):
    assert check_degree_bounds(n2, 2)
    assert check_degree_bounds(case1, 3)
    # against the wrong order the caps and sums cannot both work out
    assert not check_degree_bounds(n2, 1)
    assert not check_degree_bounds(case1, 2)


def test_self_duality_senses(case1, case3):
    sd = self_duality(case3)
    assert sd.reflective and sd.orientation_preserving
    sd = self_duality(case1)
    assert not sd.reflective and not sd.orientation_preserving
    assert is_self_dual(case3)
    assert not is_self_dual(case1)


def test_self_duality_chiral_class():
    m = build_chiral()
    sd = self_duality(m)
    assert sd.reflective
    assert not sd.orientation_preserving
    assert is_self_dual(m)
    assert not is_self_dual(m, allow_reflection=False)


def test_self_duality_requires_newton_verdict():
    with pytest.raises(ValueError, match="not-newton"):
        self_duality(build_sphere_n2())
    with pytest.raises(ValueError, match="e-only"):
        is_self_dual(build_grid4())
