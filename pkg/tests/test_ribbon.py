"""
Ribbon germs of A3 conjugates of {s1}
"""

import pytest

from src.core.category_engine import Category
from src.core.coxeter import coxeter_preset
from src.core.germ_core import check_locally_garside, germ_atoms, right_simplification_witness
from src.core.ribbon import (
    RibbonObject,
    build_ribbon_germ,
    ribbon_atoms,
    ribbon_element_of,
    ribbon_nf_stays_ribbon,
    ribbon_orbit,
    spherical_garside,
)
from src.utils.error_handler import InfiniteWithoutBound, MalformedSpec


@pytest.fixture(scope="module")
def a3():
    return coxeter_preset("A3")


@pytest.fixture(scope="module")
def ribbon(a3):
    return build_ribbon_germ(a3, a3.generators(["s1"]))


def test_orbit_of_a_single_generator(a3):
    orbit = ribbon_orbit(a3, a3.generators(["s1"]))
    assert orbit == tuple(RibbonObject(a3.generators([s])) for s in ("s1", "s2", "s3"))


def test_orbit_of_a_pair(a3):
    orbit = ribbon_orbit(a3, a3.generators(["s1", "s2"]))
    assert set(orbit) == {RibbonObject(a3.generators(["s1", "s2"])), RibbonObject(a3.generators(["s2", "s3"]))}


def test_ribbon_germ_is_locally_garside(ribbon):
    assert len(ribbon.germ.objects) == 3
    assert check_locally_garside(ribbon.germ, "assume").passed
    assert right_simplification_witness(ribbon.germ) is None


def test_atoms_match_germ_atoms(ribbon):
    assert set(ribbon_atoms(ribbon)) == set(germ_atoms(ribbon.germ))


def test_conjugating_element_is_present(ribbon, a3):
    # s2s1 conjugates {s2} to {s1}: (s2s1)·s2·(s1s2) = s1
    e = ribbon_element_of(ribbon, a3.generators(["s1"]), a3.element_from_labels("s2 s1"),
                          a3.generators(["s2"]))
    assert ribbon.describe(ribbon.elements[e]) == "({s1}, s2s1, {s2})"


def test_missing_element_refused(ribbon, a3):
    with pytest.raises(MalformedSpec):
        ribbon_element_of(ribbon, a3.generators(["s1"]), a3.element_from_labels("s1"),
                          a3.generators(["s1"]))


def test_spherical_delta(ribbon, a3):
    gs = spherical_garside(ribbon)
    start = ribbon.object_id(RibbonObject(a3.generators(["s1"])))
    delta = ribbon.elements[gs.delta_element[start]]
    assert delta.w.length == 5
    assert delta.target == RibbonObject(a3.generators(["s3"]))
    assert gs.phi_obj[start] == ribbon.object_id(RibbonObject(a3.generators(["s3"])))


def test_normal_forms_stay_ribbon(ribbon):
    category = Category(ribbon.germ)
    for source in range(len(ribbon.orbit)):
        for m in category.enumerate_morphisms(source, 3):
            assert ribbon_nf_stays_ribbon(ribbon, m).passed


def test_infinite_group_refused():
    affine = coxeter_preset("A~1")
    with pytest.raises(InfiniteWithoutBound):
        build_ribbon_germ(affine, [0])
