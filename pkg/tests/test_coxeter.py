"""
Coxeter systems, lift germs and parabolic tools
"""

import pytest

from src.core.category_engine import Category
from src.core.coxeter import (
    CoxeterSystem,
    alpha_I,
    cartan_type,
    coxeter_preset,
    diagram_automorphism,
    is_finite,
    is_I_reduced,
    lift_category,
    lift_germ,
    parabolic_conjugation_holds,
    parse_coxeter_matrix,
    root_set,
    v_alpha_I,
    w_parabolic_longest,
)
from src.core.germ_core import check_locally_garside, fixed_subgerm, germ_atoms
from src.utils.error_handler import (
    InfiniteDifference,
    InfiniteWithoutBound,
    MalformedSpec,
    NotAnAutomorphism,
    NotSpherical,
)


@pytest.fixture(scope="module")
def a3():
    return coxeter_preset("A3")


@pytest.fixture(scope="module")
def affine():
    return coxeter_preset("A~1")


class TestSystems:
    @pytest.mark.parametrize("name, types", [
        ("A2", ("A2",)), ("A3", ("A3",)), ("B3", ("B3",)), ("A~1", None),
    ])
    def test_presets(self, name, types):
        assert cartan_type(coxeter_preset(name)) == types

    def test_reducible_and_exceptional_types(self):
        assert cartan_type(parse_coxeter_matrix("1,2;2,1")) == ("A1", "A1")
        assert cartan_type(parse_coxeter_matrix("1,5,2;5,1,3;2,3,1")) == ("H3",)
        assert cartan_type(parse_coxeter_matrix("1,3,3;3,1,3;3,3,1")) is None

    def test_bad_matrix(self):
        with pytest.raises(MalformedSpec):
            CoxeterSystem([[1, 3], [2, 1]])
        with pytest.raises(MalformedSpec):
            parse_coxeter_matrix("1,x;x,1")
        with pytest.raises(MalformedSpec):
            coxeter_preset("Z9")

    @pytest.mark.parametrize("name, size, longest", [("A2", 6, 3), ("A3", 24, 6), ("B3", 48, 9)])
    def test_group_sizes(self, name, size, longest):
        cox = coxeter_preset(name)
        assert len(cox.elements()) == size
        assert w_parabolic_longest(cox, range(cox.rank)).length == longest

    def test_infinite_group_needs_bound(self, affine):
        assert not is_finite(affine)
        with pytest.raises(InfiniteWithoutBound):
            affine.elements()
        assert len(affine.elements(4)) == 9

    def test_braid_relation(self, a3):
        assert a3.element_from_labels("s1 s2 s1") == a3.element_from_labels("s2 s1 s2")
        assert a3.element_from_labels("s1 s1").length == 0
        assert a3.element_from_labels("s1 s3") == a3.element_from_labels("s3 s1")


class TestLift:
    def test_a3_lift(self, a3_lift):
        assert len(a3_lift.germ) == 24
        assert not a3_lift.germ.truncated
        assert a3_lift.germ.labels(germ_atoms(a3_lift.germ)) == ("s1", "s2", "s3")

    def test_a3_lift_is_locally_garside(self, a3_lift):
        assert check_locally_garside(a3_lift.germ, "assume").passed

    def test_truncated_affine_lift(self, affine):
        lift = lift_germ(affine, 4)
        assert len(lift.germ) == 9
        assert lift.germ.truncated

    @pytest.mark.parametrize("name", ["A2", "A3", "B3"])
    def test_product_defined_iff_lengths_add(self, name):
        lift = lift_germ(coxeter_preset(name))
        cox = lift.cox
        for x in lift.elements:
            for y in lift.elements:
                key = (lift.element_id(x), lift.element_id(y))
                assert (key in lift.germ.product) == cox.lengths_add(x, y), (cox.label(x), cox.label(y))

    def test_full_affine_lift_refused(self, affine):
        with pytest.raises(InfiniteWithoutBound):
            lift_germ(affine)

    def test_words_in_the_artin_monoid(self, a3_lift):
        category = a3_lift.category
        m = a3_lift.word_to_morphism("s1 s2 s1 s2")
        assert category.format(m) == "[s1s2s1,s2]"
        assert a3_lift.image(m) == a3_lift.cox.element_from_labels("s1 s2 s1 s2")

    def test_braid_relation_in_the_lift_category(self):
        category = lift_category(coxeter_preset("A2"))
        assert category.parse("s1 s2 s1") == category.parse("s2 s1 s2")
        assert category.parse("s1 s2") != category.parse("s2 s1")
        assert len(category.parse("s1 s2 s1").factors) == 1

    def test_lift_category_needs_a_finite_group(self, affine):
        with pytest.raises(InfiniteWithoutBound):
            lift_category(affine)


class TestParabolic:
    def test_longest_of_infinite_parabolic(self, affine):
        with pytest.raises(NotSpherical):
            w_parabolic_longest(affine, [0, 1])
        assert w_parabolic_longest(affine, [0]).word == (0,)

    def test_i_reduced(self, a3):
        s1 = a3.generators(["s1"])
        assert is_I_reduced(a3, s1, a3.element_from_labels("s2 s1"))
        assert not is_I_reduced(a3, s1, a3.element_from_labels("s1 s2"))

    def test_v_alpha_I(self, a3):
        image, v = v_alpha_I(a3, a3.generator("s2"), a3.generators(["s1"]))
        assert image == a3.generators(["s2"])
        assert a3.label(v) == "s1s2"

    def test_v_alpha_I_infinite(self, affine):
        with pytest.raises(InfiniteDifference):
            v_alpha_I(affine, 1, [0])

    def test_alpha_I(self, a3_lift):
        category = a3_lift.category
        b = a3_lift.word_to_morphism("s1 s2 s1")
        prefix, rest = alpha_I(a3_lift, a3_lift.cox.generators(["s1"]), b)
        assert category.format(prefix) == "[s1]"
        assert category.format(rest) == "[s2s1]"

    def test_parabolic_conjugation(self, a3_lift):
        cox = a3_lift.cox
        s1, s2, s3 = (cox.generators([label]) for label in ("s1", "s2", "s3"))
        b = a3_lift.word_to_morphism("s2 s1")
        assert parabolic_conjugation_holds(a3_lift, s1, b, s2)
        assert parabolic_conjugation_holds(a3_lift, s1, a3_lift.word_to_morphism("s1 s2 s1"), s2)
        assert not parabolic_conjugation_holds(a3_lift, s1, b, s3)

    def test_root_sets(self, a3):
        assert len(root_set(a3, range(3))) == 6
        assert len(root_set(a3, a3.generators(["s1", "s3"]))) == 2

    def test_reduced_elements_of_a_root_set(self, a3):
        roots = root_set(a3, a3.generators(["s1", "s3"]))
        reduced = [w for w in a3.elements() if roots.is_reduced(w)]
        assert reduced == [w for w in a3.elements() if is_I_reduced(a3, roots.subset, w)]
        assert len(reduced) == 6


class TestDiagramAutomorphism:
    def test_flip_fixed_atoms(self, a3_lift):
        sigma = diagram_automorphism(a3_lift, [2, 1, 0])
        fixed = fixed_subgerm(a3_lift.germ, sigma)
        local_atoms = {fixed.ambient(a) for a in germ_atoms(fixed.germ)}
        assert set(a3_lift.germ.labels(local_atoms)) == {"s2", "s1s3"}

        category: Category = a3_lift.category
        from_orbits = category.fixed_atoms_from_orbits(sigma)
        assert {category.format(m) for m in from_orbits} == {"[s2]", "[s1s3]"}

    def test_non_symmetry_refused(self, a3_lift):
        with pytest.raises(NotAnAutomorphism):
            diagram_automorphism(a3_lift, [1, 0, 2])
