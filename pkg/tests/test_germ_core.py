"""
Germ construction, divisibility inside the germ and the locally Garside checks
"""

import pytest

from src.core.germ_core import (
    AxiomStatus,
    ElementSpec,
    GermSpec,
    build_germ,
    check_locally_garside,
    check_noetherian,
    fixed_subgerm,
    germ_atoms,
    germ_automorphism,
    germ_endomap,
    germ_gcd,
    germ_lcm,
    opposite_germ,
    right_simplification_witness,
    search_cancellation_violation,
    subgerm,
)
from src.utils.error_handler import (
    FNotProductPreserving,
    GermAxiomViolation,
    MalformedSpec,
    NotAnAutomorphism,
    NotClosed,
)
from src.utils.germ_io import load_germ_file


def _a2_spec(products=None) -> GermSpec:
    names = ["1", "a", "b", "ab", "ba", "aba"]
    elements = [ElementSpec(name, "A", "A", identity=(name == "1")) for name in names]
    if products is None:
        products = [("a", "b", "ab"), ("a", "ba", "aba"), ("b", "a", "ba"),
                    ("b", "ab", "aba"), ("ab", "a", "aba"), ("ba", "b", "aba")]
    return GermSpec(["A"], elements, products)


def _ids(germ, labels):
    return {germ.element(label) for label in labels}


class TestBuildGerm:
    def test_counterexample_loads(self, counter_germ):
        assert counter_germ.objects == ("X", "Y")
        assert len(counter_germ) == 9

    def test_identity_products_are_added(self, a2_germ):
        one, a = a2_germ.element("1"), a2_germ.element("a")
        assert a2_germ.multiply(one, a) == a
        assert a2_germ.multiply(a, one) == a

    def test_associativity_violation(self):
        products = [("a", "b", "ab"), ("a", "ba", "aba"), ("b", "a", "ba")]
        with pytest.raises(GermAxiomViolation):
            build_germ(_a2_spec(products))

    def test_unknown_name_in_product(self):
        with pytest.raises(MalformedSpec):
            build_germ(_a2_spec([("a", "c", "ab")]))

    def test_missing_identity(self):
        spec = GermSpec(["A"], [ElementSpec("a", "A", "A")], [])
        with pytest.raises(MalformedSpec):
            build_germ(spec)

    def test_two_identities(self):
        spec = GermSpec(["A"], [ElementSpec("1", "A", "A", True), ElementSpec("e", "A", "A", True)], [])
        with pytest.raises(MalformedSpec):
            build_germ(spec)

    def test_source_target_mismatch(self):
        spec = GermSpec(["X", "Y"],
                        [ElementSpec("1X", "X", "X", True), ElementSpec("1Y", "Y", "Y", True),
                         ElementSpec("a", "X", "Y")],
                        [("a", "a", "a")])
        with pytest.raises(MalformedSpec):
            build_germ(spec)

    def test_identity_law_clash(self):
        with pytest.raises(GermAxiomViolation):
            build_germ(_a2_spec([("1", "a", "b")]))


class TestGermDivisibility:
    def test_left_divisors_of_c(self, counter_germ):
        c = counter_germ.element("c")
        assert counter_germ.left_divisors(c) == _ids(counter_germ, ["1X", "a", "b", "c"])

    def test_lcm(self, counter_germ, a2_germ):
        g = counter_germ
        assert germ_lcm(g, g.element("a"), g.element("b")) == g.element("c")
        assert germ_lcm(g, g.element("s"), g.element("t")) is None
        assert germ_lcm(a2_germ, a2_germ.element("a"), a2_germ.element("b")) == a2_germ.element("aba")

    def test_gcd(self, a2_germ):
        g = a2_germ
        assert germ_gcd(g, [g.element("ab"), g.element("aba")]) == g.element("ab")
        assert germ_gcd(g, [g.element("ab"), g.element("ba")]) == g.element("1")

    def test_atoms(self, a2_germ, counter_germ):
        assert a2_germ.labels(germ_atoms(a2_germ)) == ("a", "b")
        assert counter_germ.labels(germ_atoms(counter_germ)) == ("a", "b", "s", "t", "u", "v")

    def test_atom_length_orders_display(self, a2_germ):
        assert [a2_germ.atom_length(e) for e in range(len(a2_germ))] == [0, 1, 1, 2, 2, 3]

    def test_alpha2_split(self, a2_germ):
        g = a2_germ
        z, t = g.alpha2_split(g.element("a"), g.element("ba"))
        assert (g.label(z), g.label(t)) == ("ba", "1")
        z, t = g.alpha2_split(g.element("ab"), g.element("ab"))
        assert (g.label(z), g.label(t)) == ("a", "b")

    def test_alpha2_associativity(self, a2, a2_germ):
        g = a2_germ
        for (x, y), xy in g.product.items():
            for z in g.from_object[g.target(y)]:
                assert a2.alpha2(xy, z) == a2.alpha2(x, a2.alpha2(y, z))


class TestAxioms:
    def test_a2_passes(self, a2_germ):
        report = check_locally_garside(a2_germ, "search", 3)
        assert report.passed
        assert report["G4"].status is AxiomStatus.PASS

    def test_counterexample_passes_with_search(self, counter_germ):
        report = check_locally_garside(counter_germ, "search", 8)
        assert report.passed
        for axiom in ("G1", "G2", "G3", "G4", "G2'", "G3'"):
            assert report[axiom].status is AxiomStatus.PASS

    def test_assumed_g4_is_reported(self, a2_germ):
        report = check_locally_garside(a2_germ, "assume")
        assert report["G4"].status is AxiomStatus.ASSUMED
        assert any("G4 assumed" in w for w in report.warnings)

    def test_noetherian_violation(self, germs_dir):
        germ = load_germ_file(germs_dir / "noetherian_violation.germ")
        verdict = check_noetherian(germ)
        assert verdict.status is AxiomStatus.FAIL
        assert verdict.witness
        assert not check_locally_garside(germ, "assume").passed

    def test_atom_level_axioms_agree(self, a2_germ, counter_germ, a3_lift):
        for germ in (a2_germ, counter_germ, a3_lift.germ):
            report = check_locally_garside(germ, "assume")
            assert report["G2'"].status is report["G2"].status
            assert report["G3'"].status is report["G3"].status

    def test_right_simplifiable_when_locally_garside(self, a2_germ, counter_germ, a3_lift):
        for germ in (a2_germ, counter_germ, a3_lift.germ):
            assert right_simplification_witness(germ) is None
            warnings = check_locally_garside(germ, "assume").warnings
            assert not any("simplifiable" in w for w in warnings)

    def test_loop_is_not_right_simplifiable(self, germs_dir):
        germ = load_germ_file(germs_dir / "noetherian_violation.germ")
        assert germ.labels(right_simplification_witness(germ)) == ("y", "y")
        report = check_locally_garside(germ, "assume")
        assert "y·y = y with y ≠ 1: not right simplifiable" in report.warnings

    def test_cancellation_violation_found(self):
        # x·y = x·1 collapses y to the identity in C(P)
        spec = GermSpec(["A"],
                        [ElementSpec("1", "A", "A", True), ElementSpec("x", "A", "A"),
                         ElementSpec("y", "A", "A")],
                        [("x", "y", "x"), ("y", "y", "y")])
        germ = build_germ(spec)
        found = search_cancellation_violation(germ, 2)
        assert found is not None
        z, x, y = found
        assert {germ.label(x), germ.label(y)} == {"1", "y"}

    def test_rows_cover_every_axiom(self, a2_germ):
        rows = check_locally_garside(a2_germ, "assume").rows()
        assert [row["axiom"] for row in rows] == ["G1", "G2", "G3", "G4", "G2'", "G3'"]

    def test_opposite_of_a2_is_locally_garside(self, a2_germ):
        assert check_locally_garside(opposite_germ(a2_germ), "assume").passed


class TestSubgerms:
    @pytest.mark.parametrize("fixture, obj, labels", [
        ("a2_germ", "A", ["1", "a"]),
        ("counter_germ", "Y", ["1Y", "s"]),
    ])
    def test_single_atom_subgerm_is_stable(self, request, fixture, obj, labels):
        germ = request.getfixturevalue(fixture)
        result = subgerm(germ, [germ.object(obj)], _ids(germ, labels))
        assert all(result.flags.values())

    def test_single_generator_of_a3_is_stable(self, a3_lift):
        cox = a3_lift.cox
        kept = [a3_lift.element_id(cox.identity), a3_lift.generator_id(cox.generator("s1"))]
        result = subgerm(a3_lift.germ, [0], kept)
        assert len(result.germ) == 2
        assert all(result.flags.values())

    def test_closed_but_missing_a_left_factor(self, a2_germ):
        # a divides ab in P but is not kept
        result = subgerm(a2_germ, [0], _ids(a2_germ, ["1", "ab"]))
        assert len(result.germ) == 2
        assert not result.stable_by_left_factors

    def test_parabolic_of_a3(self, a3_lift):
        cox = a3_lift.cox
        parabolic = cox.parabolic_elements(cox.generators(["s1", "s2"]))
        result = subgerm(a3_lift.germ, [0], [a3_lift.element_id(w) for w in parabolic])
        assert len(result.germ) == 6
        assert all(result.flags.values())

    def test_escaping_product(self, a2_germ):
        with pytest.raises(NotClosed):
            subgerm(a2_germ, [0], _ids(a2_germ, ["1", "a", "b"]))

    def test_missing_identity(self, a2_germ):
        with pytest.raises(MalformedSpec):
            subgerm(a2_germ, [0], _ids(a2_germ, ["a"]))


class TestGermMaps:
    SWAP = [0, 2, 1, 4, 3, 5]

    def test_swap_is_automorphism(self, a2_germ):
        sigma = germ_automorphism(a2_germ, [0], self.SWAP)
        assert sigma(a2_germ.element("ab")) == a2_germ.element("ba")

    def test_non_bijective_map(self, a2_germ):
        with pytest.raises(NotAnAutomorphism):
            germ_automorphism(a2_germ, [0], [0, 1, 1, 3, 4, 5])

    def test_incompatible_map(self, a2_germ):
        with pytest.raises(NotAnAutomorphism):
            germ_automorphism(a2_germ, [0], [0, 2, 1, 3, 4, 5])

    def test_fixed_subgerm(self, a2_germ):
        sigma = germ_automorphism(a2_germ, [0], self.SWAP)
        fixed = fixed_subgerm(a2_germ, sigma)
        assert fixed.germ.labels(range(len(fixed.germ))) == ("1", "aba")
        assert fixed.germ.labels(germ_atoms(fixed.germ)) == ("aba",)

    def test_endomap_preserves_lcms(self, a2_germ):
        endomap = germ_endomap(a2_germ, [0], self.SWAP)
        assert endomap.preserves_lcm

    def test_endomap_must_preserve_products(self, a2_germ):
        with pytest.raises(FNotProductPreserving):
            germ_endomap(a2_germ, [0], [0, 1, 1, 3, 4, 5])
