"""
Conjugacy category of the A2 braid monoid
"""

import pytest

from src.core.conjugacy import (
    ConjObject,
    conj_apply,
    conj_normal_form,
    conj_simples,
    conjugate_by,
    conjugating_morphisms,
    gcd_transport_report,
    is_conjugating,
    lcm_transport_report,
)
from src.utils.error_handler import MalformedSpec, NotConjugating

FAMILIES = ["a", "ab", "a b a"]


@pytest.fixture(scope="module")
def of_a(a2):
    return ConjObject((a2.parse("a"),))


class TestObjects:
    def test_empty_family(self):
        with pytest.raises(MalformedSpec):
            ConjObject(())

    def test_members_must_be_endomorphisms(self, counter):
        with pytest.raises(MalformedSpec):
            ConjObject((counter.parse("a"),))

    def test_members_share_an_object(self, counter):
        with pytest.raises(MalformedSpec):
            ConjObject((counter.parse("s"), counter.parse("a u")))


class TestConjugation:
    def test_apply(self, a2):
        assert a2.format(conj_apply(a2, a2.parse("a"), a2.parse("b a"))) == "[b]"
        assert a2.format(conj_apply(a2, a2.parse("a"), a2.parse("a"))) == "[a]"

    def test_apply_refuses_non_divisor(self, a2):
        with pytest.raises(NotConjugating):
            conj_apply(a2, a2.parse("a"), a2.parse("b"))

    def test_is_conjugating(self, a2, of_a):
        assert is_conjugating(a2, of_a, a2.parse("a b a"))
        assert not is_conjugating(a2, of_a, a2.parse("a b"))

    def test_conjugate_by(self, a2, of_a):
        arrow = conjugate_by(a2, of_a, a2.parse("a b a"))
        assert a2.format_all(arrow.target.family) == "[b]"


class TestSimples:
    def test_simples_of_a(self, a2, of_a):
        lines = [f"{a2.format(s.x)} -> {a2.format_all(s.target.family)}"
                 for s in conj_simples(a2, of_a)]
        assert lines == ["[] -> [a]", "[a] -> [a]", "[ba] -> [b]", "[aba] -> [b]"]

    def test_simples_of_a_pair(self, a2):
        pair = ConjObject((a2.parse("a"), a2.parse("b")))
        simples = conj_simples(a2, pair)
        assert [a2.format(s.x) for s in simples] == ["[]", "[aba]"]
        assert a2.format_all(simples[1].target.family) == "[b] [a]"

    def test_hom_sets_are_conjugating(self, a2, of_a):
        arrows = conjugating_morphisms(a2, of_a, 3)
        assert arrows
        for arrow in arrows:
            assert is_conjugating(a2, of_a, arrow.x)
            assert a2.multiply(a2.parse("a"), arrow.x) == a2.multiply(arrow.x, arrow.target.family[0])


class TestNormalForm:
    @pytest.mark.parametrize("word", FAMILIES)
    def test_matches_category_normal_form(self, a2, word):
        source = ConjObject((a2.parse(word),))
        for arrow in conjugating_morphisms(a2, source, 3):
            assert conj_normal_form(a2, source, arrow.x) == arrow.x

    def test_two_factor_example(self, a2, of_a):
        assert a2.format(conj_normal_form(a2, of_a, a2.parse("a a"))) == "[a,a]"

    def test_refuses_non_conjugating(self, a2, of_a):
        with pytest.raises(NotConjugating):
            conj_normal_form(a2, of_a, a2.parse("b"))


class TestTransport:
    @pytest.mark.parametrize("word", FAMILIES)
    def test_lcm_transport_holds(self, a2, word):
        source = ConjObject((a2.parse(word),))
        sample = [arrow.x for arrow in conjugating_morphisms(a2, source, 3)]
        report = lcm_transport_report(a2, source, sample)
        assert report.checked > 0
        assert report.holds

    def test_gcd_transport_is_reported(self, a2, of_a):
        sample = [arrow.x for arrow in conjugating_morphisms(a2, of_a, 2)]
        report = gcd_transport_report(a2, of_a, sample)
        assert report.operation == "gcd"
        assert report.checked == report.transported + len(report.failures)
