"""
Normal forms, products, divisibility and lattice operations of C(P),
cross-checked against the enumeration oracle
"""

from itertools import product as cartesian

import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from conftest import GERMS
from src.core.category_engine import Category, Morphism, RawPath, path_from_labels
from src.core.germ_core import ContractionClasses, germ_automorphism
from src.utils.error_handler import MalformedSpec, NotADivisor, SourceTargetMismatch
from src.utils.germ_io import load_germ_file

A2_GERM = load_germ_file(GERMS / "a2.germ")
A2 = Category(A2_GERM)
SHORT = A2.enumerate_morphisms(0, 2)
MEDIUM = A2.enumerate_morphisms(0, 3)
ORACLE = A2.enumerate_morphisms(0, 6)
CLASSES = ContractionClasses(A2_GERM, 6)

morphisms = st.sampled_from(SHORT)
medium_morphisms = st.sampled_from(MEDIUM)


def nf(text: str) -> Morphism:
    return A2.parse(text)


@pytest.fixture(scope="module")
def multiples_in_oracle():
    return {m: frozenset(i for i, o in enumerate(ORACLE) if A2.divides_left(m, o)) for m in MEDIUM}


@pytest.fixture(scope="module")
def divisors_in_medium():
    return {m: frozenset(d for d in MEDIUM if A2.divides_left(d, m)) for m in MEDIUM}


class TestNormalForm:
    @pytest.mark.parametrize("word, expected", [
        ("a b a", "[aba]"),
        ("b a b", "[aba]"),
        ("a a b", "[a,ab]"),
        ("a b a b", "[aba,b]"),
        ("ab a", "[aba]"),
        ("a", "[a]"),
    ])
    def test_examples(self, word, expected):
        assert A2.format(nf(word)) == expected

    def test_empty_word_needs_source(self):
        with pytest.raises(MalformedSpec):
            path_from_labels(A2_GERM, "")
        assert A2.parse("", 0).is_identity

    def test_unknown_letter(self):
        with pytest.raises(MalformedSpec):
            A2.parse("a c")

    def test_constant_on_contraction_classes(self):
        for members in CLASSES.classes().values():
            forms = {A2.normal_form(RawPath(start, word)) for start, word in members}
            assert len(forms) == 1

    def test_nu_bounds_every_path(self):
        for members in CLASSES.classes().values():
            form = A2.normal_form(RawPath(*members[0]))
            for _, word in members:
                assert form.nu <= len(word)
                if A2.is_normal_sequence(word):
                    assert form.factors == word

    def test_local_characterization(self):
        letters = A2_GERM.non_identities()
        for length in (1, 2, 3):
            for factors in cartesian(letters, repeat=length):
                if A2.is_normal_sequence(factors):
                    assert A2.from_factors(0, factors).factors == factors
                else:
                    with pytest.raises(MalformedSpec):
                        A2.from_factors(0, factors)


class TestEnumeration:
    @pytest.mark.parametrize("max_len, count", [(0, 1), (1, 6), (2, 19)])
    def test_counts(self, max_len, count):
        assert len(A2.enumerate_morphisms(0, max_len)) == count

    def test_sorted_by_length(self):
        assert [m.nu for m in SHORT] == sorted(m.nu for m in SHORT)


class TestProducts:
    @hyp.given(u=morphisms, v=morphisms, w=morphisms)
    def test_associative(self, u, v, w):
        assert A2.multiply(A2.multiply(u, v), w) == A2.multiply(u, A2.multiply(v, w))

    @hyp.given(u=medium_morphisms, v=medium_morphisms)
    def test_alpha_recursion(self, u, v):
        head = A2.element(A2.alpha(v))
        assert A2.alpha(A2.multiply(u, v)) == A2.alpha(A2.multiply(u, head))

    @hyp.given(u=medium_morphisms, v=medium_morphisms)
    def test_omega_recursion(self, u, v):
        head = A2.element(A2.alpha(v))
        expected = A2.multiply(A2.omega(A2.multiply(u, head)), A2.omega(v))
        assert A2.omega(A2.multiply(u, v)) == expected

    @hyp.given(u=medium_morphisms, v=medium_morphisms)
    def test_right_factors_do_not_grow_nu(self, u, v):
        assert v.nu <= A2.multiply(u, v).nu

    def test_identity_alpha(self):
        assert A2.alpha(A2.identity(0)) == A2_GERM.identity_of[0]

    def test_alpha_omega_of_aab(self):
        m = nf("a a b")
        assert A2_GERM.label(A2.alpha(m)) == "a"
        assert A2.format(A2.omega(m)) == "[ab]"

    def test_mismatched_sources(self, counter):
        a, s = counter.parse("a"), counter.parse("s")
        with pytest.raises(SourceTargetMismatch):
            counter.multiply(s, a)


class TestDivisibility:
    def test_examples(self):
        assert A2.divides_left(nf("a b"), nf("a b a"))
        assert A2.format(A2.left_quotient(nf("a b"), nf("a b a"))) == "[a]"
        assert not A2.divides_left(nf("a b"), nf("a a b"))

    def test_not_a_divisor(self):
        with pytest.raises(NotADivisor):
            A2.left_quotient(nf("b"), nf("a"))

    @hyp.given(x=morphisms, y=morphisms)
    def test_quotient_multiplies_back(self, x, y):
        xy = A2.multiply(x, y)
        assert A2.divides_left(x, xy)
        assert A2.left_quotient(x, xy) == y

    def test_left_cancellation(self):
        for x in MEDIUM:
            seen = {}
            for y in MEDIUM:
                if y.source != x.target:
                    continue
                z = seen.setdefault(A2.multiply(x, y), y)
                assert z == y, (A2.format(x), A2.format(y), A2.format(z))


class TestLattice:
    def test_examples(self, counter):
        assert A2.format(A2.lcm([nf("a"), nf("b")])) == "[aba]"
        assert A2.format(A2.gcd([nf("ab"), nf("aba")])) == "[ab]"
        assert A2.gcd([nf("a"), nf("b")]).is_identity
        assert counter.format(counter.lcm([counter.parse("a"), counter.parse("b")])) == "[c]"
        assert counter.lcm([counter.parse("s"), counter.parse("t")]) is None

    def test_singleton_family(self):
        x = nf("a b")
        assert A2.lcm([x]) == x
        assert A2.gcd([x, x]) == x

    def test_empty_family(self):
        with pytest.raises(MalformedSpec):
            A2.lcm([])

    def test_lcm_matches_oracle(self, multiples_in_oracle):
        for x, y in cartesian(MEDIUM, MEDIUM):
            if x.source != y.source:
                continue
            joined = A2.lcm([x, y])
            assert joined is not None
            assert A2.divides_left(x, joined) and A2.divides_left(y, joined)
            common = multiples_in_oracle[x] & multiples_in_oracle[y]
            assert common <= multiples_in_oracle[joined], (A2.format(x), A2.format(y))

    def test_gcd_matches_oracle(self, divisors_in_medium):
        for x, y in cartesian(MEDIUM, MEDIUM):
            if x.source != y.source:
                continue
            common = A2.gcd([x, y])
            assert A2.divides_left(common, x) and A2.divides_left(common, y)
            shared = divisors_in_medium[x] & divisors_in_medium[y]
            assert shared <= divisors_in_medium[common], (A2.format(x), A2.format(y))


class TestOracleProbes:
    def test_counterexample_has_two_minimal_multiples(self, counter):
        family = [counter.parse("a"), counter.parse("b")]
        minimal = counter.minimal_common_multiples(family, counter.germ.object("X"), 3)
        assert sorted(counter.format(m) for m in minimal) == ["[c,u]", "[c,v]"]
        assert not counter.divides_left(minimal[0], minimal[1])
        assert not counter.divides_left(minimal[1], minimal[0])

    def test_probe_reports_the_pair(self, counter):
        probes = counter.probe_endomorphism_lcms(3)
        assert len(probes) == 1
        probe = probes[0]
        assert counter.germ.labels(probe.pair) == ("a", "b")
        assert counter.germ.object_name(probe.target) == "X"

    def test_a2_has_no_probe(self):
        assert A2.probe_endomorphism_lcms(3) == []


class TestAtoms:
    def test_category_atoms(self):
        assert A2.format_all(A2.category_atoms(0)) == "[a] [b]"

    def test_atom_factorization(self):
        assert A2_GERM.labels(A2.atom_factorization(nf("a b a"))) == ("a", "b", "a")
        assert A2.atom_factorization(A2.identity(0)) == ()

    @hyp.given(m=medium_morphisms)
    def test_factorization_multiplies_back(self, m):
        atoms = [A2.element(a) for a in A2.atom_factorization(m)]
        assert A2.product([A2.identity(0)] + atoms) == m

    def test_fixed_atoms_from_orbits(self):
        sigma = germ_automorphism(A2_GERM, [0], [0, 2, 1, 4, 3, 5])
        assert A2.format_all(A2.fixed_atoms_from_orbits(sigma)) == "[aba]"
