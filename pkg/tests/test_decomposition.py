"""
Path germs, the padded category and decomposition posets over A2
"""

import pytest

from src.core.decomposition import (
    DecompositionPoset,
    PathObject,
    batch_check_simply_connected,
    build_Eg,
    build_Pn_germ,
    check_simply_connected,
    decide_grid_morphism,
    grid_alpha,
    grid_divides,
    grid_from_columns,
    morphism_columns,
    nf_object,
    order_complex_h1,
    pbullet_columns,
    pbullet_compose,
    pbullet_unique_morphism,
    tietze_trivializes,
    unique_morphism_to_nf,
)
from src.core.germ_core import germ_endomap
from src.utils.error_handler import MalformedSpec, NoMorphism, TooLarge

ONE, A, B, AB, BA, ABA = range(6)
SWAP = [0, 2, 1, 4, 3, 5]


def path(*entries):
    return PathObject(tuple(entries))


class TestGrids:
    def test_grid_from_columns(self, a2_germ):
        grid = grid_from_columns(a2_germ, path(A, B), (ONE, B, ONE))
        assert grid.target == path(AB, ONE)

    def test_column_not_a_divisor(self, a2_germ):
        assert grid_from_columns(a2_germ, path(A, B), (B, ONE, ONE)) is None
        assert grid_from_columns(a2_germ, path(A), (ONE,)) is None


class TestPathGerms:
    @pytest.mark.parametrize("n, variant", [(0, "full"), (1, "sideways"), (1, "F")])
    def test_bad_arguments(self, a2_germ, n, variant):
        with pytest.raises(MalformedSpec):
            build_Pn_germ(a2_germ, n, variant)

    def test_full_variant_head(self, a2_germ):
        pn = build_Pn_germ(a2_germ, 1, "full")
        assert len(pn.objects) == len(a2_germ)
        grid = grid_from_columns(a2_germ, path(A), (A, B))
        m = pn.morphism([grid])
        assert pn.two_sided
        assert grid_alpha(pn, m) == grid
        assert [pn.base_category.format(c) for c in morphism_columns(pn, m)] == ["[a]", "[b]"]
        assert grid_divides(pn, pn.category.identity(m.source), m)

    def test_id_variant_reaches_normal_form(self, a2_germ, a2):
        pn = build_Pn_germ(a2_germ, 2, "id", base_category=a2)
        source = path(A, B)
        steps = unique_morphism_to_nf(a2, source)
        m = pn.morphism(steps)
        assert m.source == pn.object_id(source)
        assert m.target == pn.object_id(path(AB, ONE))
        assert pn.morphism([], source).is_identity

    def test_f_variant_columns_follow_the_endomap(self, a2_germ):
        endomap = germ_endomap(a2_germ, [0], SWAP)
        pn = build_Pn_germ(a2_germ, 1, "F", endomap)
        assert pn.grids
        for grid in pn.grids:
            assert grid.columns[-1] == endomap(grid.columns[0])


class TestNormalFormObjects:
    @pytest.mark.parametrize("entries, expected", [
        ((A, B, A), (ABA, ONE, ONE)),
        ((A, B), (AB, ONE)),
        ((A, A), (A, A)),
        ((ONE, A), (A, ONE)),
    ])
    def test_nf_object(self, a2, entries, expected):
        assert nf_object(a2, PathObject(entries)) == PathObject(expected)

    def test_decide_single_step(self, a2):
        steps = decide_grid_morphism(a2, path(A, B), path(AB, ONE))
        assert [grid.columns for grid in steps] == [(ONE, B, ONE)]

    def test_decide_no_morphism(self, a2):
        assert decide_grid_morphism(a2, path(A, B), path(B, A)) is None
        assert decide_grid_morphism(a2, path(AB, ONE), path(A, B)) is None

    def test_morphism_to_nf_always_exists(self, a2):
        for x in range(1, 6):
            for y in a2.germ.from_object[0]:
                source = path(x, y)
                steps = unique_morphism_to_nf(a2, source)
                end = steps[-1].target if steps else source
                assert end == nf_object(a2, source)


class TestPBullet:
    def test_padding(self, a2):
        m = pbullet_unique_morphism(a2, path(A, B), path(AB, ONE, ONE))
        assert m.padding == 1
        assert [a2.format(c) for c in pbullet_columns(a2, m)] == ["[]", "[b]", "[]", "[]"]

    def test_composition_is_the_unique_morphism(self, a2):
        first = pbullet_unique_morphism(a2, path(A, B), path(AB, ONE))
        second = pbullet_unique_morphism(a2, path(AB, ONE), path(AB, ONE, ONE))
        assert pbullet_compose(a2, first, second) == pbullet_unique_morphism(a2, path(A, B), path(AB, ONE, ONE))

    def test_shorter_target(self, a2):
        with pytest.raises(NoMorphism):
            pbullet_unique_morphism(a2, path(A, B), path(AB))

    def test_different_products(self, a2):
        with pytest.raises(NoMorphism):
            pbullet_unique_morphism(a2, path(A), path(B))

    def test_equal_products_without_degree_zero_map(self, a2):
        with pytest.raises(NoMorphism):
            pbullet_unique_morphism(a2, path(AB, ONE), path(A, B))

    def test_not_composable(self, a2):
        first = pbullet_unique_morphism(a2, path(A, B), path(AB, ONE))
        with pytest.raises(MalformedSpec):
            pbullet_compose(a2, first, first)


class TestDecompositionPosets:
    def test_delta_poset(self, a2):
        poset = build_Eg(a2, a2.parse("a b a"))
        assert len(poset.vertices) == 7
        assert len(poset.covers) == 8
        assert poset.export_lines()[0] == "v 0 (aba)"
        assert poset.extremal_vertex() == 0

    def test_delta_poset_is_a_cone(self, a2):
        report = check_simply_connected(build_Eg(a2, a2.parse("a b a")))
        assert report.connected
        assert report.h1_rank == 0
        assert report.pi1_certificate == "cone"
        assert report.consistent

    def test_identity_refused(self, a2):
        with pytest.raises(MalformedSpec):
            build_Eg(a2, a2.identity(0))

    def test_budget(self, a2):
        with pytest.raises(TooLarge):
            build_Eg(a2, a2.parse("a b a"), budget=2)

    def test_crown_has_a_loop(self, a2):
        crown = DecompositionPoset(a2.parse("a"), ((A,), (B,), (AB,), (BA,)),
                                   ((0, 2), (0, 3), (1, 2), (1, 3)), ("x0", "x1", "y0", "y1"))
        report = check_simply_connected(crown)
        assert report.connected
        assert report.h1_rank == 1
        assert report.pi1_certificate is None
        assert not report.consistent

    def test_batch_keeps_order(self, a2):
        morphisms = [a2.parse("a b a"), a2.parse("a a"), a2.parse("a b a b")]
        results = batch_check_simply_connected(a2, morphisms, workers=2)
        assert [m for m, _ in results] == morphisms
        assert all(report.consistent for _, report in results)


class TestHomology:
    def test_crown_h1(self):
        assert order_complex_h1([(0, 2), (0, 3), (1, 2), (1, 3)]) == (1, ())

    def test_chain_h1(self):
        assert order_complex_h1([(0, 1), (0, 2), (1, 2)]) == (0, ())

    def test_tietze(self):
        assert tietze_trivializes(1, [[(0, 1)]])
        assert tietze_trivializes(2, [[(0, 1), (1, -1)], [(1, 1)]])
        assert not tietze_trivializes(1, [])
        assert not tietze_trivializes(2, [[(0, 1), (1, 1), (0, -1), (1, -1)]])


class TestDeskScaleSuite:
    def test_posets_up_to_nu_three(self, a2):
        checked = 0
        for g in a2.enumerate_morphisms(0, 3):
            if g.is_identity or len(a2.atom_factorization(g)) > 5:
                continue
            report = check_simply_connected(build_Eg(a2, g))
            assert report.connected, a2.format(g)
            assert report.h1_rank == 0, a2.format(g)
            checked += 1
        assert checked > 0

    @pytest.mark.parametrize("n", [1, 2])
    def test_columns_multiply(self, a2_germ, n):
        pn = build_Pn_germ(a2_germ, n, "full")
        base = pn.base_category
        for (i, j), k in pn.germ.product.items():
            first = morphism_columns(pn, pn.category.element(i))
            second = morphism_columns(pn, pn.category.element(j))
            product = morphism_columns(pn, pn.category.element(k))
            assert product == tuple(base.multiply(x, y) for x, y in zip(first, second))

    def test_grid_divisibility_is_componentwise(self, a2_germ):
        pn = build_Pn_germ(a2_germ, 1, "full")
        category = pn.category
        for f in range(len(pn.grids)):
            for g in pn.germ.from_object[pn.germ.source(f)]:
                x, y = category.element(f), category.element(g)
                assert grid_divides(pn, x, y) == category.divides_left(x, y)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_id_variant_has_at_most_one_arrow(self, a2_germ, n):
        pn = build_Pn_germ(a2_germ, n, "id")
        ends = [(grid.source, grid.target) for grid in pn.grids]
        assert len(ends) == len(set(ends))

    def test_every_path_of_length_three_reaches_its_normal_form(self, a2):
        for x in range(6):
            for y in range(6):
                for z in range(6):
                    source = path(x, y, z)
                    steps = unique_morphism_to_nf(a2, source)
                    end = steps[-1].target if steps else source
                    assert end == nf_object(a2, source)
