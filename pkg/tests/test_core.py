import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowsets.core import (
    ChoiceFunction,
    ColoredFamily,
    Graph,
    GroundSet,
    InstanceError,
    LatinSquare,
    Matching,
    Network,
    Transversal,
    WeightMap,
    family_union,
    find_bipartition,
    is_rainbow,
    matching_check,
    max_matching,
    transversal_check,
)

from oracles import brute_max_matching


def fam(ground: int, *sets) -> ColoredFamily:
    return ColoredFamily(GroundSet(ground), tuple(frozenset(s) for s in sets))


class TestFamilyUnion:
    def test_direct_union(self):
        f = fam(2, {0}, {0, 1})
        assert family_union(f, {0, 1}) == {0, 1}

    def test_empty_union(self):
        assert family_union(fam(1, {0}), set()) == frozenset()

    def test_three_sets(self):
        f = fam(3, {0, 1}, {1, 2}, {0, 2})
        assert family_union(f, {1, 2}) == {0, 1, 2}

    def test_index_out_of_range(self):
        with pytest.raises(InstanceError):
            family_union(fam(1, {0}), {3})

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_monotone(self, data):
        ground = data.draw(st.integers(1, 6))
        k = data.draw(st.integers(1, 4))
        sets = [
            data.draw(st.frozensets(st.integers(0, ground - 1), max_size=ground))
            for _ in range(k)
        ]
        f = fam(ground, *sets)
        small = data.draw(st.frozensets(st.integers(0, k - 1), max_size=k))
        big = small | data.draw(st.frozensets(st.integers(0, k - 1), max_size=k))
        assert family_union(f, small) <= family_union(f, big)


class TestIsRainbow:
    def test_singleton(self):
        assert is_rainbow(fam(1, {0}), ChoiceFunction(((0, 0),)))

    def test_injectivity_violated(self):
        assert not is_rainbow(fam(1, {0}, {0}),
                              ChoiceFunction(((0, 0), (1, 0))))

    def test_disjoint_assignment(self):
        f = fam(2, {0, 1}, {0})
        assert is_rainbow(f, ChoiceFunction(((0, 1), (1, 0))))

    def test_malformed_color_is_false(self):
        assert not is_rainbow(fam(1, {0}), ChoiceFunction(((5, 0),)))

    def test_membership_violation(self):
        assert not is_rainbow(fam(2, {0}), ChoiceFunction(((0, 1),)))

    def test_image_size_equals_domain_size(self):
        f = fam(3, {0, 1}, {1, 2}, {2})
        cf = ChoiceFunction(((0, 0), (1, 1), (2, 2)))
        assert is_rainbow(f, cf)
        assert len(cf.image) == len(cf.domain)


class TestMatching:
    def test_shared_vertex(self):
        g = Graph(3, ((0, 1), (1, 2)))
        assert not matching_check(g, {0, 1})

    def test_empty(self):
        assert matching_check(Graph(3, ((0, 1),)), set())

    def test_c4_opposite_edges(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
        assert matching_check(g, {0, 2})

    def test_unknown_edge_id(self):
        with pytest.raises(InstanceError):
            matching_check(Graph(2, ((0, 1),)), {7})

    def test_matching_of_validates(self):
        g = Graph(3, ((0, 1), (1, 2)))
        with pytest.raises(InstanceError):
            Matching.of(g, {0, 1})


class TestMaxMatching:
    def test_c4(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
        assert len(max_matching(g)) == 2

    def test_c5(self):
        g = Graph(5, tuple((i, (i + 1) % 5) for i in range(5)))
        assert len(max_matching(g)) == 2

    def test_k4(self):
        g = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
        assert len(max_matching(g)) == 2  # == brute_max_matching(g)

    def test_result_is_matching(self):
        g = Graph(6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)))
        m = max_matching(g)
        assert matching_check(g, m.edges)

    def test_brute_force_agreement_small_graphs(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(2, 8)
            edges = []
            for _ in range(rng.randint(0, 10)):
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v:
                    edges.append((u, v))
            g = Graph(n, tuple(edges))
            assert len(max_matching(g)) == brute_max_matching(g)


class TestGraphValidation:
    def test_endpoint_out_of_range(self):
        with pytest.raises(InstanceError):
            Graph(2, ((0, 2),))

    def test_loop_rejected(self):
        with pytest.raises(InstanceError):
            Graph(2, ((1, 1),))

    def test_bipartition_must_cross(self):
        with pytest.raises(InstanceError):
            Graph(2, ((0, 1),), (frozenset({0, 1}), frozenset()))

    def test_find_bipartition(self):
        assert find_bipartition(Graph(3, ((0, 1), (1, 2), (2, 0)))) is None
        sides = find_bipartition(Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0))))
        assert sides is not None and {0, 2} in (set(sides[0]), set(sides[1]))


class TestNetworkValidation:
    def test_edge_into_source(self):
        with pytest.raises(InstanceError, match="enters a source"):
            Network(2, ((1, 0),), frozenset({0}), frozenset({1}))

    def test_edge_out_of_target(self):
        with pytest.raises(InstanceError, match="leaves a target"):
            Network(3, ((1, 0),), frozenset({2}), frozenset({1}))

    def test_terminals_disjoint(self):
        with pytest.raises(InstanceError):
            Network(2, (), frozenset({0}), frozenset({0}))

    def test_inner_vertices(self):
        net = Network(4, ((0, 1), (1, 3)), frozenset({0}), frozenset({3}))
        assert net.inner == {1, 2}


class TestWeightMap:
    def test_negative_rejected(self):
        with pytest.raises(InstanceError):
            WeightMap((1, -2))

    def test_total(self):
        w = WeightMap((3, 0, 4))
        assert w.total([0, 2]) == 7


class TestLatin:
    def test_row_repeat_names_cell(self):
        with pytest.raises(InstanceError, match=r"latin\[0\]\[1\]"):
            LatinSquare(2, ((1, 1), (2, 2)))

    def test_column_repeat_names_cell(self):
        with pytest.raises(InstanceError, match=r"latin\[1\]\[0\]"):
            LatinSquare(2, ((1, 2), (1, 2)))

    def test_valid_square(self):
        sq = LatinSquare(2, ((1, 2), (2, 1)))
        assert sq.entry(1, 0) == 2

    def test_transversal_check(self):
        sq = LatinSquare(3, ((1, 2, 3), (2, 3, 1), (3, 1, 2)))
        assert transversal_check(sq, {(0, 0), (1, 1), (2, 2)})
        assert not transversal_check(sq, {(0, 0), (1, 2)})  # symbol repeat

    def test_transversal_of(self):
        sq = LatinSquare(2, ((1, 2), (2, 1)))
        with pytest.raises(InstanceError):
            Transversal.of(sq, {(0, 0), (1, 1)})
