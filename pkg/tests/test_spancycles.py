import itertools
import random

import pytest

from rainbowsets.core import Graph, HypothesisViolation, InstanceError
from rainbowsets.matroids import free_matroid, uniform_matroid
from rainbowsets.spancycles import (
    augmented_vector,
    cooperative_odd_cycle_check,
    edge_vectors,
    is_bipartite_via_span,
    rainbow_odd_cycle,
    rainbow_spanning_set,
)

from oracles import brute_is_bipartite, brute_rainbow_odd_cycle_exists


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def random_odd_cycle_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    length = rng.choice([l for l in range(3, n + 1, 2)])
    verts = rng.sample(range(n), length)
    return [(verts[i], verts[(i + 1) % length]) for i in range(length)]


def odd_cycle_instance(rng: random.Random, n: int):
    edges: list[tuple[int, int]] = []
    fams = []
    for _ in range(n):
        ids = []
        for uv in random_odd_cycle_edges(rng, n):
            ids.append(len(edges))
            edges.append(uv)
        fams.append(frozenset(ids))
    return Graph(n, tuple(edges)), fams


def check_result(g: Graph, fams, res):
    k = len(res.edges)
    assert k % 2 == 1
    assert len(set(res.colors)) == k
    assert len(set(res.vertices)) == k
    for i, e in enumerate(res.edges):
        u, v = g.edges[e]
        assert {u, v} == {res.vertices[i], res.vertices[(i + 1) % k]}
        assert e in fams[res.colors[i]]


class TestEdgeVectors:
    def test_single_edge_bits(self):
        g = Graph(2, ((0, 1),))
        v = augmented_vector(g, 0)
        assert v.bits == 0b111  # endpoint bits 0,1 plus the parity bit

    def test_triangle_sums_to_target(self):
        g = cycle_graph(3)
        total = 0
        for e in range(3):
            total ^= augmented_vector(g, e).bits
        assert total == 1 << 3

    def test_c4_sums_to_zero(self):
        g = cycle_graph(4)
        total = 0
        for e in range(4):
            total ^= augmented_vector(g, e).bits
        assert total == 0

    def test_random_odd_cycles_sum_to_target(self):
        rng = random.Random(3)
        for _ in range(60):
            n = rng.randint(3, 9)
            edges = random_odd_cycle_edges(rng, max(3, n))
            g = Graph(max(3, n), tuple(edges))
            total = 0
            for e in range(g.num_edges):
                total ^= augmented_vector(g, e).bits
            assert total == 1 << g.n

    def test_matroid_has_adjoined_target(self):
        g = cycle_graph(3)
        vectors, matroid = edge_vectors(g)
        assert matroid.ground_size == g.num_edges + 1
        assert len(vectors) == g.num_edges


class TestBipartiteViaSpan:
    def test_c4(self):
        assert is_bipartite_via_span(cycle_graph(4))

    def test_c3(self):
        assert not is_bipartite_via_span(cycle_graph(3))

    def test_empty(self):
        assert is_bipartite_via_span(Graph(3, ()))

    def test_all_graphs_on_four_vertices(self):
        pairs = list(itertools.combinations(range(4), 2))
        for mask in range(1 << len(pairs)):
            edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
            g = Graph(4, edges)
            assert is_bipartite_via_span(g) == brute_is_bipartite(g)

    def test_parallel_edges(self):
        g = Graph(2, ((0, 1), (0, 1)))
        assert is_bipartite_via_span(g)  # a doubled edge is an even cycle


class TestRainbowSpanningSet:
    def test_trivial_single_set(self):
        res = rainbow_spanning_set(free_matroid(1), {0}, [frozenset({0})])
        assert res.function.as_dict() == {0: 0}
        assert res.deficient_colors is None

    def test_full_ground_target_is_rado(self):
        m = free_matroid(3)
        res = rainbow_spanning_set(
            m, {0, 1, 2},
            [frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})],
        )
        assert len(res.function) == 3  # a rainbow base
        assert m.is_independent(res.image)

    def test_deficient_route(self):
        # two copies of the same parallel class force the cooperative route
        from rainbowsets.matroids import binary_matroid

        m = binary_matroid([0b01, 0b01, 0b10])
        res = rainbow_spanning_set(m, {1}, [frozenset({0, 1}), frozenset({0, 1})])
        assert res.deficient_colors == {0, 1}
        assert res.dropped_color == 0
        assert m.in_span(res.image, 1)

    def test_rank_exceeds_colors_rejected(self):
        with pytest.raises(HypothesisViolation, match="rank"):
            rainbow_spanning_set(free_matroid(3), {0}, [frozenset({0})])

    def test_hypothesis_violation_names_colors(self):
        m = uniform_matroid(4, 2)
        with pytest.raises(HypothesisViolation) as err:
            rainbow_spanning_set(
                m, {3}, [frozenset({0}), frozenset({0})],
            )
        assert err.value.witness == {0, 1}

    def test_output_invariants_random(self):
        rng = random.Random(5)
        from rainbowsets.matroids import binary_matroid

        for _ in range(40):
            bits = rng.randint(1, 4)
            ground = rng.randint(bits, 6)
            cols = [rng.randint(1, (1 << bits) - 1) for _ in range(ground)]
            m = binary_matroid(cols)
            n = m.rank()
            target = {rng.randrange(ground)}
            sets = [
                frozenset(x for x in range(ground) if rng.random() < 0.7) or
                frozenset({rng.randrange(ground)})
                for _ in range(n)
            ]
            try:
                res = rainbow_spanning_set(m, target, sets)
            except HypothesisViolation:
                continue
            assert m.is_independent(res.image)
            for t in target:
                assert m.in_span(res.image, t)
            for c, x in res.function.assignments:
                assert x in sets[c]


class TestRainbowOddCycle:
    def test_three_triangles(self):
        g = cycle_graph(3)
        fams = [frozenset({0, 1, 2})] * 3
        res = rainbow_odd_cycle(g, fams)
        check_result(g, fams, res)
        assert len(res) == 3

    def test_sharpness_count_violation(self):
        g = cycle_graph(5)
        with pytest.raises(HypothesisViolation):
            rainbow_odd_cycle(g, [frozenset(range(5))] * 4)

    def test_sharpness_no_rainbow_exists(self):
        g = cycle_graph(5)
        fams = [frozenset(range(5))] * 4
        assert not brute_rainbow_odd_cycle_exists(g, fams)

    def test_no_odd_cycle_in_class_rejected(self):
        g = cycle_graph(4)
        with pytest.raises(HypothesisViolation):
            rainbow_odd_cycle(g, [frozenset({0, 1, 2, 3})] * 4)

    def test_random_valid_instances(self):
        rng = random.Random(6)
        for _ in range(80):
            n = rng.randint(3, 7)
            g, fams = odd_cycle_instance(rng, n)
            res = rainbow_odd_cycle(g, fams)
            check_result(g, fams, res)

    def test_agrees_with_brute_existence(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randint(3, 5)
            g, fams = odd_cycle_instance(rng, n)
            assert brute_rainbow_odd_cycle_exists(g, fams)
            check_result(g, fams, rainbow_odd_cycle(g, fams))


class TestCooperativeOddCycle:
    def test_all_odd_cycles_specializes(self):
        rng = random.Random(8)
        g, fams = odd_cycle_instance(rng, 5)
        res = cooperative_odd_cycle_check(g, fams)
        check_result(g, fams, res)

    def test_failure_names_color_set(self):
        g = Graph(2, ((0, 1),))
        with pytest.raises(HypothesisViolation) as err:
            cooperative_odd_cycle_check(g, [frozenset({0}), frozenset({0})])
        assert err.value.witness == {0, 1}

    def test_triangle_plus_forests(self):
        # n = 3: one triangle class plus two forest classes with high rank
        edges = ((0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (0, 2), (1, 2))
        g = Graph(3, edges)
        fams = [frozenset({0, 1, 2}), frozenset({3, 4}), frozenset({5, 6})]
        res = cooperative_odd_cycle_check(g, fams)
        check_result(g, fams, res)
        assert brute_rainbow_odd_cycle_exists(g, fams)
