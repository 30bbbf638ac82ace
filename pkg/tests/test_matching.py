import random

import pytest

from rainbowsets.core import (
    Graph,
    HypothesisViolation,
    InstanceError,
    TheoremViolation,
    is_rainbow,
    matching_check,
)
from rainbowsets.core import ColoredFamily, GroundSet
from rainbowsets.matching import (
    ArrowStatement,
    EdgeFamily,
    SearchSpace,
    SizeSequence,
    check_arrow_instance,
    check_sequence_instance,
    cooperative_drisko_check,
    counterexample_search,
    drisko_statement,
    max_rainbow_matching,
    random_matching_family,
    repeats_matching,
    scrambled_matching_check,
    stairs_sequence,
    validate_scrambling,
)
from rainbowsets.sweeps import COUNTEREXAMPLE, VERIFIED_RANGE

from oracles import brute_max_rainbow


def family_from_pairs(n, *color_pairs) -> EdgeFamily:
    edges = []
    colors = []
    for pairs in color_pairs:
        ids = []
        for uv in pairs:
            ids.append(len(edges))
            edges.append(tuple(uv))
        colors.append(frozenset(ids))
    return EdgeFamily(Graph(n, tuple(edges)), tuple(colors))


def eight_vertex_example() -> EdgeFamily:
    # three matchings of size 4 on two K4 blocks with no rainbow 3-matching
    return family_from_pairs(
        8,
        [(0, 1), (2, 3), (4, 5), (6, 7)],
        [(0, 2), (1, 3), (4, 6), (5, 7)],
        [(0, 3), (1, 2), (4, 7), (5, 6)],
    )


def two_c4_witness() -> EdgeFamily:
    # sizes (2,4,4) inside two disjoint 4-cycles, no rainbow 3-matching
    g = Graph(8, ((0, 1), (1, 2), (2, 3), (3, 0),
                  (4, 5), (5, 6), (6, 7), (7, 4)))
    return EdgeFamily(g, (frozenset({0, 2}), frozenset({1, 3, 4, 6}),
                          frozenset({1, 3, 5, 7})))


class TestMaxRainbowMatching:
    def test_eight_vertex_example_is_two(self):
        matching, function = max_rainbow_matching(eight_vertex_example())
        assert len(matching) == 2

    def test_single_color_single_edge(self):
        fam = family_from_pairs(2, [(0, 1)])
        matching, function = max_rainbow_matching(fam)
        assert len(matching) == 1 and function.as_dict() == {0: 0}

    def test_two_c4_witness_is_two(self):
        matching, _ = max_rainbow_matching(two_c4_witness())
        assert len(matching) == 2
        assert brute_max_rainbow(two_c4_witness()) == 2

    def test_output_is_rainbow_matching(self):
        rng = random.Random(2)
        for _ in range(150):
            fam = random_matching_family(
                rng, [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
            )
            matching, function = max_rainbow_matching(fam)
            assert matching_check(fam.graph, matching.edges)
            ground = ColoredFamily(
                GroundSet(fam.graph.num_edges), tuple(fam.colors)
            )
            assert is_rainbow(ground, function)
            assert frozenset(e for _, e in function.assignments) == matching.edges

    def test_brute_force_agreement_small_bipartite(self):
        rng = random.Random(9)
        for _ in range(120):
            sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
            if sum(sizes) > 10:
                continue
            fam = random_matching_family(rng, sizes)
            got, _ = max_rainbow_matching(fam)
            assert len(got) == brute_max_rainbow(fam)

    def test_target_early_stop(self):
        fam = eight_vertex_example()
        matching, _ = max_rainbow_matching(fam, target=1)
        assert len(matching) >= 1

    def test_general_graph_agreement(self):
        rng = random.Random(4)
        for _ in range(40):
            n = rng.randint(3, 6)
            edges, colors = [], []
            for _c in range(rng.randint(1, 3)):
                ids = []
                for _e in range(rng.randint(1, 3)):
                    u, v = rng.sample(range(n), 2)
                    ids.append(len(edges))
                    edges.append((u, v))
                colors.append(frozenset(ids))
            g = Graph(n, tuple(edges))
            cleaned = []
            for c in colors:  # keep only colors that are matchings? not needed
                cleaned.append(c)
            fam = EdgeFamily(g, tuple(cleaned))
            got, _ = max_rainbow_matching(fam)
            assert len(got) == brute_max_rainbow(fam)


class TestArrowAndSequences:
    def test_drisko_random_instance(self):
        rng = random.Random(13)
        fam = random_matching_family(rng, [3] * 5)
        assert check_arrow_instance(drisko_statement(3), fam)

    def test_eight_vertex_fails_c3(self):
        stmt = ArrowStatement(3, 4, 3, "general")
        assert not check_arrow_instance(stmt, eight_vertex_example())

    def test_single_edge(self):
        assert check_arrow_instance(
            ArrowStatement(1, 1, 1), family_from_pairs(2, [(0, 1)])
        )

    def test_wrong_color_count(self):
        with pytest.raises(HypothesisViolation):
            check_arrow_instance(
                ArrowStatement(2, 1, 1), family_from_pairs(2, [(0, 1)])
            )

    def test_undersized_color_named(self):
        with pytest.raises(HypothesisViolation) as err:
            check_arrow_instance(
                ArrowStatement(2, 2, 1),
                family_from_pairs(4, [(0, 1), (2, 3)], [(0, 2)]),
            )
        assert err.value.witness == 1

    def test_non_matching_color_rejected(self):
        fam = family_from_pairs(3, [(0, 1), (1, 2)])
        with pytest.raises(HypothesisViolation):
            check_arrow_instance(ArrowStatement(1, 2, 1), fam)

    def test_bipartite_class_rejects_triangle(self):
        fam = family_from_pairs(3, [(0, 1)], [(1, 2)], [(2, 0)])
        with pytest.raises(HypothesisViolation, match="bipartite"):
            check_arrow_instance(ArrowStatement(3, 1, 1), fam)

    def test_stairs_instance_n2(self):
        rng = random.Random(21)
        fam = random_matching_family(rng, [1, 2, 2])
        assert check_sequence_instance(stairs_sequence(2), fam)

    def test_sequence_244_witness_fails(self):
        assert not check_sequence_instance(SizeSequence((2, 4, 4), 3),
                                           two_c4_witness())

    def test_sequence_trivial(self):
        assert check_sequence_instance(
            SizeSequence((1,), 1), family_from_pairs(2, [(0, 1)])
        )

    def test_sequence_must_be_nondecreasing(self):
        with pytest.raises(InstanceError):
            SizeSequence((2, 1), 1)


class TestCounterexampleSearch:
    def test_ab_n2_exhaustive_verified(self):
        report = counterexample_search(
            ArrowStatement(2, 2, 1, "bipartite"),
            SearchSpace("bipartite-exhaustive", max_vertices=6),
        )
        assert report.verdict == VERIFIED_RANGE
        assert report.instances_tested > 0

    def test_244_two_c4s_counterexample(self):
        report = counterexample_search(
            SizeSequence((2, 4, 4), 3), SearchSpace("cycles", ambients=((4, 4),))
        )
        assert report.verdict == COUNTEREXAMPLE
        inst = report.counterexample
        g = Graph(inst["graph"]["n"], tuple(tuple(e) for e in inst["graph"]["edges"]))
        fam = EdgeFamily(g, tuple(frozenset(c) for c in inst["colors"]))
        assert brute_max_rainbow(fam) < 3  # replay re-verifies

    def test_244_single_cycle_clean(self):
        report = counterexample_search(
            SizeSequence((2, 4, 4), 3), SearchSpace("cycles", ambients=((8,),))
        )
        assert report.verdict == VERIFIED_RANGE

    def test_random_sweep_reproducible(self):
        sigma = SizeSequence((1, 3, 5), 3)
        space = SearchSpace("random", instances=50)
        a = counterexample_search(sigma, space, seed=1)
        b = counterexample_search(sigma, space, seed=1)
        assert a.verdict == b.verdict == VERIFIED_RANGE
        assert a.instances_tested == b.instances_tested

    def test_cap_reported(self):
        report = counterexample_search(
            ArrowStatement(2, 2, 1, "bipartite"),
            SearchSpace("bipartite-exhaustive", max_vertices=6),
            cap=3,
        )
        assert report.verdict == "cap-exhausted"
        assert report.instances_tested == 3


class TestRepeats:
    def test_k2_c6_with_chord(self):
        g = Graph(6, ((0, 3), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)))
        m1, m2, m3 = frozenset({0}), frozenset({1, 3, 5}), frozenset({2, 4, 6})
        matching, rep = repeats_matching(g, [m1, m2, m3], 2, 3)
        assert len(matching) == 3 and matching_check(g, matching.edges)
        assert len(set(rep.as_dict().values())) >= 2
        for c, e in rep.assignments:
            assert e in (m1, m2, m3)[c] and e in matching.edges

    def test_k_equals_n_two(self):
        rng = random.Random(17)
        fam = random_matching_family(rng, [2, 2, 2])
        matching, rep = repeats_matching(fam.graph, list(fam.colors), 2, 2)
        assert len(matching) == 2 and len(rep) >= 2

    def test_k1_returns_input(self):
        g = Graph(4, ((0, 1), (2, 3)))
        matching, rep = repeats_matching(g, [frozenset({0, 1})], 1, 2)
        assert matching.edges == {0, 1}

    def test_hypothesis_count(self):
        g = Graph(2, ((0, 1),))
        with pytest.raises(HypothesisViolation):
            repeats_matching(g, [frozenset({0})], 2, 2)

    def test_hypothesis_sizes(self):
        g = Graph(4, ((0, 1), (2, 3), (0, 2), (1, 3)))
        with pytest.raises(HypothesisViolation):
            repeats_matching(
                g, [frozenset({0}), frozenset({1}), frozenset({2, 3})], 2, 2
            )

    def test_random_instances_and_constructive_agreement(self):
        rng = random.Random(23)
        for _ in range(60):
            k = rng.choice([2, 3])
            n = rng.randint(k, 4)
            fam = random_matching_family(rng, [n] * (2 * k - 1))
            matching, rep = repeats_matching(fam.graph, list(fam.colors), k, n)
            assert len(matching) == n
            assert matching_check(fam.graph, matching.edges)
            assert len(rep) >= k
            values = [e for _, e in rep.assignments]
            assert len(set(values)) == len(values)
            for c, e in rep.assignments:
                assert e in fam.colors[c]


class TestCooperativeDrisko:
    def bipartite_graph(self, *pairs):
        return Graph(8, tuple(pairs),
                     (frozenset({0, 1, 2, 3}), frozenset({4, 5, 6, 7})))

    def test_all_equal_one_matching(self):
        g = self.bipartite_graph((0, 4), (1, 5))
        sets = [frozenset({0, 1})] * 3
        matching, function = cooperative_drisko_check(g, sets, 2)
        assert len(matching) == 2

    def test_pairwise_unions(self):
        g = self.bipartite_graph((0, 4), (1, 5), (0, 5))
        sets = [frozenset({0}), frozenset({1}), frozenset({0, 1, 2})]
        matching, function = cooperative_drisko_check(g, sets, 2)
        assert len(matching) == 2
        ground = ColoredFamily(GroundSet(g.num_edges), tuple(sets))
        assert is_rainbow(ground, function)

    def test_empty_set_named(self):
        g = self.bipartite_graph((0, 4))
        with pytest.raises(HypothesisViolation) as err:
            cooperative_drisko_check(
                g, [frozenset(), frozenset({0}), frozenset({0})], 2
            )
        assert err.value.witness == 0

    def test_deficient_pair_named(self):
        g = self.bipartite_graph((0, 4), (0, 5))
        sets = [frozenset({0}), frozenset({1}), frozenset({0, 1})]
        with pytest.raises(HypothesisViolation) as err:
            cooperative_drisko_check(g, sets, 2)
        assert err.value.witness == (0, 1)

    def test_non_bipartite_rejected(self):
        g = Graph(3, ((0, 1), (1, 2), (2, 0)))
        with pytest.raises(HypothesisViolation):
            cooperative_drisko_check(g, [frozenset({0})] * 3, 2)


class TestScrambledMatchings:
    def test_identity_scrambling_n2(self):
        rng = random.Random(31)
        fam = random_matching_family(rng, [2, 2, 2])  # n^2 - n/2 = 3 for n=2
        report = scrambled_matching_check(
            fam.graph, [sorted(c) for c in fam.colors],
            [sorted(c) for c in fam.colors], 2,
        )
        assert report.guaranteed and report.met

    def test_oversized_class_rejected(self):
        rng = random.Random(32)
        fam = random_matching_family(rng, [2, 2, 2])
        pool = sorted(e for c in fam.colors for e in c)
        with pytest.raises(InstanceError, match="exceeds the bound"):
            scrambled_matching_check(
                fam.graph, [sorted(c) for c in fam.colors],
                [pool[:3], pool[3:]], 2,
            )

    def test_multiset_mismatch_rejected(self):
        rng = random.Random(33)
        fam = random_matching_family(rng, [2, 2, 2])
        with pytest.raises(InstanceError, match="multiset"):
            scrambled_matching_check(
                fam.graph, [sorted(c) for c in fam.colors],
                [[0, 1], [2, 3], [4, 4]], 2,
            )

    def test_all_rescramblings_of_fixed_instance(self):
        # n=2: every 2-scrambling of three size-2 matchings keeps a rainbow
        # matching of size 2 (exhaustive over partitions into size<=2 classes)
        rng = random.Random(34)
        fam = random_matching_family(rng, [2, 2, 2])
        pool = sorted(e for c in fam.colors for e in c)

        def partitions(items):
            if not items:
                yield []
                return
            first, rest = items[0], items[1:]
            # first alone
            for p in partitions(rest):
                yield [[first]] + p
            # first paired with another
            for i, other in enumerate(rest):
                for p in partitions(rest[:i] + rest[i + 1:]):
                    yield [[first, other]] + p

        count = 0
        for classes in partitions(pool):
            report = scrambled_matching_check(
                fam.graph, [sorted(c) for c in fam.colors], classes, 2
            )
            assert report.met
            count += 1
        assert count > 10

    def test_validate_scrambling_helper(self):
        classes = validate_scrambling([[0, 1], [1, 2]], [[1, 1], [0, 2]], 2)
        assert classes == ((1, 1), (0, 2))
