import itertools
import random

import pytest

from rainbowsets.core import Graph, InstanceError, ResourceCapError
from rainbowsets.matroids import (
    SetComplex,
    binary_matroid,
    check_two_cover,
    covering_number,
    direct_sum,
    free_matroid,
    from_descriptor,
    graphic_matroid,
    intersection_complex,
    matroid_intersection,
    partition_matroid,
    truncate,
    uniform_matroid,
)

from oracles import (
    brute_intersection_minmax,
    brute_matroid_intersection_size,
    is_matroid,
)


def k4() -> Graph:
    return Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def c3() -> Graph:
    return Graph(3, ((0, 1), (1, 2), (2, 0)))


class TestConstructions:
    def test_partition_examples(self):
        m = partition_matroid(3, [[0, 1], [2]], [1, 1])
        assert m.is_independent({0, 2})
        assert not m.is_independent({0, 1})
        m2 = partition_matroid(3, [[0, 1], [2]], [2, 1])
        assert m2.is_independent({0, 1, 2})

    def test_partition_free_elements(self):
        # elements in no part never count against a capacity
        m = partition_matroid(4, [[0, 1]], [1])
        assert m.is_independent({0, 2, 3})

    def test_partition_overlap_rejected(self):
        with pytest.raises(InstanceError):
            partition_matroid(3, [[0, 1], [1, 2]])

    def test_uniform_zero(self):
        m = uniform_matroid(3, 0)
        assert m.is_independent(set())
        assert not m.is_independent({0})

    def test_graphic_cycle(self):
        m = graphic_matroid(c3())
        for pair in itertools.combinations(range(3), 2):
            assert m.is_independent(pair)
        assert not m.is_independent({0, 1, 2})

    def test_binary_rank_two(self):
        m = binary_matroid([0b01, 0b10, 0b11])
        for pair in itertools.combinations(range(3), 2):
            assert m.is_independent(pair)
        assert not m.is_independent({0, 1, 2})

    def test_truncation(self):
        m = truncate(free_matroid(4), 2)
        assert m.is_independent({0, 3})
        assert not m.is_independent({0, 1, 2})

    def test_direct_sum(self):
        m = direct_sum(uniform_matroid(2, 1), uniform_matroid(2, 2))
        assert m.is_independent({0, 2, 3})
        assert not m.is_independent({0, 1})

    def test_axioms_spot_checks(self):
        oracles = [
            partition_matroid(6, [[0, 1, 2], [3, 4]], [2, 1]),
            uniform_matroid(5, 3),
            graphic_matroid(k4()),
            binary_matroid([0b001, 0b010, 0b100, 0b011, 0b111]),
            truncate(graphic_matroid(k4()), 2),
            direct_sum(uniform_matroid(3, 2), uniform_matroid(3, 1)),
        ]
        for m in oracles:
            assert is_matroid(m), m.descriptor

    def test_descriptor_roundtrip(self):
        originals = [
            partition_matroid(5, [[0, 2], [1, 3]], [1, 2]),
            uniform_matroid(4, 2),
            graphic_matroid(c3()),
            binary_matroid([0b01, 0b10, 0b11]),
            truncate(uniform_matroid(4, 3), 2),
            direct_sum(uniform_matroid(2, 1), free_matroid(2)),
        ]
        for m in originals:
            rebuilt = from_descriptor(m.descriptor)
            assert rebuilt.ground_size == m.ground_size
            for mask in range(1 << m.ground_size):
                s = frozenset(i for i in range(m.ground_size) if mask >> i & 1)
                assert rebuilt.is_independent(s) == m.is_independent(s)


class TestRankAndSpan:
    def test_rank_empty(self):
        assert uniform_matroid(4, 2).rank(set()) == 0

    def test_rank_k4_spanning_tree(self):
        assert graphic_matroid(k4()).rank() == 3

    def test_rank_binary(self):
        assert binary_matroid([0b01, 0b10, 0b11]).rank() == 2

    def test_in_span_element_of_set(self):
        assert uniform_matroid(3, 1).in_span({0}, 0)

    def test_in_span_cycle_closure(self):
        m = graphic_matroid(c3())
        assert m.in_span({0, 1}, 2)

    def test_in_span_rank_grows(self):
        assert not uniform_matroid(3, 2).in_span({0}, 1)

    def test_rank_monotone_submodular_exhaustive(self):
        for m in (graphic_matroid(k4()),
                  partition_matroid(5, [[0, 1], [2, 3, 4]], [1, 2]),
                  binary_matroid([0b011, 0b101, 0b110, 0b111])):
            g = m.ground_size
            subsets = [
                frozenset(i for i in range(g) if mask >> i & 1)
                for mask in range(1 << g)
            ]
            for a in subsets:
                for x in range(g):
                    assert m.rank(a) <= m.rank(a | {x}) <= m.rank(a) + 1
            rng = random.Random(0)
            for _ in range(200):
                a = rng.choice(subsets)
                b = rng.choice(subsets)
                assert (m.rank(a | b) + m.rank(a & b)
                        <= m.rank(a) + m.rank(b))


class TestIntersection:
    def test_uniform_pair(self):
        u = uniform_matroid(3, 2)
        assert len(matroid_intersection(u, u)) == 2

    def test_partition_pair(self):
        m1 = partition_matroid(3, [[0, 1], [2]])
        m2 = partition_matroid(3, [[0], [1, 2]])
        got = matroid_intersection(m1, m2)
        assert len(got) == 2  # frozen via exhaustive subset enumeration
        assert m1.is_independent(got) and m2.is_independent(got)

    def test_graphic_uniform(self):
        assert len(matroid_intersection(graphic_matroid(c3()),
                                        uniform_matroid(3, 1))) == 1

    def test_ground_mismatch(self):
        with pytest.raises(InstanceError):
            matroid_intersection(uniform_matroid(2, 1), uniform_matroid(3, 1))

    def test_minmax_on_random_pairs(self):
        rng = random.Random(11)
        from rainbowsets.harness import random_matroid

        for _ in range(25):
            ground = rng.randint(1, 6)
            m1 = random_matroid(rng, ground)
            m2 = random_matroid(rng, ground)
            got = matroid_intersection(m1, m2)
            assert m1.is_independent(got) and m2.is_independent(got)
            assert len(got) == brute_matroid_intersection_size(m1, m2)
            assert len(got) == brute_intersection_minmax(m1, m2)


class TestCovering:
    def test_free(self):
        number, cover = covering_number(free_matroid(5))
        assert number == 1
        assert cover[0] == frozenset(range(5))

    def test_uniform_k1(self):
        assert covering_number(uniform_matroid(4, 1))[0] == 4

    def test_graphic_k4_two_trees(self):
        number, cover = covering_number(graphic_matroid(k4()))
        assert number == 2  # two edge-disjoint spanning trees exist
        assert frozenset().union(*cover) == frozenset(range(6))

    def test_loop_rejected(self):
        with pytest.raises(InstanceError, match="loop"):
            covering_number(uniform_matroid(3, 0))

    def test_ground_cap(self):
        with pytest.raises(ResourceCapError):
            covering_number(free_matroid(17))

    def test_lower_bound_invariant(self):
        rng = random.Random(3)
        from rainbowsets.harness import random_matroid

        for _ in range(30):
            m = random_matroid(rng, rng.randint(1, 8))
            number, cover = covering_number(m)
            assert number >= -(-m.ground_size // max(1, m.rank()))
            for member in cover:
                assert m.is_independent(member)
            assert frozenset().union(*cover) == frozenset(range(m.ground_size))


class TestTwoCover:
    def test_free_pair(self):
        rep = check_two_cover(free_matroid(4), free_matroid(4))
        assert (rep.rho_m, rep.rho_n, rep.rho_meet) == (1, 1, 1)
        assert rep.holds

    def test_k33_star_partitions(self):
        # K_{3,3} edges indexed l*3+r; the two star partition matroids
        edges = [(l, r) for l in range(3) for r in range(3)]
        left_parts = [[i for i, (l, _) in enumerate(edges) if l == a]
                      for a in range(3)]
        right_parts = [[i for i, (_, r) in enumerate(edges) if r == b]
                       for b in range(3)]
        m = partition_matroid(9, left_parts)
        n = partition_matroid(9, right_parts)
        rep = check_two_cover(m, n)
        assert (rep.rho_m, rep.rho_n, rep.rho_meet) == (3, 3, 3)
        assert rep.holds

    def test_random_pairs_hold(self):
        rng = random.Random(20)
        from rainbowsets.harness import random_matroid

        for _ in range(40):
            ground = rng.randint(1, 8)
            rep = check_two_cover(
                random_matroid(rng, ground), random_matroid(rng, ground)
            )
            assert rep.holds

    def test_intersection_complex(self):
        meet = intersection_complex(uniform_matroid(3, 2),
                                    partition_matroid(3, [[0, 1, 2]], [1]))
        assert meet.is_independent({0})
        assert not meet.is_independent({0, 1})

    def test_set_complex(self):
        c = SetComplex(3, lambda s: len(s) <= 1)
        assert covering_number(c)[0] == 3
