"""Rainbow sets spanning a target in a matroid (the cooperative form), the
GF(2) edge-vector encoding of graphs, bipartiteness via affine span, and
rainbow odd cycles with explicit extraction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._gf2 import gf2_in_span, gf2_solve_subset
from .core import (
    ChoiceFunction,
    ColoredFamily,
    Graph,
    GroundSet,
    HypothesisViolation,
    InstanceError,
    TheoremViolation,
)
from .matroids import IndependenceOracle, binary_matroid
from .transversals import Violator, rado_rainbow

HYPOTHESIS_EXHAUSTIVE_LIMIT = 12
HYPOTHESIS_SAMPLES = 4096


@dataclass(frozen=True)
class AugmentedEdgeVector:
    """For an edge on n vertices: the incidence vector with an appended
    parity coordinate, (chi_e, 1), as bits over GF(2)."""

    edge: int
    bits: int


def augmented_vector(g: Graph, e: int) -> AugmentedEdgeVector:
    u, v = g.edges[e]
    return AugmentedEdgeVector(e, (1 << u) | (1 << v) | (1 << g.n))


def edge_vectors(g: Graph) -> tuple[list[AugmentedEdgeVector], IndependenceOracle]:
    """All augmented edge vectors plus the binary matroid over them with
    the target vector (0,...,0,1) adjoined as the last ground element."""
    vectors = [augmented_vector(g, e) for e in range(g.num_edges)]
    columns = [v.bits for v in vectors] + [1 << g.n]
    return vectors, binary_matroid(columns)


def is_bipartite_via_span(g: Graph) -> bool:
    """Bipartite iff (0,...,0,1) is outside the span of the edge vectors."""
    target = 1 << g.n
    return not gf2_in_span([augmented_vector(g, e).bits for e in range(g.num_edges)], target)


# ---------------------------------------------------------------------------
# cooperative spanning


@dataclass(frozen=True)
class SpanningRainbowResult:
    """A rainbow set whose span contains the target, with provenance.

    When the cooperative route fired, deficient_colors is the minimal
    rank-deficient color set and dropped_color the member left out."""

    function: ChoiceFunction
    deficient_colors: Optional[frozenset[int]]
    dropped_color: Optional[int]

    @property
    def image(self) -> frozenset[int]:
        return self.function.image


def _check_cooperative_hypothesis(matroid: IndependenceOracle,
                                  target: frozenset[int],
                                  sets: Sequence[frozenset[int]],
                                  seed: int = 0):
    """Every color subset J must satisfy rank(union) >= |J| or have the
    target inside its span; exhaustive for few colors, sampled beyond."""
    n = len(sets)

    def check(indices: tuple[int, ...]) -> bool:
        union: set[int] = set()
        for i in indices:
            union |= sets[i]
        if matroid.rank(union) >= len(indices):
            return True
        return all(matroid.in_span(union, t) for t in target)

    if n <= HYPOTHESIS_EXHAUSTIVE_LIMIT:
        subsets = (
            tuple(i for i in range(n) if mask >> i & 1)
            for mask in range(1, 1 << n)
        )
    else:
        rng = random.Random(seed)
        pool = [tuple(sorted(rng.sample(range(n), rng.randint(1, n))))
                for _ in range(HYPOTHESIS_SAMPLES)]
        pool += [(i,) for i in range(n)]
        subsets = iter(set(pool))
    for indices in subsets:
        if not check(indices):
            raise HypothesisViolation(
                f"color set {sorted(indices)} is rank-deficient and does not span the target",
                witness=frozenset(indices),
            )


def rainbow_spanning_set(matroid: IndependenceOracle,
                         target: Iterable[int],
                         sets: Sequence[Iterable[int]]) -> SpanningRainbowResult:
    """A rainbow set spanning the target, under the cooperative hypothesis
    that every color subset J has rank(union) >= |J| or spans the target.

    If no rank-deficient color subset exists the full Rado rainbow base
    spans everything; otherwise a minimal deficient J is shrunk out, one
    of its colors is dropped, and Rado on the rest yields a rainbow set
    with the same span as J's union.
    """
    tset = frozenset(int(t) for t in target)
    a_sets = [frozenset(int(x) for x in s) for s in sets]
    n = len(a_sets)
    for t in tset:
        if not 0 <= t < matroid.ground_size:
            raise InstanceError(f"target element {t} outside the ground")
    full_rank = matroid.rank()
    if full_rank > n:
        raise HypothesisViolation(
            f"matroid rank {full_rank} exceeds the number of color classes {n}"
        )
    _check_cooperative_hypothesis(matroid, tset, a_sets)

    ground = GroundSet(matroid.ground_size)
    outcome = rado_rainbow(ColoredFamily(ground, tuple(a_sets)), matroid)
    if isinstance(outcome, ChoiceFunction):
        result = SpanningRainbowResult(outcome, None, None)
        _assert_spans(matroid, result.image, tset)
        return result

    deficient = _minimal_deficient(matroid, a_sets, outcome.colors)
    dropped = min(deficient)
    keep = sorted(deficient - {dropped})
    sub = rado_rainbow(
        ColoredFamily(ground, tuple(a_sets[i] for i in keep)), matroid
    )
    if isinstance(sub, Violator):
        raise TheoremViolation(
            "Rado failed below a minimal deficient color set"
        )
    remapped = ChoiceFunction(
        tuple((keep[c], x) for c, x in sub.assignments)
    )
    union: set[int] = set()
    for i in deficient:
        union |= a_sets[i]
    if matroid.rank(remapped.image) != len(deficient) - 1 or (
        matroid.rank(union) != len(deficient) - 1
    ):
        raise TheoremViolation("rank bookkeeping failed on the deficient set")
    _assert_spans(matroid, remapped.image, tset)
    return SpanningRainbowResult(remapped, frozenset(deficient), dropped)


def _assert_spans(matroid: IndependenceOracle, image: frozenset[int],
                  target: frozenset[int]):
    for t in target:
        if not matroid.in_span(image, t):
            raise TheoremViolation(
                f"returned rainbow set does not span target element {t}"
            )


def _minimal_deficient(matroid: IndependenceOracle,
                       sets: Sequence[frozenset[int]],
                       start: frozenset[int]) -> frozenset[int]:
    """Shrink a deficient color set to an inclusion-minimal one by greedy
    element removal, smallest index first."""

    def is_deficient(indices: frozenset[int]) -> bool:
        union: set[int] = set()
        for i in indices:
            union |= sets[i]
        return matroid.rank(union) < len(indices)

    current = frozenset(start)
    assert is_deficient(current)
    changed = True
    while changed:
        changed = False
        for j in sorted(current):
            smaller = current - {j}
            if smaller and is_deficient(smaller):
                current = smaller
                changed = True
                break
    return current


# ---------------------------------------------------------------------------
# rainbow odd cycles


@dataclass(frozen=True)
class OddCycleResult:
    """An odd cycle with pairwise-distinct colors, one per edge."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    colors: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def _peel_cycles(g: Graph, edge_ids: Iterable[int]) -> list[list[int]]:
    """Split an even-degree edge set into edge-disjoint simple cycles.

    A walk over unused edges can only stall back at its start vertex with
    nothing pending (all degrees stay even as cycles are cut out), so
    cutting at the first vertex revisit peels one simple cycle at a time.
    """
    remaining = set(edge_ids)
    incident: dict[int, list[int]] = {}
    for e in sorted(remaining):
        u, v = g.edges[e]
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)
    cycles: list[list[int]] = []
    while remaining:
        start = min(g.edges[min(remaining)])
        walk_v = [start]
        walk_e: list[int] = []
        cur = start
        while True:
            live = [x for x in incident[cur] if x in remaining]
            if not live:
                assert cur == start and not walk_e
                break
            e = min(live)
            remaining.discard(e)
            walk_e.append(e)
            a, b = g.edges[e]
            cur = b if a == cur else a
            if cur in walk_v:
                at = walk_v.index(cur)
                cycles.append(walk_e[at:])
                walk_v = walk_v[: at + 1]
                walk_e = walk_e[:at]
            else:
                walk_v.append(cur)
    return cycles


def _cycle_order(g: Graph, cycle_edges: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertex and edge order around a cycle given its edge set."""
    remaining = set(cycle_edges)
    e0 = min(remaining)
    remaining.discard(e0)
    u0, v0 = g.edges[e0]
    verts = [u0, v0]
    edges = [e0]
    cur = v0
    while remaining:
        nxt = None
        for e in sorted(remaining):
            a, b = g.edges[e]
            if a == cur or b == cur:
                nxt = e
                break
        assert nxt is not None
        remaining.discard(nxt)
        a, b = g.edges[nxt]
        cur = b if a == cur else a
        edges.append(nxt)
        verts.append(cur)
    assert verts[-1] == verts[0]
    return tuple(verts[:-1]), tuple(edges)


def rainbow_odd_cycle(g: Graph, families: Sequence[Iterable[int]]) -> OddCycleResult:
    """A rainbow odd cycle from n edge sets on n vertices, each spanning
    the all-zero-parity-one vector (true of any odd cycle's edge set).

    Runs the cooperative spanning pipeline over the augmented binary
    matroid with the adjoined target; the returned rainbow set contains a
    subset summing to the target, which has even degrees and an odd edge
    count, hence decomposes into cycles at least one of which is odd.
    """
    a_sets = [frozenset(int(e) for e in f) for f in families]
    if len(a_sets) != g.n:
        raise HypothesisViolation(
            f"expected {g.n} color classes (one per vertex), got {len(a_sets)}",
            witness=len(a_sets),
        )
    target_vec = 1 << g.n
    for i, f in enumerate(a_sets):
        vecs = [augmented_vector(g, e).bits for e in sorted(f)]
        if not gf2_in_span(vecs, target_vec):
            raise HypothesisViolation(
                f"color {i} does not span the target vector "
                f"(its edge set contains no odd cycle)", witness=i,
            )
    return _odd_cycle_pipeline(g, a_sets)


def _odd_cycle_pipeline(g: Graph, a_sets: Sequence[frozenset[int]]) -> OddCycleResult:
    _, matroid = edge_vectors(g)
    z = matroid.ground_size - 1  # the adjoined target element
    spanning = rainbow_spanning_set(matroid, {z}, a_sets)

    pairs = spanning.function.assignments
    edge_of = [e for _, e in pairs]
    color_of = {e: c for c, e in pairs}
    vecs = [augmented_vector(g, e).bits for e in edge_of]
    subset = gf2_solve_subset(vecs, 1 << g.n)
    if subset is None:
        raise TheoremViolation("rainbow spanning set cannot express the target")
    chosen = [edge_of[i] for i in subset]
    if len(chosen) % 2 == 0:
        raise TheoremViolation("target-summing subset has even size")
    cycles = _peel_cycles(g, chosen)
    odd = [c for c in cycles if len(c) % 2 == 1]
    if not odd:
        raise TheoremViolation("no odd cycle in the target-summing subset")
    verts, edges = _cycle_order(g, odd[0])
    return OddCycleResult(verts, edges, tuple(color_of[e] for e in edges))


def cooperative_odd_cycle_check(g: Graph, families: Sequence[Iterable[int]]
                                ) -> OddCycleResult:
    """A rainbow odd cycle from n edge sets on n vertices satisfying the
    cooperative condition: every color subset J either has a spanning
    forest of at least |J| edges in its union or an odd cycle there."""
    a_sets = [frozenset(int(e) for e in f) for f in families]
    if len(a_sets) != g.n:
        raise HypothesisViolation(
            f"expected {g.n} color classes (one per vertex), got {len(a_sets)}",
            witness=len(a_sets),
        )
    n = len(a_sets)

    def graphic_rank_and_odd(union: set[int]) -> tuple[int, bool]:
        parent = list(range(g.n))
        side = [0] * g.n

        def find(x: int) -> tuple[int, int]:
            acc = 0
            while parent[x] != x:
                acc ^= side[x]
                x = parent[x]
            return x, acc

        rank = 0
        odd = False
        for e in sorted(union):
            u, v = g.edges[e]
            ru, pu = find(u)
            rv, pv = find(v)
            if ru == rv:
                if pu == pv:
                    odd = True
            else:
                parent[ru] = rv
                side[ru] = pu ^ pv ^ 1
                rank += 1
        return rank, odd

    if n <= HYPOTHESIS_EXHAUSTIVE_LIMIT:
        masks = range(1, 1 << n)
    else:
        rng = random.Random(0)
        masks = sorted({
            sum(1 << i for i in rng.sample(range(n), rng.randint(1, n)))
            for _ in range(HYPOTHESIS_SAMPLES)
        } | {1 << i for i in range(n)})
    for mask in masks:
        indices = [i for i in range(n) if mask >> i & 1]
        union: set[int] = set()
        for i in indices:
            union |= a_sets[i]
        rank, odd = graphic_rank_and_odd(union)
        if rank < len(indices) and not odd:
            raise HypothesisViolation(
                f"color set {indices}: forest rank {rank} < {len(indices)} "
                f"and no odd cycle in the union", witness=frozenset(indices),
            )
    return _odd_cycle_pipeline(g, a_sets)
