"""Exact rainbow-matching search and the verifiers built on it: arrow
relations, coercive size sequences, the repeats theorem, pairwise-cooperative
rainbow matchings, scrambled matchings, and counterexample sweeps."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import (
    ChoiceFunction,
    Graph,
    HypothesisViolation,
    InstanceError,
    Matching,
    TheoremViolation,
    find_bipartition,
    matching_check,
    _max_matching_general,
)
from .sweeps import SweepReport, SweepRun, SweepSpec


@dataclass(frozen=True)
class EdgeFamily:
    """A colored family whose ground set is a graph's edge set."""

    graph: Graph
    colors: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "colors", tuple(frozenset(int(e) for e in c) for c in self.colors)
        )
        for i, c in enumerate(self.colors):
            for e in c:
                if not 0 <= e < self.graph.num_edges:
                    raise InstanceError(f"colors[{i}]: unknown edge id {e}")

    @property
    def num_colors(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class ArrowStatement:
    """The relation 'a matchings of size b admit a rainbow matching of
    size c' over a graph class."""

    a: int
    b: int
    c: int
    graph_class: str = "bipartite"

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise InstanceError("arrow parameters must be nonnegative")
        if self.graph_class not in ("bipartite", "general"):
            raise InstanceError(f"unknown graph class {self.graph_class!r}")


@dataclass(frozen=True)
class SizeSequence:
    """A nondecreasing sequence of matching sizes with a rainbow target."""

    sizes: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if any(b < a for a, b in zip(self.sizes, self.sizes[1:])):
            raise InstanceError("size sequence must be nondecreasing")
        if self.target < 0:
            raise InstanceError("target must be nonnegative")


def stairs_sequence(n: int) -> SizeSequence:
    """The staircase (1, 2, ..., n-1, n, ..., n) with n repeated n times."""
    return SizeSequence(tuple(range(1, n)) + (n,) * n, n)


def drisko_statement(n: int, graph_class: str = "bipartite") -> ArrowStatement:
    return ArrowStatement(2 * n - 1, n, n, graph_class)


# ---------------------------------------------------------------------------
# the exact engine


class _RainbowSearch:
    """Branch and bound for a maximum rainbow matching.

    Branches on the color class with the fewest compatible edges (edges by
    id within a class, then the skip branch); prunes with the size of the
    current partial plus a maximum matching of the remaining classes' union
    restricted to unused vertices.
    """

    def __init__(self, fam: EdgeFamily, target: Optional[int]):
        self.fam = fam
        self.g = fam.graph
        self.masks = [self.g.edge_mask(e) for e in range(self.g.num_edges)]
        self.target = target
        sides = find_bipartition(self.g)
        if sides is not None:
            left = sides[0]
            self.left_of = [
                (u if u in left else v) for u, v in self.g.edges
            ]
            self.right_of = [
                (v if u in left else u) for u, v in self.g.edges
            ]
        else:
            self.left_of = None
        self.best: list[tuple[int, int]] = []

    def _matching_bound(self, edge_ids: list[int]) -> int:
        if not edge_ids:
            return 0
        if self.left_of is not None:
            adj: dict[int, list[int]] = {}
            seen_pairs: set[tuple[int, int]] = set()
            for e in edge_ids:
                pair = (self.left_of[e], self.right_of[e])
                if pair in seen_pairs:
                    continue
                seen_pairs.add(pair)
                adj.setdefault(pair[0], []).append(pair[1])
            match: dict[int, int] = {}

            def aug(u: int, vis: set[int]) -> bool:
                for v in adj[u]:
                    if v in vis:
                        continue
                    vis.add(v)
                    if v not in match or aug(match[v], vis):
                        match[v] = u
                        return True
                return False

            for u in adj:
                aug(u, set())
            return len(match)
        pairs = sorted({tuple(sorted(self.g.edges[e])) for e in edge_ids})
        masks = [(1 << u) | (1 << v) for u, v in pairs]
        return len(_max_matching_general(list(range(len(masks))), masks))

    def run(self) -> list[tuple[int, int]]:
        compatible = {
            c: sorted(self.fam.colors[c]) for c in range(self.fam.num_colors)
        }
        self._search(0, compatible, [])
        return self.best

    def _done(self) -> bool:
        return self.target is not None and len(self.best) >= self.target

    def _search(self, used: int, compatible: dict[int, list[int]],
                chosen: list[tuple[int, int]]):
        if self._done():
            return
        live = {
            c: [e for e in edges if not self.masks[e] & used]
            for c, edges in compatible.items()
        }
        live = {c: es for c, es in live.items() if es}
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        if not live:
            return
        union_edges = sorted({e for es in live.values() for e in es})
        bound = len(chosen) + min(len(live), self._matching_bound(union_edges))
        if bound <= len(self.best):
            return
        branch_color = min(live, key=lambda c: (len(live[c]), c))
        rest = {c: es for c, es in live.items() if c != branch_color}
        for e in live[branch_color]:
            chosen.append((branch_color, e))
            self._search(used | self.masks[e], rest, chosen)
            chosen.pop()
            if self._done():
                return
        self._search(used, rest, chosen)


def max_rainbow_matching(fam: EdgeFamily, target: Optional[int] = None
                         ) -> tuple[Matching, ChoiceFunction]:
    """A maximum-size rainbow matching with its color provenance.

    If target is given the search stops as soon as a rainbow matching of
    that size is found.
    """
    chosen = _RainbowSearch(fam, target).run()
    matching = Matching(frozenset(e for _, e in chosen))
    function = ChoiceFunction(tuple(chosen))
    return matching, function


def _validate_matching_colors(fam: EdgeFamily, min_sizes: Sequence[int]):
    if fam.num_colors != len(min_sizes):
        raise HypothesisViolation(
            f"expected {len(min_sizes)} color classes, got {fam.num_colors}",
            witness=fam.num_colors,
        )
    for i, need in enumerate(min_sizes):
        edges = fam.colors[i]
        if not matching_check(fam.graph, edges):
            raise HypothesisViolation(
                f"color {i} is not a matching", witness=i
            )
        if len(edges) < need:
            raise HypothesisViolation(
                f"color {i} has size {len(edges)} < required {need}", witness=i
            )


def check_arrow_instance(stmt: ArrowStatement, fam: EdgeFamily) -> bool:
    """True iff the instance has a rainbow matching of size stmt.c."""
    if stmt.graph_class == "bipartite" and find_bipartition(fam.graph) is None:
        raise HypothesisViolation("instance graph is not bipartite")
    _validate_matching_colors(fam, [stmt.b] * stmt.a)
    matching, _ = max_rainbow_matching(fam, target=stmt.c)
    return len(matching) >= stmt.c


def check_sequence_instance(sigma: SizeSequence, fam: EdgeFamily) -> bool:
    """True iff the instance has a rainbow matching of size sigma.target."""
    if find_bipartition(fam.graph) is None:
        raise HypothesisViolation("instance graph is not bipartite")
    _validate_matching_colors(fam, sigma.sizes)
    matching, _ = max_rainbow_matching(fam, target=sigma.target)
    return len(matching) >= sigma.target


# ---------------------------------------------------------------------------
# the repeats theorem


def _representation_map(matchings: Sequence[frozenset[int]],
                        edges: Iterable[int]) -> ChoiceFunction:
    """Maximum injective map color -> distinct edge with edge in color."""
    edge_list = sorted(edges)
    match: dict[int, int] = {}  # edge -> color

    def aug(c: int, vis: set[int]) -> bool:
        for e in edge_list:
            if e in vis or e not in matchings[c]:
                continue
            vis.add(e)
            if e not in match or aug(match[e], vis):
                match[e] = c
                return True
        return False

    for c in range(len(matchings)):
        aug(c, set())
    return ChoiceFunction(tuple((c, e) for e, c in match.items()))


def _repeats_exact(g: Graph, matchings: Sequence[frozenset[int]], k: int,
                   n: int) -> Optional[tuple[Matching, ChoiceFunction]]:
    """First size-n matching in the union representing >= k colors."""
    union = sorted(set().union(*matchings))
    masks = {e: g.edge_mask(e) for e in union}

    def search(idx: int, used: int, chosen: list[int]
               ) -> Optional[tuple[Matching, ChoiceFunction]]:
        if len(chosen) == n:
            rep = _representation_map(matchings, chosen)
            if len(rep) >= k:
                return Matching(frozenset(chosen)), rep
            return None
        free = [e for e in union[idx:] if not masks[e] & used]
        if len(chosen) + len(free) < n:
            return None
        for j, e in enumerate(union[idx:], start=idx):
            if masks[e] & used:
                continue
            chosen.append(e)
            out = search(j + 1, used | masks[e], chosen)
            if out is not None:
                return out
            chosen.pop()
        return None

    return search(0, 0, [])


def _cycle_components(g: Graph, edge_ids: frozenset[int]
                      ) -> list[tuple[bool, list[int], list[int]]]:
    """Components of an edge set with degree <= 2 everywhere.

    Each component is (is_cycle, edges, vertices) in traversal order:
    edge i joins vertices[i] to vertices[i + 1] (indices mod length for
    cycles, where the closing vertex is not repeated).
    """
    incident: dict[int, list[int]] = {}
    for e in sorted(edge_ids):
        u, v = g.edges[e]
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)
    for v, es in incident.items():
        if len(es) > 2:
            raise InstanceError(f"vertex {v} has degree > 2 in the edge union")
    remaining = set(edge_ids)
    comps: list[tuple[bool, list[int], list[int]]] = []

    def walk(start: int) -> tuple[bool, list[int], list[int]]:
        path: list[int] = []
        verts = [start]
        cur = start
        while True:
            live = [e for e in incident.get(cur, ()) if e in remaining]
            if not live:
                break
            e = min(live)
            remaining.discard(e)
            path.append(e)
            a, b = g.edges[e]
            cur = b if a == cur else a
            verts.append(cur)
        is_cycle = cur == start and len(path) >= 2
        if is_cycle:
            verts.pop()
        return is_cycle, path, verts

    while remaining:
        # open walks must start at a degree-1 endpoint; cycles can start anywhere
        start = None
        for v in sorted(incident):
            if len([e for e in incident[v] if e in remaining]) == 1:
                start = v
                break
        if start is None:
            start = min(g.edges[min(remaining)])
        comps.append(walk(start))
    return comps


def _repeats_k2_constructive(g: Graph, matchings: Sequence[frozenset[int]],
                             n: int) -> Optional[tuple[Matching, ChoiceFunction]]:
    """The constructive route for k=2: split the union of the last two
    matchings into cycles, or cut a single spanning cycle with an edge of
    the first matching. Returns None when the shape falls outside those
    cases; callers fall back to the exact search."""
    m1, m2, m3 = matchings
    union = m2 | m3
    comps = _cycle_components(g, union)
    cycles = [(edges, verts) for is_cycle, edges, verts in comps if is_cycle]

    def finish(edge_set: set[int], rep: dict[int, int]
               ) -> Optional[tuple[Matching, ChoiceFunction]]:
        if len(edge_set) != n or not matching_check(g, edge_set):
            return None
        if len(set(rep.values())) < 2 or any(
            e not in edge_set or e not in matchings[c] for c, e in rep.items()
        ):
            return None
        return Matching(frozenset(edge_set)), ChoiceFunction(tuple(rep.items()))

    if len(cycles) >= 2:
        c1, c2 = cycles[0][0], cycles[1][0]
        take = (m2 - set(c2)) | (m3 & set(c2))
        rep = {1: min(m2 & set(c1)), 2: min(m3 & set(c2))}
        return finish(set(take), rep)

    if len(cycles) == 1 and len(cycles[0][0]) == len(union):
        cyc, verts = cycles[0]
        length = len(cyc)
        e1 = min(m1)
        u, v = g.edges[e1]
        on_cycle = [verts.index(x) for x in (u, v) if x in verts]
        if len(on_cycle) == 0:
            drop = max(m2)
            take = {e1} | (m2 - {drop})
            return finish(set(take), {0: e1, 1: min(m2 - {drop})})
        if len(on_cycle) == 1:
            pos = on_cycle[0]
            hit = verts[pos]
            conflict = [e for e in m2 if hit in g.edges[e]]
            take = {e1} | (m2 - set(conflict))
            rest = m2 - set(conflict)
            if not rest:
                return None
            return finish(set(take), {0: e1, 1: min(rest)})
        a, b = sorted(on_cycle)
        d = b - a
        if d % 2 == 0:
            return None  # non-bipartite chord; outside the constructive case
        take = {e1}
        for t in range((d - 1) // 2):
            take.add(cyc[(a + 1 + 2 * t) % length])
        for t in range((length - d - 1) // 2):
            take.add(cyc[(b + 1 + 2 * t) % length])
        others = sorted(take - {e1})
        if not others:
            return None
        o = others[0]
        rep = {0: e1, (1 if o in m2 else 2): o}
        return finish(set(take), rep)

    # mixed shapes: flip one balanced component of the union to the second
    # color if that keeps the size and both colors represented
    comp_sets = [set(edges) for _, edges, _ in comps]
    for comp in comp_sets:
        s2, s3 = m2 & comp, m3 & comp
        if len(s2) == len(s3) and s3 and (m2 - comp):
            take = (m2 - comp) | s3
            return finish(set(take), {1: min(m2 - comp), 2: min(s3)})
    return None


def repeats_matching(g: Graph, matchings: Sequence[Iterable[int]], k: int,
                     n: int) -> tuple[Matching, ChoiceFunction]:
    """A size-n matching inside the union of 2k-1 matchings, injectively
    representing at least k of them.

    Sizes must be at least n from the k-th matching on; earlier matchings
    may shrink along the staircase min(i, k-1), which is the proved regime
    for k <= 2 and the theorem's regime when all sizes reach n.
    """
    sets = [frozenset(int(e) for e in m) for m in matchings]
    if k < 1 or k > n:
        raise HypothesisViolation(f"need 1 <= k <= n, got k={k}, n={n}")
    if len(sets) != 2 * k - 1:
        raise HypothesisViolation(
            f"expected {2 * k - 1} matchings, got {len(sets)}", witness=len(sets)
        )
    for i, m in enumerate(sets):
        if not matching_check(g, m):
            raise HypothesisViolation(f"matching {i} is not a matching", witness=i)
        need = min(i + 1, k - 1) if i + 1 <= k - 1 else n
        if len(m) < need:
            raise HypothesisViolation(
                f"matching {i} has size {len(m)} < required {need}", witness=i
            )

    if k == 1:
        take = sorted(sets[0])[:n]
        return Matching(frozenset(take)), ChoiceFunction(((0, take[0]),))

    result = None
    if k == 2:
        result = _repeats_k2_constructive(g, sets, n)
    if result is None:
        result = _repeats_exact(g, sets, k, n)
    if result is None:
        raise TheoremViolation(
            "no size-%d matching representing %d of the matchings exists; "
            "this contradicts the repeats theorem" % (n, k)
        )
    return result


# ---------------------------------------------------------------------------
# pairwise-cooperative rainbow matchings


def cooperative_drisko_check(g: Graph, families: Sequence[Iterable[int]],
                             k: int) -> tuple[Matching, ChoiceFunction]:
    """A rainbow matching of size k from 2k-1 nonempty edge sets whose
    pairwise unions all contain matchings of size k."""
    sides = find_bipartition(g)
    if sides is None:
        raise HypothesisViolation("graph is not bipartite")
    sets = [frozenset(int(e) for e in f) for f in families]
    if len(sets) != 2 * k - 1:
        raise HypothesisViolation(
            f"expected {2 * k - 1} edge sets, got {len(sets)}", witness=len(sets)
        )
    for i, f in enumerate(sets):
        if not f:
            raise HypothesisViolation(f"edge set {i} is empty", witness=i)
    fam = EdgeFamily(g, tuple(sets))
    search = _RainbowSearch(fam, None)
    for i, j in itertools.combinations(range(len(sets)), 2):
        nu = search._matching_bound(sorted(sets[i] | sets[j]))
        if nu < k:
            raise HypothesisViolation(
                f"matching number of the union of sets {i} and {j} is {nu} < {k}",
                witness=(i, j),
            )
    matching, function = max_rainbow_matching(fam, target=k)
    if len(matching) < k:
        raise TheoremViolation(
            "no rainbow matching of size %d despite pairwise unions of "
            "matching number >= %d" % (k, k)
        )
    return matching, function


# ---------------------------------------------------------------------------
# scrambled matchings


@dataclass(frozen=True)
class ScrambledMatchingReport:
    """Outcome of a scrambled-matching search."""

    matching: Matching
    function: ChoiceFunction
    target: int
    guaranteed: bool

    @property
    def met(self) -> bool:
        return len(self.matching) >= self.target


def validate_scrambling(original: Sequence[Iterable[int]],
                        scrambling: Sequence[Iterable[int]], n: int
                        ) -> tuple[tuple[int, ...], ...]:
    """Check the scrambling re-partitions the same edge multiset into
    classes of size at most n; returns the classes as sorted tuples."""
    pool = Counter()
    for f in original:
        pool.update(int(e) for e in f)
    classes = tuple(tuple(sorted(int(e) for e in c)) for c in scrambling)
    scr = Counter()
    for i, c in enumerate(classes):
        if len(c) > n:
            raise InstanceError(
                f"scrambling[{i}]: class of size {len(c)} exceeds the bound {n}"
            )
        scr.update(c)
    if pool != scr:
        diff = (pool - scr) + (scr - pool)
        raise InstanceError(
            f"scrambling is not a re-partition of the same edge multiset; "
            f"first mismatch at edge {min(diff)}"
        )
    return classes


def scrambled_matching_check(g: Graph, original: Sequence[Iterable[int]],
                             scrambling: Sequence[Iterable[int]], n: int
                             ) -> ScrambledMatchingReport:
    """Search for a rainbow matching of size n with respect to a scrambling
    of a family of matchings.

    When the family is large enough (at least n^2 - n/2 matchings of size
    n) the search is guaranteed to succeed; otherwise the best found is
    reported.
    """
    originals = [frozenset(int(e) for e in f) for f in original]
    for i, f in enumerate(originals):
        if not matching_check(g, f):
            raise InstanceError(f"original family member {i} is not a matching")
    classes = validate_scrambling(originals, scrambling, n)
    fam = EdgeFamily(g, tuple(frozenset(c) for c in classes))
    matching, function = max_rainbow_matching(fam, target=n)
    guaranteed = (
        all(len(f) == n for f in originals)
        and 2 * len(originals) >= 2 * n * n - n
    )
    if guaranteed and len(matching) < n:
        raise TheoremViolation(
            "scrambled family of %d matchings of size %d has no rainbow "
            "matching of size %d" % (len(originals), n, n)
        )
    return ScrambledMatchingReport(matching, function, n, guaranteed)


# ---------------------------------------------------------------------------
# counterexample sweeps


@dataclass(frozen=True)
class SearchSpace:
    """Instance space for a counterexample sweep.

    mode 'bipartite-exhaustive' enumerates families of matchings over all
    bipartitions with at most max_vertices vertices; mode 'cycles' sweeps
    families inside fixed disjoint unions of cycles; mode 'random' samples
    seeded random bipartite instances.
    """

    mode: str
    max_vertices: int = 0
    ambients: tuple[tuple[int, ...], ...] = ()
    instances: int = 0

    def __post_init__(self):
        if self.mode not in ("bipartite-exhaustive", "cycles", "random"):
            raise InstanceError(f"unknown search mode {self.mode!r}")
        object.__setattr__(
            self, "ambients", tuple(tuple(int(x) for x in a) for a in self.ambients)
        )


def _claim_sizes(claim) -> tuple[tuple[int, ...], int]:
    if isinstance(claim, ArrowStatement):
        return (claim.b,) * claim.a, claim.c
    if isinstance(claim, SizeSequence):
        return claim.sizes, claim.target
    raise InstanceError("claim must be an ArrowStatement or a SizeSequence")


def _matchings_of_size_in(g: Graph, pool: Sequence[int], size: int
                          ) -> list[tuple[int, ...]]:
    masks = [g.edge_mask(e) for e in range(g.num_edges)]
    out: list[tuple[int, ...]] = []

    def rec(idx: int, used: int, acc: list[int]):
        if len(acc) == size:
            out.append(tuple(acc))
            return
        for j in range(idx, len(pool)):
            e = pool[j]
            if masks[e] & used:
                continue
            acc.append(e)
            rec(j + 1, used | masks[e], acc)
            acc.pop()

    rec(0, 0, [])
    return out


def _family_product(per_color: list[list[tuple[int, ...]]],
                    sizes: tuple[int, ...]):
    """All families, forcing nondecreasing picks among equal-size colors."""

    def rec(i: int, acc: list[tuple[int, ...]]):
        if i == len(per_color):
            yield tuple(acc)
            return
        for m in per_color[i]:
            if i > 0 and sizes[i] == sizes[i - 1] and m < acc[-1]:
                continue
            acc.append(m)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _cycle_graph(lengths: tuple[int, ...]) -> Graph:
    edges: list[tuple[int, int]] = []
    base = 0
    for length in lengths:
        for i in range(length):
            edges.append((base + i, base + (i + 1) % length))
        base += length
    return Graph(base, tuple(edges))


def _serialize_family_instance(g: Graph, colors: Sequence[Iterable[int]]) -> dict:
    return {
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
        "colors": [sorted(c) for c in colors],
    }


def _bipartite_canonical(nl: int, nr: int,
                         family: tuple[tuple[tuple[int, int], ...], ...]) -> tuple:
    """Smallest relabeling of a family of (left, right) pair matchings
    under side permutations (naive canonical form for small instances)."""
    best = None
    swaps = ((False,), (False, True))[nl == nr]
    for swap in swaps:
        for lp in itertools.permutations(range(nl)):
            for rp in itertools.permutations(range(nr)):
                enc = tuple(
                    sorted(
                        tuple(
                            sorted(
                                (rp[r], lp[l]) if swap else (lp[l], rp[r])
                                for l, r in m
                            )
                        )
                        for m in family
                    )
                )
                if best is None or enc < best:
                    best = enc
    return best


def counterexample_search(claim, space: SearchSpace, seed: int = 0,
                          cap: int = 10**6,
                          on_record=None) -> SweepReport:
    """Sweep the given space for an instance violating the claim.

    Returns the first counterexample (serialized for replay) or a
    certificate of the swept range; resource caps end the sweep with a
    cap-exhausted report.
    """
    sizes, need = _claim_sizes(claim)
    tag = f"claim-{'-'.join(map(str, sizes))}-to-{need}"
    spec = SweepSpec(tag, mode=space.mode, seed=seed, instance_cap=cap)
    run = SweepRun(spec, on_record=on_record)

    def simple_target(fam: EdgeFamily) -> bool:
        matching, _ = max_rainbow_matching(fam, target=need)
        return len(matching) >= need

    if space.mode == "cycles":
        for lengths in space.ambients:
            g = _cycle_graph(lengths)
            pool = list(range(g.num_edges))
            per_color = [_matchings_of_size_in(g, pool, s) for s in sizes]
            if any(not options for options in per_color):
                continue
            for fam_sets in _family_product(per_color, sizes):
                if run.over_cap():
                    return run.capped(ambients=list(map(list, space.ambients)))
                fam = EdgeFamily(g, tuple(frozenset(m) for m in fam_sets))
                ok = simple_target(fam)
                run.record("ok" if ok else "counterexample")
                if not ok:
                    return run.counterexample(
                        _serialize_family_instance(g, fam_sets)
                    )
        return run.verified(ambients=list(map(list, space.ambients)))

    if space.mode == "bipartite-exhaustive":
        smax = max(sizes) if sizes else 0
        canonical_on = smax <= 3 and space.max_vertices <= 8
        seen: set = set()
        for nl in range(max(1, smax), space.max_vertices + 1):
            for nr in range(nl, space.max_vertices - nl + 1):
                if nr < smax:
                    continue
                pairs = [(l, r) for l in range(nl) for r in range(nr)]
                per_color = []
                for s in sizes:
                    opts = []
                    for lefts in itertools.combinations(range(nl), s):
                        for rights in itertools.permutations(range(nr), s):
                            opts.append(tuple(sorted(zip(lefts, rights))))
                    per_color.append(sorted(set(opts)))
                for fam_pairs in _family_product(per_color, sizes):
                    if run.over_cap():
                        return run.capped(max_vertices=space.max_vertices)
                    covered_l = {l for m in fam_pairs for l, _ in m}
                    covered_r = {r for m in fam_pairs for _, r in m}
                    if len(covered_l) != nl or len(covered_r) != nr:
                        continue  # counted already at a smaller bipartition
                    if canonical_on:
                        key = _bipartite_canonical(nl, nr, fam_pairs)
                        if key in seen:
                            continue
                        seen.add(key)
                    edges: list[tuple[int, int]] = []
                    colors: list[frozenset[int]] = []
                    for m in fam_pairs:
                        ids = []
                        for l, r in m:
                            ids.append(len(edges))
                            edges.append((l, nl + r))
                        colors.append(frozenset(ids))
                    g = Graph(
                        nl + nr, tuple(edges),
                        (frozenset(range(nl)), frozenset(range(nl, nl + nr))),
                    )
                    fam = EdgeFamily(g, tuple(colors))
                    ok = simple_target(fam)
                    run.record("ok" if ok else "counterexample")
                    if not ok:
                        return run.counterexample(
                            _serialize_family_instance(g, colors)
                        )
        return run.verified(max_vertices=space.max_vertices)

    # random mode: seeded bipartite instances from permutation matchings
    import random as _random

    rng = _random.Random(seed)
    for _ in range(space.instances):
        if run.over_cap():
            return run.capped(instances=space.instances)
        fam = random_matching_family(rng, sizes)
        ok = simple_target(fam)
        run.record("ok" if ok else "counterexample")
        if not ok:
            return run.counterexample(
                _serialize_family_instance(fam.graph, fam.colors)
            )
    return run.verified(instances=space.instances)


def random_matching_family(rng, sizes: Sequence[int]) -> EdgeFamily:
    """A seeded family of bipartite matchings with the given sizes: each is
    a uniform random permutation matching of K_{m,m} (m = largest size)
    restricted to its first entries; repeats across colors become parallel
    edges with fresh ids."""
    m = max(sizes) if sizes else 1
    edges: list[tuple[int, int]] = []
    colors: list[frozenset[int]] = []
    for s in sizes:
        perm = list(range(m))
        rng.shuffle(perm)
        ids = []
        for l in range(s):
            ids.append(len(edges))
            edges.append((l, m + perm[l]))
        colors.append(frozenset(ids))
    g = Graph(
        2 * m, tuple(edges),
        (frozenset(range(m)), frozenset(range(m, 2 * m))),
    )
    return EdgeFamily(g, tuple(colors))
