"""Network machinery: the bipartite double of a network, linearish
arborescences and their counting identity, vertex-disjoint path packing,
rainbow disjoint-path systems, the weighted rainbow-path tree algorithm,
and the towers/path-enforcer route to scrambled rainbow paths."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    ChoiceFunction,
    Graph,
    HypothesisViolation,
    InstanceError,
    Network,
    ResourceCapError,
    TheoremViolation,
    WeightMap,
)
from .matching import EdgeFamily, max_rainbow_matching, validate_scrambling

ENFORCER_SIZE_CAP = 12


# ---------------------------------------------------------------------------
# linearish arborescences


@dataclass(frozen=True)
class LinearishArborescence:
    """A sub-digraph in which every vertex has in- and out-degree at most
    one; it decomposes uniquely into directed paths and cycles."""

    network: Network
    edges: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(int(e) for e in self.edges))
        outdeg: Counter = Counter()
        indeg: Counter = Counter()
        for e in self.edges:
            if not 0 <= e < self.network.num_edges:
                raise InstanceError(f"unknown edge id {e}")
            u, v = self.network.edges[e]
            outdeg[u] += 1
            indeg[v] += 1
        for v, d in outdeg.items():
            if d > 1:
                raise InstanceError(f"vertex {v} has out-degree {d} > 1")
        for v, d in indeg.items():
            if d > 1:
                raise InstanceError(f"vertex {v} has in-degree {d} > 1")

    @property
    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for e in self.edges:
            u, v = self.network.edges[e]
            out.add(u)
            out.add(v)
        return frozenset(out)


@dataclass(frozen=True)
class ComponentClassification:
    """The path/cycle decomposition of a linearish arborescence, with paths
    split by whether they start in S and/or end in T."""

    cycles: tuple[tuple[int, ...], ...]
    st_paths: tuple[tuple[int, ...], ...]
    s_only_paths: tuple[tuple[int, ...], ...]
    t_only_paths: tuple[tuple[int, ...], ...]
    free_paths: tuple[tuple[int, ...], ...]

    @property
    def s_paths(self) -> tuple[tuple[int, ...], ...]:
        return self.st_paths + self.s_only_paths

    @property
    def t_paths(self) -> tuple[tuple[int, ...], ...]:
        return self.st_paths + self.t_only_paths


def classify(arb: LinearishArborescence) -> ComponentClassification:
    """Decompose into directed paths and cycles and classify the paths."""
    net = arb.network
    out_edge: dict[int, int] = {}
    in_edge: dict[int, int] = {}
    for e in sorted(arb.edges):
        u, v = net.edges[e]
        out_edge[u] = e
        in_edge[v] = e
    remaining = set(arb.edges)
    paths: list[tuple[int, ...]] = []
    starts = sorted(v for v in out_edge if v not in in_edge)
    for v in starts:
        path: list[int] = []
        cur = v
        while cur in out_edge and out_edge[cur] in remaining:
            e = out_edge[cur]
            remaining.discard(e)
            path.append(e)
            cur = net.edges[e][1]
        paths.append(tuple(path))
    cycles: list[tuple[int, ...]] = []
    while remaining:
        e0 = min(remaining)
        cyc = [e0]
        remaining.discard(e0)
        start = net.edges[e0][0]
        cur = net.edges[e0][1]
        while cur != start:
            e = out_edge[cur]
            remaining.discard(e)
            cyc.append(e)
            cur = net.edges[e][1]
        cycles.append(tuple(cyc))
    st, s_only, t_only, free = [], [], [], []
    for path in paths:
        first = net.edges[path[0]][0]
        last = net.edges[path[-1]][1]
        from_s = first in net.sources
        to_t = last in net.targets
        if from_s and to_t:
            st.append(path)
        elif from_s:
            s_only.append(path)
        elif to_t:
            t_only.append(path)
        else:
            free.append(path)
    return ComponentClassification(
        tuple(cycles), tuple(st), tuple(s_only), tuple(t_only), tuple(free)
    )


# ---------------------------------------------------------------------------
# the bipartite double B(N)


@dataclass(frozen=True)
class BipartifiedNetwork:
    """The bipartite double of a network: a sending copy v' for each
    v in S + inner, an absorbing copy v'' for each v in T + inner, the
    images of the network edges, and the loop edges W = {x'x''}."""

    network: Network
    graph: Graph
    send_index: tuple[tuple[int, int], ...]     # (vertex, left index)
    absorb_index: tuple[tuple[int, int], ...]   # (vertex, right index)
    edge_image: tuple[int, ...]                 # B-edge id per network edge
    w_edge_of: tuple[tuple[int, int], ...]      # (inner vertex, B-edge id)

    @property
    def w_edges(self) -> frozenset[int]:
        return frozenset(b for _, b in self.w_edge_of)

    def network_edge_of(self, b_edge: int) -> Optional[int]:
        """The network edge a non-W B-edge came from; None for W edges."""
        if b_edge in self.w_edges:
            return None
        return self.edge_image.index(b_edge)


def bipartify(net: Network) -> BipartifiedNetwork:
    """Build B(N) with deterministic vertex and edge numbering."""
    senders = sorted(net.sources | net.inner)
    absorbers = sorted(net.targets | net.inner)
    left = {v: i for i, v in enumerate(senders)}
    right = {v: len(senders) + i for i, v in enumerate(absorbers)}
    edges: list[tuple[int, int]] = []
    edge_image: list[int] = []
    for u, v in net.edges:
        edge_image.append(len(edges))
        edges.append((left[u], right[v]))
    w_pairs: list[tuple[int, int]] = []
    for x in sorted(net.inner):
        w_pairs.append((x, len(edges)))
        edges.append((left[x], right[x]))
    g = Graph(
        len(senders) + len(absorbers),
        tuple(edges),
        (frozenset(range(len(senders))),
         frozenset(range(len(senders), len(senders) + len(absorbers)))),
    )
    return BipartifiedNetwork(
        net, g,
        tuple((v, left[v]) for v in senders),
        tuple((v, right[v]) for v in absorbers),
        tuple(edge_image),
        tuple(w_pairs),
    )


def phi(bn: BipartifiedNetwork, arb: LinearishArborescence) -> frozenset[int]:
    """The matching {x'y'' : xy in L} + {x'x'' : inner x not in V(L)}."""
    if arb.network is not bn.network and arb.network != bn.network:
        raise InstanceError("arborescence belongs to a different network")
    covered = arb.vertices
    out = {bn.edge_image[e] for e in arb.edges}
    for x, b in bn.w_edge_of:
        if x not in covered:
            out.add(b)
    return frozenset(out)


def psi(bn: BipartifiedNetwork, b_matching: Iterable[int]) -> frozenset[int]:
    """The network edges of the non-W part of a matching in B(N)."""
    ids = frozenset(int(b) for b in b_matching)
    for b in ids:
        if not 0 <= b < bn.graph.num_edges:
            raise InstanceError(f"unknown B-edge id {b}")
    w = bn.w_edges
    back = {b: e for e, b in enumerate(bn.edge_image)}
    return frozenset(back[b] for b in ids if b not in w)


def check_counting_claim(net: Network, arb: LinearishArborescence) -> bool:
    """|L_ST| = |phi(L)| - |inner| + |free path components|.

    Cycle components cancel exactly and are not part of the correction
    term; only the paths touching neither S nor T are.
    """
    bn = bipartify(net)
    cls = classify(arb)
    lhs = len(cls.st_paths)
    rhs = len(phi(bn, arb)) - len(net.inner) + len(cls.free_paths)
    return lhs == rhs


# ---------------------------------------------------------------------------
# vertex-disjoint path packing


def nu_p(net: Network, edge_ids: Iterable[int]
         ) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Maximum number of vertex-disjoint S-T paths using only the given
    edges, with witness paths; unit-vertex-capacity max flow."""
    ids = sorted(frozenset(int(e) for e in edge_ids))
    for e in ids:
        if not 0 <= e < net.num_edges:
            raise InstanceError(f"unknown edge id {e}")
    n = net.n
    source, sink = 2 * n, 2 * n + 1
    graph: list[list[list[int]]] = [[] for _ in range(2 * n + 2)]

    def add_arc(u: int, v: int) -> tuple[int, int]:
        graph[u].append([v, 1, len(graph[v])])
        graph[v].append([u, 0, len(graph[u]) - 1])
        return u, len(graph[u]) - 1

    for v in range(n):
        add_arc(2 * v, 2 * v + 1)
    source_arcs = {s: add_arc(source, 2 * s) for s in sorted(net.sources)}
    for t in sorted(net.targets):
        add_arc(2 * t + 1, sink)
    edge_arcs = {}
    for e in ids:
        u, v = net.edges[e]
        edge_arcs[e] = add_arc(2 * u + 1, 2 * v)

    def bfs_augment() -> bool:
        parent: dict[int, tuple[int, int]] = {source: (-1, -1)}
        queue = [source]
        qi = 0
        while qi < len(queue) and sink not in parent:
            u = queue[qi]
            qi += 1
            for j, (v, cap, _) in enumerate(graph[u]):
                if cap > 0 and v not in parent:
                    parent[v] = (u, j)
                    if v == sink:
                        break
                    queue.append(v)
        if sink not in parent:
            return False
        v = sink
        while v != source:
            u, j = parent[v]
            graph[u][j][1] -= 1
            graph[v][graph[u][j][2]][1] += 1
            v = u
        return True

    value = 0
    while bfs_augment():
        value += 1

    def saturated(arc: tuple[int, int]) -> bool:
        u, j = arc
        return graph[u][j][1] == 0

    # vertex capacities make the saturated edge set a union of disjoint
    # paths (plus flow cycles, which we simply never walk into)
    next_from: dict[int, tuple[int, int]] = {}
    for e in ids:
        if saturated(edge_arcs[e]):
            u, v = net.edges[e]
            next_from[u] = (e, v)
    paths: list[tuple[int, ...]] = []
    for s in sorted(net.sources):
        if not saturated(source_arcs[s]):
            continue
        path: list[int] = []
        cur = s
        while cur in next_from:
            e, cur = next_from.pop(cur)
            path.append(e)
        paths.append(tuple(path))
    return value, tuple(paths)


# ---------------------------------------------------------------------------
# rainbow systems of disjoint paths


@dataclass(frozen=True)
class DisjointPathsResult:
    """A rainbow edge set carrying at least p vertex-disjoint S-T paths."""

    edges: tuple[int, ...]
    function: ChoiceFunction            # family index -> network edge
    value: int                          # nu^P of the edge set
    witness_paths: tuple[tuple[int, ...], ...]


def rainbow_disjoint_paths(net: Network, families: Sequence[Iterable[int]],
                           p: int) -> DisjointPathsResult:
    """From 2p-1+q edge sets each packing p vertex-disjoint S-T paths
    (q = number of inner vertices), extract a rainbow set doing the same.

    Each family is reduced to a witness sub-digraph of p disjoint paths,
    pushed through the bipartite double, and a staircase rainbow-matching
    run over q wildcard copies of W followed by the family images yields
    the rainbow set; edges picked under a wildcard color or landing on W
    are discarded, which the counting identity absorbs.
    """
    if p < 1:
        raise HypothesisViolation(f"need p >= 1, got {p}")
    q = len(net.inner)
    sets = [frozenset(int(e) for e in f) for f in families]
    if len(sets) != 2 * p - 1 + q:
        raise HypothesisViolation(
            f"expected {2 * p - 1 + q} edge sets for p={p}, q={q}, got {len(sets)}",
            witness=len(sets),
        )
    bn = bipartify(net)
    images: list[frozenset[int]] = []
    for i, f in enumerate(sets):
        value, witness = nu_p(net, f)
        if value < p:
            raise HypothesisViolation(
                f"family {i} packs only {value} < {p} disjoint paths", witness=i
            )
        arb = LinearishArborescence(
            net, frozenset(e for path in witness[:p] for e in path)
        )
        image = phi(bn, arb)
        assert len(image) == p + q
        images.append(frozenset(image))

    w_class = frozenset(bn.w_edges)
    colors = tuple([w_class] * q + images)
    fam = EdgeFamily(bn.graph, colors)
    matching, function = max_rainbow_matching(fam, target=p + q)
    if len(matching) < p + q:
        raise TheoremViolation(
            "staircase rainbow matching of size %d not found in B(N)" % (p + q)
        )
    picked: list[tuple[int, int]] = []
    w = bn.w_edges
    back = {b: e for e, b in enumerate(bn.edge_image)}
    for color, b_edge in function.assignments:
        if color < q or b_edge in w:
            continue  # wildcard color, or a family color spent on a W edge
        picked.append((color - q, back[b_edge]))
    for fam_idx, e in picked:
        assert e in sets[fam_idx]
    edges = tuple(sorted(e for _, e in picked))
    value, witness = nu_p(net, edges)
    if value < p:
        raise TheoremViolation(
            "rainbow set packs only %d < %d disjoint paths" % (value, p)
        )
    return DisjointPathsResult(edges, ChoiceFunction(tuple(picked)), value, witness)


# ---------------------------------------------------------------------------
# weighted rainbow paths


@dataclass(frozen=True)
class RainbowPath:
    """An s-t path whose edges carry pairwise-distinct family colors."""

    edges: tuple[int, ...]
    colors: tuple[int, ...]
    weight: int

    def function(self) -> ChoiceFunction:
        return ChoiceFunction(tuple(zip(self.colors, self.edges)))


def validate_st_path(net: Network, path: Sequence[int], s: int, t: int):
    """Check the edge sequence is a simple directed s-t path."""
    if not path:
        raise InstanceError("empty path")
    visited = [s]
    cur = s
    for e in path:
        if not 0 <= e < net.num_edges:
            raise InstanceError(f"unknown edge id {e}")
        u, v = net.edges[e]
        if u != cur:
            raise InstanceError(
                f"edge {e} starts at {u}, expected {cur}: not a path"
            )
        if v in visited:
            raise InstanceError(f"path revisits vertex {v}")
        visited.append(v)
        cur = v
    if cur != t:
        raise InstanceError(f"path ends at {cur}, not at the target {t}")


def rainbow_path_weighted(net: Network, weights: WeightMap,
                          paths: Sequence[Sequence[int]], bound: int,
                          check_invariants: bool = False) -> RainbowPath:
    """A rainbow s-t path of weight at most the bound, grown as a nested
    sequence of s-rooted trees.

    At each step the cheapest extension w(tree-path to v) + w(e) over
    edges e of still-unrepresented paths leaving the tree is added; ties
    go to the smallest vertex id, then the smallest edge id; the edge's
    color is the smallest-index unrepresented path containing it.
    """
    s, t = net.single_terminals()
    n = net.n - 2
    if len(paths) < n + 1:
        raise HypothesisViolation(
            f"need at least {n + 1} paths for {n} inner vertices, got {len(paths)}"
        )
    if len(weights.weights) != net.num_edges:
        raise InstanceError("weight map length differs from the edge count")
    path_edges = [tuple(int(e) for e in p) for p in paths]
    for i, p in enumerate(path_edges):
        validate_st_path(net, p, s, t)
        if weights.total(p) > bound:
            raise HypothesisViolation(
                f"path {i} has weight {weights.total(p)} > bound {bound}", witness=i
            )

    # prefix weights per path, for the claimed tree invariant
    prefix: list[dict[int, int]] = []
    for p in path_edges:
        acc = 0
        d = {s: 0}
        for e in p:
            acc += weights.weight(e)
            d[net.edges[e][1]] = acc
        prefix.append(d)

    dist = {s: 0}
    parent: dict[int, tuple[int, int, int]] = {}  # v -> (u, edge, color)
    represented: set[int] = set()
    while t not in dist:
        unrep = [i for i in range(len(path_edges)) if i not in represented]
        if not unrep:
            raise TheoremViolation("all paths represented before reaching t")
        candidates: list[tuple[int, int, int]] = []
        pool = sorted({e for i in unrep for e in path_edges[i]})
        for e in pool:
            u, v = net.edges[e]
            if u in dist and v not in dist:
                candidates.append((dist[u] + weights.weight(e), u, e))
        if not candidates:
            raise TheoremViolation(
                "no unrepresented path leaves the current tree"
            )
        w_new, u, e = min(candidates)
        v = net.edges[e][1]
        color = min(i for i in unrep if e in path_edges[i])
        dist[v] = w_new
        parent[v] = (u, e, color)
        represented.add(color)
        if check_invariants:
            for i in range(len(path_edges)):
                if i in represented:
                    continue
                for x, via in prefix[i].items():
                    if x in dist:
                        assert dist[x] <= via, (
                            "tree invariant w(T_i u) <= w(P u) failed"
                        )

    edges_rev: list[int] = []
    colors_rev: list[int] = []
    cur = t
    while cur != s:
        u, e, color = parent[cur]
        edges_rev.append(e)
        colors_rev.append(color)
        cur = u
    result = RainbowPath(
        tuple(reversed(edges_rev)), tuple(reversed(colors_rev)), dist[t]
    )
    if result.weight > bound:
        raise TheoremViolation(
            "returned path weight %d exceeds the bound %d" % (result.weight, bound)
        )
    return result


# ---------------------------------------------------------------------------
# towers and path enforcers


@dataclass(frozen=True)
class TowerPair:
    """Vertex-disjoint n-fold source and target towers: orderings from s
    (and to t) where every later vertex receives (sends) enough edges from
    (to) the earlier tower vertices."""

    source_order: tuple[int, ...]
    source_sets: tuple[frozenset[int], ...]   # per source_order[1:]
    target_order: tuple[int, ...]
    target_sets: tuple[frozenset[int], ...]   # per target_order[1:]

    @property
    def source_vertices(self) -> frozenset[int]:
        return frozenset(self.source_order)

    @property
    def target_vertices(self) -> frozenset[int]:
        return frozenset(self.target_order)


def build_towers(net: Network, n: int,
                 weight: Optional[Mapping[int, int]] = None) -> TowerPair:
    """Greedy maximal pair of vertex-disjoint n-fold towers.

    Each round tries to extend the source tower first, then the target
    tower, smallest vertex id first, until neither grows.  When a weight
    map is given (e.g. path multiplicities) edge sets count by weight and
    zero-weight edges are ignored; the default weighs every edge 1.
    """
    s, t = net.single_terminals()
    if n < 1:
        raise InstanceError("towers need n >= 1")

    def wt(e: int) -> int:
        return 1 if weight is None else int(weight.get(e, 0))

    src_order, src_sets = [s], []
    tgt_order, tgt_sets = [t], []

    def try_extend(order: list[int], sets_acc: list[frozenset[int]],
                   into: bool) -> bool:
        members = set(src_order) | set(tgt_order)
        own = set(order)
        for w in range(net.n):
            if w in members:
                continue
            if into:
                es = [e for e, (a, b) in enumerate(net.edges)
                      if b == w and a in own and wt(e) > 0]
            else:
                es = [e for e, (a, b) in enumerate(net.edges)
                      if a == w and b in own and wt(e) > 0]
            if sum(wt(e) for e in es) >= n:
                order.append(w)
                sets_acc.append(frozenset(es))
                return True
        return False

    while True:
        if try_extend(src_order, src_sets, into=True):
            continue
        if try_extend(tgt_order, tgt_sets, into=False):
            continue
        break
    return TowerPair(
        tuple(src_order), tuple(src_sets), tuple(tgt_order), tuple(tgt_sets)
    )


@dataclass(frozen=True)
class PathEnforcer:
    """Edge sets whose every full choice function contains an s-t path and
    whose subfamily unions are large: |union K'| >= n(|K'|-1)+1."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "sets", tuple(frozenset(int(e) for e in s) for s in self.sets)
        )


def enforcer_union_bounds(enforcer: PathEnforcer, n: int,
                          weight: Optional[Mapping[int, int]] = None) -> bool:
    """Exact subset check of the union lower bounds, optionally weighted."""
    sets = enforcer.sets
    if len(sets) > ENFORCER_SIZE_CAP:
        raise ResourceCapError(
            f"enforcer subset check capped at {ENFORCER_SIZE_CAP} sets"
        )
    for mask in range(1, 1 << len(sets)):
        union: set[int] = set()
        count = 0
        for i in range(len(sets)):
            if mask >> i & 1:
                union |= sets[i]
                count += 1
        total = (len(union) if weight is None
                 else sum(int(weight.get(e, 0)) for e in union))
        if total < n * (count - 1) + 1:
            return False
    return True


def enforcer_always_has_path(net: Network, enforcer: PathEnforcer,
                             cap: int = 10**5) -> bool:
    """Brute-force check that every full choice function contains an s-t
    path; feasible only while the product of the set sizes is small."""
    import itertools as _it

    s, t = net.single_terminals()
    product = 1
    for k in enforcer.sets:
        product *= max(1, len(k))
    if product > cap:
        raise ResourceCapError(
            f"enforcer choice space of size {product} exceeds the cap {cap}"
        )
    for combo in _it.product(*(sorted(k) for k in enforcer.sets)):
        if not _edges_reach(net, frozenset(combo), s, t):
            return False
    return True


def _edges_reach(net: Network, edge_ids: frozenset[int], s: int, t: int) -> bool:
    reach = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for e in edge_ids:
            u, v = net.edges[e]
            if u in reach and v not in reach:
                reach.add(v)
                nxt.append(v)
        frontier = nxt
    return t in reach


def _extract_path(net: Network, chosen: dict[int, int], s: int, t: int
                  ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shortest s-t path inside the chosen (edge -> color) set by BFS."""
    parent: dict[int, tuple[int, int]] = {s: (-1, -1)}
    queue = [s]
    qi = 0
    while qi < len(queue) and t not in parent:
        u = queue[qi]
        qi += 1
        for e in sorted(chosen):
            a, b = net.edges[e]
            if a == u and b not in parent:
                parent[b] = (u, e)
                queue.append(b)
    if t not in parent:
        raise TheoremViolation("chosen enforcer edges contain no s-t path")
    edges_rev, colors_rev = [], []
    cur = t
    while cur != s:
        u, e = parent[cur]
        edges_rev.append(e)
        colors_rev.append(chosen[e])
        cur = u
    return tuple(reversed(edges_rev)), tuple(reversed(colors_rev))


@dataclass(frozen=True)
class ScrambledPathResult:
    """A rainbow s-t path with the enforcer and towers that produced it."""

    path: RainbowPath
    enforcer: PathEnforcer
    towers: TowerPair
    pivot_vertex: Optional[int]   # the heavy inner vertex, if that case fired


def scrambled_rainbow_path(net: Network, paths: Sequence[Sequence[int]],
                           scrambling: Sequence[Iterable[int]], n: int
                           ) -> ScrambledPathResult:
    """A rainbow s-t path with respect to an n-scrambling of more than
    n*k/2 s-t paths (k = number of inner vertices).

    Builds a maximal pair of n-fold towers (edge counts weighted by path
    multiplicity), forms a path enforcer from the tower sets plus either a
    heavy inner vertex's edges or a tower-to-tower edge, matches enforcer
    members to scrambling classes, and reads the path off the choices.
    """
    s, t = net.single_terminals()
    k = net.n - 2
    path_edges = [tuple(int(e) for e in p) for p in paths]
    for p in path_edges:
        validate_st_path(net, p, s, t)
    if 2 * len(path_edges) <= n * k:
        raise HypothesisViolation(
            f"need more than n*k/2 = {n * k / 2:g} paths, got {len(path_edges)}"
        )
    classes = validate_scrambling(path_edges, scrambling, n)
    mult = Counter(e for p in path_edges for e in p)

    towers = build_towers(net, n, weight=mult)
    src, tgt = towers.source_vertices, towers.target_vertices

    def live_edges(pred) -> list[int]:
        return [e for e, (a, b) in enumerate(net.edges)
                if mult.get(e, 0) > 0 and pred(a, b)]

    pivot = None
    heavy_sets: list[frozenset[int]] = []
    for w in sorted(set(range(net.n)) - src - tgt):
        into_w = live_edges(lambda a, b, w=w: b == w and a in src)
        from_w = live_edges(lambda a, b, w=w: a == w and b in tgt)
        if sum(mult[e] for e in into_w) + sum(mult[e] for e in from_w) > n:
            if not into_w or not from_w:
                raise TheoremViolation(
                    "a heavy inner vertex misses one side despite maximal towers"
                )
            pivot = w
            heavy_sets = [frozenset(into_w), frozenset(from_w)]
            break
    if pivot is None:
        bridges = live_edges(lambda a, b: a in src and b in tgt)
        if not bridges:
            raise TheoremViolation(
                "no tower-to-tower edge despite the double-count guarantee"
            )
        heavy_sets = [frozenset({min(bridges)})]

    enforcer = PathEnforcer(
        tuple(towers.source_sets) + tuple(towers.target_sets) + tuple(heavy_sets)
    )
    if not enforcer_union_bounds(enforcer, n, weight=mult):
        raise TheoremViolation("enforcer union lower bounds fail")

    # match enforcer members to scrambling classes through shared edges
    class_sets = [frozenset(c) for c in classes]
    member_match: dict[int, int] = {}  # class -> member

    def aug(i: int, vis: set[int]) -> bool:
        for c, cl in enumerate(class_sets):
            if c in vis or not (enforcer.sets[i] & cl):
                continue
            vis.add(c)
            if c not in member_match or aug(member_match[c], vis):
                member_match[c] = i
                return True
        return False

    for i in range(len(enforcer.sets)):
        if not aug(i, set()):
            raise TheoremViolation(
                "no system of distinct scrambling classes for the enforcer"
            )
    chosen: dict[int, int] = {}
    for c, i in member_match.items():
        e = min(enforcer.sets[i] & class_sets[c])
        chosen[e] = c
    edges, colors = _extract_path(net, chosen, s, t)
    path = RainbowPath(edges, colors, len(edges))
    return ScrambledPathResult(path, enforcer, towers, pivot)
