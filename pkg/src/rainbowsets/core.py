"""Core combinatorial value types: ground sets, colored families, choice
functions, graphs, matchings, networks, weights, Latin squares.

All values are immutable after construction; elements, edges and colors are
dense integer ids, which keeps serialization canonical and lets the search
kernels work on bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional


class InstanceError(ValueError):
    """An instance violates the schema or a structural invariant."""


class HypothesisViolation(InstanceError):
    """An operation's hypothesis fails; carries a witness of the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceCapError(RuntimeError):
    """A search exceeded its configured instance/size/time cap."""


class TheoremViolation(RuntimeError):
    """An internal assertion backed by a proved theorem failed.

    This exception firing is always a bug (or a genuinely startling
    mathematical event); the CLI maps it to exit code 5.
    """


# ---------------------------------------------------------------------------
# ground sets and colored families


@dataclass(frozen=True)
class GroundSet:
    """A finite ground set; elements are the dense integers 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise InstanceError(f"ground size must be >= 0, got {self.size}")

    @property
    def elements(self) -> range:
        return range(self.size)

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.size


@dataclass(frozen=True)
class ColoredFamily:
    """An indexed multiset of element subsets; the index is the color."""

    ground: GroundSet
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for i, s in enumerate(self.sets):
            for x in s:
                if x not in self.ground:
                    raise InstanceError(
                        f"colors[{i}]: element {x} outside ground of size {self.ground.size}"
                    )

    @property
    def num_colors(self) -> int:
        return len(self.sets)

    def union(self, colors: Iterable[int]) -> frozenset[int]:
        return family_union(self, colors)


def family_union(fam: ColoredFamily, colors: Iterable[int]) -> frozenset[int]:
    """Union of the indexed color classes."""
    out: set[int] = set()
    for i in colors:
        if not 0 <= i < fam.num_colors:
            raise InstanceError(f"color index {i} out of range 0..{fam.num_colors - 1}")
        out |= fam.sets[i]
    return frozenset(out)


@dataclass(frozen=True)
class ChoiceFunction:
    """An injective partial map color -> element, with provenance retained."""

    assignments: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(c), int(x)) for c, x in self.assignments))
        colors = [c for c, _ in pairs]
        if len(set(colors)) != len(colors):
            raise InstanceError("choice function assigns a color twice")
        object.__setattr__(self, "assignments", pairs)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "ChoiceFunction":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignments)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.assignments)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(x for _, x in self.assignments)

    def __len__(self) -> int:
        return len(self.assignments)

    def __getitem__(self, color: int) -> int:
        for c, x in self.assignments:
            if c == color:
                return x
        raise KeyError(color)

    def is_full_for(self, fam: ColoredFamily) -> bool:
        return self.domain == frozenset(range(fam.num_colors))


def is_rainbow(fam: ColoredFamily, f: ChoiceFunction) -> bool:
    """True iff f satisfies membership and injectivity against fam."""
    seen: set[int] = set()
    for c, x in f.assignments:
        if not 0 <= c < fam.num_colors:
            return False
        if x not in fam.sets[c]:
            return False
        if x in seen:
            return False
        seen.add(x)
    return True


# ---------------------------------------------------------------------------
# graphs and matchings


@dataclass(frozen=True)
class Graph:
    """An undirected multigraph; edge identity is positional (by id)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    bipartition: Optional[tuple[frozenset[int], frozenset[int]]] = None

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"graph.edges[{i}]: endpoint out of range")
            if u == v:
                raise InstanceError(f"graph.edges[{i}]: loop at vertex {u}")
        if self.bipartition is not None:
            a, b = (frozenset(self.bipartition[0]), frozenset(self.bipartition[1]))
            object.__setattr__(self, "bipartition", (a, b))
            if a & b:
                raise InstanceError("bipartition classes overlap")
            if a | b != frozenset(range(self.n)):
                raise InstanceError("bipartition classes must cover all vertices")
            for i, (u, v) in enumerate(self.edges):
                if (u in a) == (v in a):
                    raise InstanceError(
                        f"graph.edges[{i}]: edge ({u},{v}) does not cross the bipartition"
                    )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_mask(self, e: int) -> int:
        u, v = self.edges[e]
        return (1 << u) | (1 << v)

    def incident(self, v: int) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if v in (a, b)]


def find_bipartition(g: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """2-color g; returns the classes or None if an odd cycle exists."""
    if g.bipartition is not None:
        return g.bipartition
    color = [-1] * g.n
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return None
    side0 = frozenset(v for v in range(g.n) if color[v] == 0)
    return side0, frozenset(range(g.n)) - side0


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edge ids within some graph."""

    edges: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(int(e) for e in self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def of(cls, g: Graph, edge_ids: Iterable[int]) -> "Matching":
        ids = frozenset(edge_ids)
        if not matching_check(g, ids):
            raise InstanceError("edge set is not a matching")
        return cls(ids)


def matching_check(g: Graph, edge_ids: Iterable[int]) -> bool:
    """True iff the edges are pairwise vertex-disjoint."""
    used = 0
    for e in edge_ids:
        if not 0 <= e < g.num_edges:
            raise InstanceError(f"unknown edge id {e}")
        m = g.edge_mask(e)
        if used & m:
            return False
        used |= m
    return True


def _kuhn_max_matching(left: list[int], adj: dict[int, list[tuple[int, int]]]) -> dict[int, int]:
    """Augmenting-path bipartite matching; returns {edge_id: 1} keyed selection.

    adj maps a left vertex to (edge_id, right_vertex) pairs in id order.
    """
    match_right: dict[int, tuple[int, int]] = {}  # right vertex -> (left, edge)

    def try_augment(u: int, visited: set[int]) -> bool:
        for e, v in adj.get(u, ()):
            if v in visited:
                continue
            visited.add(v)
            if v not in match_right or try_augment(match_right[v][0], visited):
                match_right[v] = (u, e)
                return True
        return False

    for u in sorted(left):
        try_augment(u, set())
    return {e: 1 for (_, e) in match_right.values()}


def _max_matching_general(edge_ids: list[int], masks: list[int]) -> frozenset[int]:
    """Exact maximum matching by branch and bound; for small general graphs."""
    order = sorted(range(len(edge_ids)), key=lambda i: edge_ids[i])
    best: list[frozenset[int]] = [frozenset()]

    def bound(used: int, pool: list[int]) -> int:
        # valid upper bound on edges still addable: half the free vertices
        free = 0
        verts = 0
        for i in pool:
            if not masks[i] & used:
                free += 1
                verts |= masks[i] & ~used
        return min(free, bin(verts).count("1") // 2)

    def search(used: int, pool: list[int], chosen: list[int]):
        pool = [i for i in pool if not masks[i] & used]
        if len(chosen) + bound(used, pool) <= len(best[0]):
            return
        if not pool:
            if len(chosen) > len(best[0]):
                best[0] = frozenset(edge_ids[i] for i in chosen)
            return
        # branch on the lowest free vertex: either some incident edge or none
        low = min(masks[i] & -(masks[i]) for i in pool)
        incident = [i for i in pool if masks[i] & low]
        others = [i for i in pool if not masks[i] & low]
        for i in incident:
            chosen.append(i)
            search(used | masks[i], pool, chosen)
            chosen.pop()
        search(used | low, others, chosen)

    search(0, order, [])
    return best[0]


def max_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching.

    Bipartite graphs (declared or detected) use augmenting paths; other
    graphs use exact branch and bound, intended for desk-scale instances.
    """
    sides = find_bipartition(g)
    if sides is not None:
        left_side = sides[0]
        adj: dict[int, list[tuple[int, int]]] = {}
        for e, (u, v) in enumerate(g.edges):
            lu, rv = (u, v) if u in left_side else (v, u)
            adj.setdefault(lu, []).append((e, rv))
        for lst in adj.values():
            lst.sort()
        picked = _kuhn_max_matching(sorted(left_side), adj)
        return Matching(frozenset(picked))
    if g.n > 24:
        raise ResourceCapError(
            f"exact general matching capped at 24 vertices, got {g.n}"
        )
    masks = [g.edge_mask(e) for e in range(g.num_edges)]
    return Matching(_max_matching_general(list(range(g.num_edges)), masks))


# ---------------------------------------------------------------------------
# directed networks


@dataclass(frozen=True)
class Network:
    """A digraph with disjoint source/target sets; no edge enters a source
    and no edge leaves a target."""

    n: int
    edges: tuple[tuple[int, int], ...]
    sources: frozenset[int]
    targets: frozenset[int]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        object.__setattr__(self, "sources", frozenset(self.sources))
        object.__setattr__(self, "targets", frozenset(self.targets))
        for v in self.sources | self.targets:
            if not 0 <= v < self.n:
                raise InstanceError(f"terminal vertex {v} out of range")
        if self.sources & self.targets:
            raise InstanceError("sources and targets must be disjoint")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"network.edges[{i}]: endpoint out of range")
            if u == v:
                raise InstanceError(f"network.edges[{i}]: loop at vertex {u}")
            if v in self.sources:
                raise InstanceError(
                    f"network.edges[{i}]: edge ({u},{v}) enters a source"
                )
            if u in self.targets:
                raise InstanceError(
                    f"network.edges[{i}]: edge ({u},{v}) leaves a target"
                )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def inner(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.sources - self.targets

    def single_terminals(self) -> tuple[int, int]:
        """The unique (s, t) pair; raises unless |S| = |T| = 1."""
        if len(self.sources) != 1 or len(self.targets) != 1:
            raise InstanceError("operation requires a single source and target")
        return next(iter(self.sources)), next(iter(self.targets))


@dataclass(frozen=True)
class WeightMap:
    """Nonnegative integer weights, parallel to a network's edge list."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        for i, w in enumerate(self.weights):
            if w < 0:
                raise InstanceError(f"weights[{i}]: negative weight {w}")

    def weight(self, e: int) -> int:
        return self.weights[e]

    def total(self, edge_ids: Iterable[int]) -> int:
        return sum(self.weights[e] for e in edge_ids)

    @classmethod
    def zeros(cls, num_edges: int) -> "WeightMap":
        return cls((0,) * num_edges)


# ---------------------------------------------------------------------------
# Latin squares


@dataclass(frozen=True)
class LatinSquare:
    """An n x n array over 1..n whose rows and columns are permutations."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "rows", tuple(tuple(int(x) for x in row) for row in self.rows)
        )
        n = self.n
        if len(self.rows) != n:
            raise InstanceError(f"latin: expected {n} rows, got {len(self.rows)}")
        full = set(range(1, n + 1))
        for r, row in enumerate(self.rows):
            if len(row) != n:
                raise InstanceError(f"latin[{r}]: expected {n} entries")
            seen: dict[int, int] = {}
            for c, x in enumerate(row):
                if x not in full:
                    raise InstanceError(f"latin[{r}][{c}]: symbol {x} outside 1..{n}")
                if x in seen:
                    raise InstanceError(
                        f"latin[{r}][{c}]: symbol {x} repeats in row (also at column {seen[x]})"
                    )
                seen[x] = c
        for c in range(n):
            seen = {}
            for r in range(n):
                x = self.rows[r][c]
                if x in seen:
                    raise InstanceError(
                        f"latin[{r}][{c}]: symbol {x} repeats in column (also at row {seen[x]})"
                    )
                seen[x] = r

    def entry(self, r: int, c: int) -> int:
        return self.rows[r][c]


@dataclass(frozen=True)
class Transversal:
    """Cells of a Latin square with distinct rows, columns, and symbols."""

    cells: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(
            self, "cells", frozenset((int(r), int(c)) for r, c in self.cells)
        )

    def __len__(self) -> int:
        return len(self.cells)

    @classmethod
    def of(cls, square: LatinSquare, cells: Iterable[tuple[int, int]]) -> "Transversal":
        t = cls(frozenset(cells))
        if not transversal_check(square, t.cells):
            raise InstanceError("cells do not form a transversal")
        return t


def transversal_check(square: LatinSquare, cells: Iterable[tuple[int, int]]) -> bool:
    """True iff the cells have pairwise distinct rows, columns and symbols."""
    rows: set[int] = set()
    cols: set[int] = set()
    syms: set[int] = set()
    for r, c in cells:
        if not (0 <= r < square.n and 0 <= c < square.n):
            raise InstanceError(f"cell ({r},{c}) out of range")
        if r in rows or c in cols or square.rows[r][c] in syms:
            return False
        rows.add(r)
        cols.add(c)
        syms.add(square.rows[r][c])
    return True
