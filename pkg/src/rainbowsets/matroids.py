"""Matroids as independence oracles: concrete constructions, rank and span,
matroid intersection by augmenting paths, and exact covering numbers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from ._gf2 import gf2_independent
from .core import Graph, InstanceError, ResourceCapError

COVER_GROUND_CAP = 16


class IndependenceOracle:
    """A matroid presented by its independence predicate.

    The descriptor records the construction (kind + parameters) so oracles
    can be serialized; results of the predicate are memoized.
    """

    def __init__(self, ground_size: int, predicate: Callable[[frozenset[int]], bool],
                 descriptor: dict):
        if ground_size < 0:
            raise InstanceError("ground size must be >= 0")
        self.ground_size = ground_size
        self._pred = predicate
        self.descriptor = descriptor
        self._cache: dict[frozenset[int], bool] = {}

    def is_independent(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        for x in s:
            if not 0 <= x < self.ground_size:
                raise InstanceError(f"element {x} outside ground of size {self.ground_size}")
        hit = self._cache.get(s)
        if hit is None:
            hit = self._cache[s] = bool(self._pred(s))
        return hit

    def rank(self, subset: Optional[Iterable[int]] = None) -> int:
        """Size of a maximal independent subset, built greedily."""
        pool = sorted(range(self.ground_size) if subset is None else set(subset))
        acc: set[int] = set()
        for x in pool:
            if self.is_independent(acc | {x}):
                acc.add(x)
        return len(acc)

    def max_independent_subset(self, subset: Optional[Iterable[int]] = None) -> frozenset[int]:
        pool = sorted(range(self.ground_size) if subset is None else set(subset))
        acc: set[int] = set()
        for x in pool:
            if self.is_independent(acc | {x}):
                acc.add(x)
        return frozenset(acc)

    def in_span(self, subset: Iterable[int], x: int) -> bool:
        """True iff adding x does not raise the rank of the subset."""
        s = set(subset)
        if not 0 <= x < self.ground_size:
            raise InstanceError(f"element {x} outside ground of size {self.ground_size}")
        if x in s:
            return True
        return self.rank(s | {x}) == self.rank(s)

    def loops(self) -> frozenset[int]:
        return frozenset(
            x for x in range(self.ground_size) if not self.is_independent({x})
        )

    def __repr__(self) -> str:
        return f"IndependenceOracle({self.descriptor.get('kind', '?')}, m={self.ground_size})"


# ---------------------------------------------------------------------------
# constructions


def partition_matroid(ground_size: int, parts: list[Iterable[int]],
                      caps: Optional[list[int]] = None) -> IndependenceOracle:
    """Independent iff each part holds at most its capacity (default 1).

    Elements in no part are free: they never count against any capacity.
    """
    part_sets = [frozenset(p) for p in parts]
    if caps is None:
        caps = [1] * len(part_sets)
    if len(caps) != len(part_sets):
        raise InstanceError("parts and caps must have equal length")
    seen: set[int] = set()
    for i, p in enumerate(part_sets):
        for x in p:
            if not 0 <= x < ground_size:
                raise InstanceError(f"parts[{i}]: element {x} out of range")
            if x in seen:
                raise InstanceError(f"parts overlap at element {x}")
        seen |= p
    for i, c in enumerate(caps):
        if c < 0:
            raise InstanceError(f"caps[{i}]: negative capacity")

    def pred(s: frozenset[int]) -> bool:
        return all(len(s & p) <= c for p, c in zip(part_sets, caps))

    desc = {
        "kind": "partition",
        "ground_size": ground_size,
        "parts": [sorted(p) for p in part_sets],
        "caps": list(caps),
    }
    return IndependenceOracle(ground_size, pred, desc)


def uniform_matroid(ground_size: int, k: int) -> IndependenceOracle:
    """Independent iff size at most k."""
    if k < 0:
        raise InstanceError("uniform matroid needs k >= 0")
    desc = {"kind": "uniform", "ground_size": ground_size, "k": k}
    return IndependenceOracle(ground_size, lambda s: len(s) <= k, desc)


def free_matroid(ground_size: int) -> IndependenceOracle:
    desc = {"kind": "free", "ground_size": ground_size}
    return IndependenceOracle(ground_size, lambda s: True, desc)


def graphic_matroid(g: Graph) -> IndependenceOracle:
    """Ground = edge ids of g; independent iff the edge set is acyclic."""

    def pred(s: frozenset[int]) -> bool:
        parent = list(range(g.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in s:
            u, v = g.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    desc = {
        "kind": "graphic",
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
    }
    return IndependenceOracle(g.num_edges, pred, desc)


def binary_matroid(columns: list[int]) -> IndependenceOracle:
    """Ground = column indices; independent iff the columns (int bitsets
    over GF(2)) are linearly independent."""
    cols = [int(c) for c in columns]

    def pred(s: frozenset[int]) -> bool:
        return gf2_independent([cols[i] for i in sorted(s)])

    nbits = max((c.bit_length() for c in cols), default=0)
    desc = {
        "kind": "binary",
        "matrix": [[(c >> r) & 1 for c in cols] for r in range(nbits)],
    }
    return IndependenceOracle(len(cols), pred, desc)


def truncate(m: IndependenceOracle, k: int) -> IndependenceOracle:
    """Independent iff independent in m and of size at most k."""
    if k < 0:
        raise InstanceError("truncation needs k >= 0")
    desc = {"kind": "truncation", "k": k, "inner": m.descriptor}
    return IndependenceOracle(
        m.ground_size, lambda s: len(s) <= k and m.is_independent(s), desc
    )


def direct_sum(m: IndependenceOracle, n: IndependenceOracle) -> IndependenceOracle:
    """Disjoint union; n's elements are shifted up by m's ground size."""
    off = m.ground_size

    def pred(s: frozenset[int]) -> bool:
        left = frozenset(x for x in s if x < off)
        right = frozenset(x - off for x in s if x >= off)
        return m.is_independent(left) and n.is_independent(right)

    desc = {"kind": "direct-sum", "left": m.descriptor, "right": n.descriptor}
    return IndependenceOracle(off + n.ground_size, pred, desc)


def from_descriptor(desc: dict, default_ground: Optional[int] = None) -> IndependenceOracle:
    """Rebuild an oracle from its serialized descriptor."""
    kind = desc.get("kind")
    ground = desc.get("ground_size", default_ground)
    if kind == "partition":
        if ground is None:
            raise InstanceError("matroid.partition: ground_size required")
        return partition_matroid(ground, desc["parts"], desc.get("caps"))
    if kind == "uniform":
        if ground is None:
            raise InstanceError("matroid.uniform: ground_size required")
        return uniform_matroid(ground, desc["k"])
    if kind == "free":
        if ground is None:
            raise InstanceError("matroid.free: ground_size required")
        return free_matroid(ground)
    if kind == "graphic":
        gdesc = desc["graph"]
        return graphic_matroid(Graph(gdesc["n"], tuple(tuple(e) for e in gdesc["edges"])))
    if kind == "binary":
        rows = desc["matrix"]
        ncols = len(rows[0]) if rows else (ground or 0)
        cols = [sum((row[j] & 1) << i for i, row in enumerate(rows)) for j in range(ncols)]
        return binary_matroid(cols)
    if kind == "truncation":
        return truncate(from_descriptor(desc["inner"], default_ground), desc["k"])
    if kind == "direct-sum":
        return direct_sum(
            from_descriptor(desc["left"]), from_descriptor(desc["right"])
        )
    raise InstanceError(f"matroid.kind: unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# matroid intersection


def _intersection_augment(m1: IndependenceOracle, m2: IndependenceOracle
                          ) -> tuple[frozenset[int], frozenset[int]]:
    """Max common independent set plus the final source-reachable set.

    Shortest augmenting paths in the exchange graph; BFS explores elements
    in ascending order, which fixes the outcome deterministically.
    """
    if m1.ground_size != m2.ground_size:
        raise InstanceError("matroid intersection needs a shared ground set")
    m = m1.ground_size
    current: set[int] = set()
    while True:
        in_i = current
        out_i = [y for y in range(m) if y not in in_i]
        sources = [y for y in out_i if m1.is_independent(in_i | {y})]
        sinks = {y for y in out_i if m2.is_independent(in_i | {y})}
        parent: dict[int, int] = {y: -1 for y in sources}
        queue = list(sources)
        found = None
        for y in queue:
            if y in sinks:
                found = y
                break
        qi = 0
        while found is None and qi < len(queue):
            u = queue[qi]
            qi += 1
            if u in in_i:
                # m1-exchange arcs u (in I) -> y (out of I)
                nbrs = [
                    y for y in out_i
                    if y not in parent and m1.is_independent((in_i - {u}) | {y})
                ]
            else:
                # m2-exchange arcs u (out of I) -> x (in I)
                nbrs = [
                    x for x in sorted(in_i)
                    if x not in parent and m2.is_independent((in_i - {x}) | {u})
                ]
            for v in sorted(nbrs):
                parent[v] = u
                if v in sinks:
                    found = v
                    break
                queue.append(v)
        if found is None:
            return frozenset(current), frozenset(parent)
        path = [found]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        current ^= set(path)


def matroid_intersection(m1: IndependenceOracle, m2: IndependenceOracle) -> frozenset[int]:
    """A maximum-cardinality set independent in both matroids."""
    best, _ = _intersection_augment(m1, m2)
    return best


# ---------------------------------------------------------------------------
# covering numbers


@dataclass(frozen=True)
class SetComplex:
    """A downward-closed set system given by its membership predicate."""

    ground_size: int
    predicate: Callable[[frozenset[int]], bool]

    def is_independent(self, subset: Iterable[int]) -> bool:
        return bool(self.predicate(frozenset(subset)))


def intersection_complex(m1: IndependenceOracle, m2: IndependenceOracle) -> SetComplex:
    if m1.ground_size != m2.ground_size:
        raise InstanceError("intersection complex needs a shared ground set")
    return SetComplex(
        m1.ground_size,
        lambda s: m1.is_independent(s) and m2.is_independent(s),
    )


def _maximal_member_masks(complex_like) -> list[int]:
    m = complex_like.ground_size
    members = bytearray(1 << m)
    members[0] = 1
    for mask in range(1, 1 << m):
        low = mask & -mask
        if members[mask ^ low] and complex_like.is_independent(
            frozenset(i for i in range(m) if mask >> i & 1)
        ):
            members[mask] = 1
    member_set = {mask for mask in range(1 << m) if members[mask]}
    maximal = []
    full = (1 << m) - 1
    for mask in member_set:
        if all((mask | (1 << i)) not in member_set
               for i in range(m) if not mask >> i & 1) or mask == full:
            maximal.append(mask)
    return sorted(maximal)


def covering_number(complex_like) -> tuple[int, list[frozenset[int]]]:
    """Minimum number of member sets covering the ground, with a witness.

    Exact branch-and-bound set cover over the maximal members; the ground
    is capped at COVER_GROUND_CAP elements.
    """
    m = complex_like.ground_size
    if m == 0:
        return 0, []
    if m > COVER_GROUND_CAP:
        raise ResourceCapError(
            f"covering number capped at ground size {COVER_GROUND_CAP}, got {m}"
        )
    for x in range(m):
        if not complex_like.is_independent({x}):
            raise InstanceError(f"element {x} is a loop: no finite cover exists")
    sets = _maximal_member_masks(complex_like)
    full = (1 << m) - 1

    # greedy start for the upper bound
    greedy: list[int] = []
    uncovered = full
    while uncovered:
        pick = max(sets, key=lambda s: (bin(s & uncovered).count("1"), -s))
        greedy.append(pick)
        uncovered &= ~pick
    best: list[list[int]] = [greedy]
    max_size = max(bin(s).count("1") for s in sets)

    cover_sets_of: dict[int, list[int]] = {
        x: [s for s in sets if s >> x & 1] for x in range(m)
    }

    def bnb(uncovered: int, chosen: list[int]):
        if not uncovered:
            if len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        need = bin(uncovered).count("1")
        if len(chosen) + (need + max_size - 1) // max_size >= len(best[0]):
            return
        # branch on the uncovered element with the fewest covering sets
        elt = min(
            (x for x in range(m) if uncovered >> x & 1),
            key=lambda x: (len(cover_sets_of[x]), x),
        )
        for s in cover_sets_of[elt]:
            chosen.append(s)
            bnb(uncovered & ~s, chosen)
            chosen.pop()

    bnb(full, [])
    witness = [
        frozenset(i for i in range(m) if s >> i & 1) for s in best[0]
    ]
    return len(best[0]), witness


@dataclass(frozen=True)
class TwoCoverReport:
    """The three covering numbers of a matroid pair and their intersection,
    with witnesses, plus whether rho(M meet N) <= 2 max(rho(M), rho(N))."""

    rho_m: int
    rho_n: int
    rho_meet: int
    cover_m: tuple[frozenset[int], ...]
    cover_n: tuple[frozenset[int], ...]
    cover_meet: tuple[frozenset[int], ...]

    @property
    def holds(self) -> bool:
        return self.rho_meet <= 2 * max(self.rho_m, self.rho_n)


def check_two_cover(m1: IndependenceOracle, m2: IndependenceOracle) -> TwoCoverReport:
    """Compute rho(M), rho(N), rho(M meet N) and check the 2-max inequality."""
    if m1.ground_size != m2.ground_size:
        raise InstanceError("check_two_cover needs a shared ground set")
    rho_m, cov_m = covering_number(m1)
    rho_n, cov_n = covering_number(m2)
    rho_meet, cov_meet = covering_number(intersection_complex(m1, m2))
    return TwoCoverReport(
        rho_m, rho_n, rho_meet, tuple(cov_m), tuple(cov_n), tuple(cov_meet)
    )
