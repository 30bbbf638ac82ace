"""Desk-scale verification and counterexample hunting for the conjectures
the core modules make checkable: Latin-square transversals, scrambled Rota
covers, weighted rainbow matchings, short rainbow cycles, and scrambled
matching sharpness."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .core import (
    Graph,
    HypothesisViolation,
    InstanceError,
    LatinSquare,
    Transversal,
)
from .matching import (
    EdgeFamily,
    max_rainbow_matching,
    random_matching_family,
    validate_scrambling,
)
from .matroids import (
    IndependenceOracle,
    binary_matroid,
    covering_number,
    from_descriptor,
    graphic_matroid,
    partition_matroid,
    truncate,
    uniform_matroid,
)
from .sweeps import SweepReport, SweepRun, SweepSpec


# ---------------------------------------------------------------------------
# Latin squares


def cyclic_square(n: int) -> LatinSquare:
    """The addition table of the cyclic group of order n."""
    return LatinSquare(
        n, tuple(tuple((i + j) % n + 1 for j in range(n)) for i in range(n))
    )


def latin_transversal(square: LatinSquare) -> Transversal:
    """A maximum partial transversal, by branch and bound over rows with
    column/symbol bitmasks (rows may be skipped)."""
    n = square.n
    best: list[list[tuple[int, int]]] = [[]]

    def rec(row: int, cols: int, syms: int, acc: list[tuple[int, int]]):
        if len(acc) + (n - row) <= len(best[0]):
            return
        if row == n:
            best[0] = list(acc)
            return
        for col in range(n):
            if cols >> col & 1:
                continue
            sym = square.rows[row][col]
            if syms >> sym & 1:
                continue
            acc.append((row, col))
            rec(row + 1, cols | (1 << col), syms | (1 << sym), acc)
            acc.pop()
        rec(row + 1, cols, syms, acc)

    rec(0, 0, 0, [])
    return Transversal(frozenset(best[0]))


def enumerate_latin_squares(n: int, reduced: bool = True) -> Iterator[LatinSquare]:
    """All Latin squares of order n by row-by-row extension.

    With reduced=True only squares whose first row is 1..n are produced;
    every square is a column permutation of exactly one of these, and
    transversal sizes are invariant under column permutations.
    """
    if n == 0:
        return
    first_rows = (
        [tuple(range(1, n + 1))] if reduced
        else [tuple(p) for p in itertools.permutations(range(1, n + 1))]
    )
    for first in first_rows:
        rows = [first]
        col_used = [1 << s for s in first]

        def extend(r: int) -> Iterator[LatinSquare]:
            if r == n:
                yield LatinSquare(n, tuple(rows))
                return
            row: list[int] = []
            used = 0

            def cells(c: int) -> Iterator[LatinSquare]:
                if c == n:
                    rows.append(tuple(row))
                    for col, s in enumerate(row):
                        col_used[col] |= 1 << s
                    yield from extend(r + 1)
                    rows.pop()
                    for col, s in enumerate(row):
                        col_used[col] &= ~(1 << s)
                    return
                nonlocal used
                for s in range(1, n + 1):
                    if used >> s & 1 or col_used[c] >> s & 1:
                        continue
                    row.append(s)
                    used |= 1 << s
                    yield from cells(c + 1)
                    row.pop()
                    used &= ~(1 << s)

            yield from cells(0)

        yield from extend(1)


def check_brs(n: int, seed: int = 0, cap: int = 10**6,
              on_record: Optional[Callable[[dict], None]] = None) -> SweepReport:
    """Exhaustively check order-n Latin squares for a partial transversal
    of size n-1, and a full transversal when n is odd."""
    if n > 5:
        raise InstanceError("exhaustive Latin-square sweep supported for n <= 5")
    spec = SweepSpec("brs", (("n", n),), mode="exhaustive", seed=seed,
                     instance_cap=cap)
    run = SweepRun(spec, on_record=on_record)
    for square in enumerate_latin_squares(n, reduced=True):
        if run.over_cap():
            return run.capped(n=n)
        t = latin_transversal(square)
        ok = len(t) >= n - 1 and (n % 2 == 0 or len(t) == n)
        run.record("ok" if ok else "counterexample",
                   None if ok else {"latin": [list(r) for r in square.rows]})
        if not ok:
            return run.counterexample(
                {"latin": [list(r) for r in square.rows]},
                transversal=len(t), n=n,
            )
    return run.verified(n=n, reduction="first-row-normalized")


# ---------------------------------------------------------------------------
# scrambled Rota


@dataclass(frozen=True)
class RotaSearchResult:
    """A partition of the ground into few rainbow independent sets, or the
    instance as a counterexample candidate."""

    n: int
    classes: Optional[tuple[frozenset[int], ...]]
    classes_used: Optional[int]
    even_tight: bool   # for even n: whether n classes sufficed

    @property
    def succeeded(self) -> bool:
        return self.classes is not None


def rota_scrambled_search(matroid: IndependenceOracle,
                          parts: Sequence[Iterable[int]]) -> RotaSearchResult:
    """Try to partition the ground of a matroid with covering number n into
    at most n+1 (for even n, ideally n) sets that are independent and
    rainbow with respect to the given partition into n parts of size n."""
    part_sets = [frozenset(int(x) for x in p) for p in parts]
    n = len(part_sets)
    ground = matroid.ground_size
    if ground != n * n or any(len(p) != n for p in part_sets):
        raise InstanceError("need a partition into n parts of size n")
    if set().union(*part_sets) != set(range(ground)) or (
        sum(len(p) for p in part_sets) != ground
    ):
        raise InstanceError("parts must partition the ground set")
    rho, _ = covering_number(matroid)
    if rho != n:
        raise InstanceError(f"covering number is {rho}, expected n = {n}")

    part_of = {}
    for i, p in enumerate(part_sets):
        for x in p:
            part_of[x] = i

    def try_partition(num_classes: int) -> Optional[tuple[frozenset[int], ...]]:
        elements = sorted(range(ground))
        classes: list[set[int]] = [set() for _ in range(num_classes)]
        parts_in: list[set[int]] = [set() for _ in range(num_classes)]

        def rec(idx: int) -> bool:
            if idx == len(elements):
                return True
            x = elements[idx]
            px = part_of[x]
            for c in range(num_classes):
                if not classes[c] and c > 0 and not classes[c - 1]:
                    break  # class symmetry: open empty classes in order
                if px in parts_in[c]:
                    continue
                if not matroid.is_independent(classes[c] | {x}):
                    continue
                classes[c].add(x)
                parts_in[c].add(px)
                if rec(idx + 1):
                    return True
                classes[c].discard(x)
                parts_in[c].discard(px)
            return False

        if rec(0):
            return tuple(frozenset(c) for c in classes if c)
        return None

    if n % 2 == 0:
        tight = try_partition(n)
        if tight is not None:
            return RotaSearchResult(n, tight, len(tight), True)
    found = try_partition(n + 1)
    if found is not None:
        return RotaSearchResult(n, found, len(found), False)
    return RotaSearchResult(n, None, None, False)


# ---------------------------------------------------------------------------
# weighted rainbow matchings


def _weighted_rainbow_exists(fam: EdgeFamily, weights: Sequence[int],
                             size: int, budget: int) -> bool:
    """Exact search for a rainbow matching of the given size and total
    weight within budget."""
    g = fam.graph
    masks = [g.edge_mask(e) for e in range(g.num_edges)]
    colors = sorted(range(fam.num_colors),
                    key=lambda c: (len(fam.colors[c]), c))

    def rec(ci: int, used: int, count: int, spent: int) -> bool:
        if count == size:
            return True
        if fam.num_colors - ci < size - count:
            return False
        c = colors[ci]
        for e in sorted(fam.colors[c]):
            if masks[e] & used or spent + weights[e] > budget:
                continue
            if rec(ci + 1, used | masks[e], count + 1, spent + weights[e]):
                return True
        return rec(ci + 1, used, count, spent)

    return rec(0, 0, 0, 0)


def weighted_drisko_search(n: int, weight_max: int = 10, seed: int = 0,
                           instances: int = 1000, cap: int = 10**6,
                           on_record: Optional[Callable[[dict], None]] = None
                           ) -> SweepReport:
    """Random bipartite instances of 2n-1 matchings of size n with integer
    edge weights; each must contain a rainbow matching of size n whose
    weight stays within the heaviest input matching."""
    if n > 4:
        raise InstanceError("weighted sweep supported for n <= 4")
    spec = SweepSpec(
        "weighted-drisko", (("n", n), ("wmax", weight_max)), mode="random",
        seed=seed, instance_cap=cap,
    )
    run = SweepRun(spec, on_record=on_record)
    rng = random.Random(seed)
    for _ in range(instances):
        if run.over_cap():
            return run.capped(n=n)
        fam = random_matching_family(rng, [n] * (2 * n - 1))
        weights = [rng.randint(0, weight_max) for _ in range(fam.graph.num_edges)]
        budget = max(
            sum(weights[e] for e in color) for color in fam.colors
        )
        ok = _weighted_rainbow_exists(fam, weights, n, budget)
        run.record("ok" if ok else "counterexample")
        if not ok:
            return run.counterexample(
                {
                    "graph": {"n": fam.graph.n,
                              "edges": [list(e) for e in fam.graph.edges]},
                    "colors": [sorted(c) for c in fam.colors],
                    "weights": weights,
                    "budget": budget,
                },
                n=n,
            )
    return run.verified(n=n, instances=instances)


# ---------------------------------------------------------------------------
# short rainbow cycles


@dataclass(frozen=True)
class RainbowCycleHit:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    colors: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def rainbow_short_cycle(g: Graph, edge_sets: Sequence[Iterable[int]], r: int,
                        validate_hypothesis: bool = True
                        ) -> Optional[RainbowCycleHit]:
    """A rainbow cycle of length at most r using the disjoint color
    classes, or None.

    In hypothesis-validating mode the classes must number n (the vertex
    count) and each have size at least ceil(n/r); free mode skips that to
    probe boundaries.
    """
    sets = [frozenset(int(e) for e in s) for s in edge_sets]
    color_of: dict[int, int] = {}
    for i, s in enumerate(sets):
        for e in s:
            if not 0 <= e < g.num_edges:
                raise InstanceError(f"families[{i}]: unknown edge id {e}")
            if e in color_of:
                raise InstanceError(
                    f"families[{i}]: edge {e} already in family {color_of[e]}"
                )
            color_of[e] = i
    if r < 2:
        raise InstanceError("cycle length bound must be at least 2")
    if validate_hypothesis:
        n = g.n
        if len(sets) != n:
            raise HypothesisViolation(
                f"expected {n} classes, got {len(sets)}", witness=len(sets)
            )
        need = -(-n // r)
        for i, s in enumerate(sets):
            if len(s) < need:
                raise HypothesisViolation(
                    f"class {i} has size {len(s)} < ceil(n/r) = {need}", witness=i
                )

    incident: dict[int, list[int]] = {}
    for e in sorted(color_of):
        u, v = g.edges[e]
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)

    best: list[Optional[RainbowCycleHit]] = [None]

    def dfs(start: int, cur: int, verts: list[int], edges: list[int],
            colors_used: set[int]) -> bool:
        for e in incident.get(cur, ()):
            if e in edges or color_of[e] in colors_used:
                continue
            u, v = g.edges[e]
            nxt = v if u == cur else u
            if nxt == start and len(edges) >= 1:
                best[0] = RainbowCycleHit(
                    tuple(verts), tuple(edges + [e]),
                    tuple(color_of[x] for x in edges + [e]),
                )
                return True
            if nxt in verts or nxt < start or len(edges) + 1 >= r:
                continue
            verts.append(nxt)
            edges.append(e)
            colors_used.add(color_of[e])
            if dfs(start, nxt, verts, edges, colors_used):
                return True
            verts.pop()
            edges.pop()
            colors_used.discard(color_of[e])
        return False

    for start in range(g.n):
        if dfs(start, start, [start], [], set()):
            break
    return best[0]


# ---------------------------------------------------------------------------
# scrambled-matching sharpness


def scrambled_sharpness_search(n: int, seed: int = 0, instances: int = 1000,
                               cap: int = 10**6,
                               on_record: Optional[Callable[[dict], None]] = None
                               ) -> SweepReport:
    """Randomized hunt for an n-scrambling of n-choose-2 matchings of size
    n in a bipartite graph with no rainbow matching of size n; hits are
    re-verified by the exact solver before being reported."""
    if n < 4:
        raise HypothesisViolation(
            f"sharpness instances exist only for n >= 4, got n = {n}"
        )
    count = n * (n - 1) // 2
    spec = SweepSpec(
        "scrambled-sharpness", (("n", n),), mode="random", seed=seed,
        instance_cap=cap,
    )
    run = SweepRun(spec, on_record=on_record)
    rng = random.Random(seed)
    for _ in range(instances):
        if run.over_cap():
            return run.capped(n=n)
        fam = random_matching_family(rng, [n] * count)
        pool = sorted(e for c in fam.colors for e in c)
        rng.shuffle(pool)
        classes = [tuple(sorted(pool[i:i + n])) for i in range(0, len(pool), n)]
        validate_scrambling([sorted(c) for c in fam.colors], classes, n)
        scrambled = EdgeFamily(fam.graph, tuple(frozenset(c) for c in classes))
        matching, _ = max_rainbow_matching(scrambled, target=n)
        hit = len(matching) < n
        run.record("sharpness-witness" if hit else "ok")
        if hit:
            instance = {
                "graph": {"n": fam.graph.n,
                          "edges": [list(e) for e in fam.graph.edges]},
                "colors": [sorted(c) for c in fam.colors],
                "scrambling": [list(c) for c in classes],
            }
            # replay from the serialized instance to confirm
            g2 = Graph(instance["graph"]["n"],
                       tuple(tuple(e) for e in instance["graph"]["edges"]))
            fam2 = EdgeFamily(
                g2, tuple(frozenset(c) for c in instance["scrambling"])
            )
            again, _ = max_rainbow_matching(fam2, target=n)
            if len(again) < n:
                return run.counterexample(
                    instance, meaning="sharpness witness", max_rainbow=len(again)
                )
    return run.capped(n=n, note="no sharpness instance found in the sample")


# ---------------------------------------------------------------------------
# random matroids (for the covering-number sweeps)


def random_matroid(rng: random.Random, ground: int) -> IndependenceOracle:
    """A seeded loop-free matroid from the concrete constructions."""
    kind = rng.choice(["uniform", "partition", "graphic", "binary", "truncation"])
    if kind == "uniform":
        return uniform_matroid(ground, rng.randint(1, max(1, ground)))
    if kind == "partition":
        elements = list(range(ground))
        rng.shuffle(elements)
        parts: list[list[int]] = []
        i = 0
        while i < ground:
            size = min(rng.randint(1, 3), ground - i)
            parts.append(sorted(elements[i:i + size]))
            i += size
        caps = [rng.randint(1, 2) for _ in parts]
        return partition_matroid(ground, parts, caps)
    if kind == "graphic":
        v = rng.randint(2, max(2, ground))
        edges = []
        for _ in range(ground):
            u = rng.randrange(v)
            w = rng.randrange(v)
            while w == u:
                w = rng.randrange(v)
            edges.append((u, w))
        return graphic_matroid(Graph(v, tuple(edges)))
    if kind == "binary":
        bits = rng.randint(1, min(6, max(1, ground)))
        cols = [rng.randint(1, (1 << bits) - 1) for _ in range(ground)]
        return binary_matroid(cols)
    inner = random_matroid(rng, ground)
    k = rng.randint(1, max(1, inner.rank()))
    return truncate(inner, k)


# ---------------------------------------------------------------------------
# sweep dispatch


def run_sweep(spec: SweepSpec,
              on_record: Optional[Callable[[dict], None]] = None) -> SweepReport:
    """Run the named conjecture sweep; see the CLI for the tag list."""
    from .matching import (
        ArrowStatement,
        SearchSpace,
        counterexample_search,
        drisko_statement,
        stairs_sequence,
    )
    from .matroids import check_two_cover

    tag = spec.conjecture
    if tag == "brs":
        return check_brs(spec.param("n"), seed=spec.seed,
                         cap=spec.instance_cap, on_record=on_record)
    if tag == "drisko":
        n = spec.param("n")
        space = SearchSpace("random", instances=spec.param("instances", 1000))
        report = counterexample_search(
            drisko_statement(n), space, seed=spec.seed,
            cap=spec.instance_cap, on_record=on_record,
        )
        report.conjecture = tag
        return report
    if tag == "stairs":
        n = spec.param("n")
        space = SearchSpace("random", instances=spec.param("instances", 1000))
        report = counterexample_search(
            stairs_sequence(n), space, seed=spec.seed,
            cap=spec.instance_cap, on_record=on_record,
        )
        report.conjecture = tag
        return report
    if tag == "ab":
        n = spec.param("n")
        space = SearchSpace(
            "bipartite-exhaustive", max_vertices=spec.param("max_vertices", 6)
        )
        report = counterexample_search(
            ArrowStatement(n, n, n - 1, "bipartite"), space, seed=spec.seed,
            cap=spec.instance_cap, on_record=on_record,
        )
        report.conjecture = tag
        return report
    if tag == "coercive-244":
        from .matching import SizeSequence

        sigma = SizeSequence((2, 4, 4), 3)
        single = counterexample_search(
            sigma, SearchSpace("cycles", ambients=((8,), (10,))),
            seed=spec.seed, cap=spec.instance_cap,
        )
        double = counterexample_search(
            sigma, SearchSpace("cycles", ambients=((4, 4),)),
            seed=spec.seed, cap=spec.instance_cap, on_record=on_record,
        )
        double.conjecture = tag
        double.detail["single_cycle_verdict"] = single.verdict
        double.detail["single_cycle_instances"] = single.instances_tested
        return double
    if tag == "weighted-drisko":
        return weighted_drisko_search(
            spec.param("n"), weight_max=spec.param("wmax", 10), seed=spec.seed,
            instances=spec.param("instances", 1000), cap=spec.instance_cap,
            on_record=on_record,
        )
    if tag == "rho-two-cover":
        ground = spec.param("ground", 8)
        spec2 = SweepSpec(tag, spec.params, mode="random", seed=spec.seed,
                          instance_cap=spec.instance_cap)
        run = SweepRun(spec2, on_record=on_record)
        rng = random.Random(spec.seed)
        for _ in range(spec.param("instances", 500)):
            if run.over_cap():
                return run.capped(ground=ground)
            m1 = random_matroid(rng, ground)
            m2 = random_matroid(rng, ground)
            report = check_two_cover(m1, m2)
            run.record("ok" if report.holds else "counterexample")
            if not report.holds:
                return run.counterexample(
                    {"matroid": m1.descriptor, "matroid2": m2.descriptor},
                    rho_m=report.rho_m, rho_n=report.rho_n,
                    rho_meet=report.rho_meet,
                )
        return run.verified(ground=ground)
    if tag == "scrambled-sharpness":
        return scrambled_sharpness_search(
            spec.param("n"), seed=spec.seed,
            instances=spec.param("instances", 1000), cap=spec.instance_cap,
            on_record=on_record,
        )
    if tag == "rota":
        n = spec.param("n")
        spec2 = SweepSpec(tag, spec.params, mode="random", seed=spec.seed,
                          instance_cap=spec.instance_cap)
        run = SweepRun(spec2, on_record=on_record)
        rng = random.Random(spec.seed)
        produced = 0
        while produced < spec.param("instances", 50):
            if run.over_cap():
                return run.capped(n=n)
            cols = [rng.randint(1, (1 << n) - 1) for _ in range(n * n)]
            matroid = binary_matroid(cols)
            if covering_number(matroid)[0] != n:
                continue  # rejection sampling: need covering number exactly n
            produced += 1
            elements = list(range(n * n))
            rng.shuffle(elements)
            parts = [sorted(elements[i * n:(i + 1) * n]) for i in range(n)]
            result = rota_scrambled_search(matroid, parts)
            run.record("ok" if result.succeeded else "counterexample")
            if not result.succeeded:
                return run.counterexample(
                    {"matroid": matroid.descriptor,
                     "parts": [list(p) for p in parts]},
                    n=n,
                )
        return run.verified(n=n, instances=produced)
    if tag == "short-cycle":
        n = spec.param("n")
        r = spec.param("r")
        spec2 = SweepSpec(tag, spec.params, mode="random", seed=spec.seed,
                          instance_cap=spec.instance_cap)
        run = SweepRun(spec2, on_record=on_record)
        rng = random.Random(spec.seed)
        need = -(-n // r)
        for _ in range(spec.param("instances", 200)):
            if run.over_cap():
                return run.capped(n=n, r=r)
            edges: list[tuple[int, int]] = []
            sets: list[list[int]] = []
            for _c in range(n):
                cls = []
                for _e in range(need):
                    u = rng.randrange(n)
                    v = rng.randrange(n)
                    while v == u:
                        v = rng.randrange(n)
                    cls.append(len(edges))
                    edges.append((u, v))
                sets.append(cls)
            g = Graph(n, tuple(edges))
            hit = rainbow_short_cycle(g, sets, r)
            run.record("ok" if hit is not None else "counterexample")
            if hit is None:
                return run.counterexample(
                    {"graph": {"n": n, "edges": [list(e) for e in edges]},
                     "families": sets},
                    n=n, r=r,
                )
        return run.verified(n=n, r=r)
    raise InstanceError(f"unknown sweep conjecture {tag!r}")
