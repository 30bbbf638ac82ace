"""Hall's and Rado's theorems as total algorithms: each call returns either
a full choice function or an explicit violating color set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import ChoiceFunction, ColoredFamily, InstanceError, family_union
from .matroids import IndependenceOracle, _intersection_augment


@dataclass(frozen=True)
class Violator:
    """A color set I whose classes are jointly too poor: |union| < |I| for
    Hall, rank(union) < |I| for Rado."""

    colors: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "colors", frozenset(int(c) for c in self.colors))


HallResult = Union[ChoiceFunction, Violator]


def hall_rainbow(fam: ColoredFamily) -> HallResult:
    """A full injective choice function, or a deficiency witness.

    Maximum bipartite matching by augmenting paths; when the matching
    misses a color, the colors reachable by alternating paths from the
    unmatched colors form a Hall violator.
    """
    k = fam.num_colors
    match_elem: dict[int, int] = {}   # element -> color
    match_color: dict[int, int] = {}  # color -> element

    def try_augment(c: int, visited: set[int]) -> bool:
        for x in sorted(fam.sets[c]):
            if x in visited:
                continue
            visited.add(x)
            if x not in match_elem or try_augment(match_elem[x], visited):
                match_elem[x] = c
                match_color[c] = x
                return True
        return False

    for c in range(k):
        try_augment(c, set())
    if len(match_color) == k:
        return ChoiceFunction(tuple(sorted(match_color.items())))

    # alternating reachability from the unmatched colors
    reached_colors = {c for c in range(k) if c not in match_color}
    reached_elems: set[int] = set()
    frontier = sorted(reached_colors)
    while frontier:
        nxt: list[int] = []
        for c in frontier:
            for x in sorted(fam.sets[c]):
                if x in reached_elems:
                    continue
                reached_elems.add(x)
                owner = match_elem.get(x)
                if owner is not None and owner not in reached_colors:
                    reached_colors.add(owner)
                    nxt.append(owner)
        frontier = sorted(nxt)
    violator = Violator(frozenset(reached_colors))
    assert len(family_union(fam, violator.colors)) < len(violator.colors)
    return violator


def rado_rainbow(fam: ColoredFamily, matroid: IndependenceOracle) -> HallResult:
    """A full choice function with matroid-independent image, or a color set
    I with rank(union of I's classes) < |I|.

    Realized as a matroid intersection over the color-element incidence
    pairs: the color partition matroid against the given matroid lifted
    to incidences; the violator falls out of the final reachability cut.
    """
    if fam.ground.size > matroid.ground_size:
        raise InstanceError(
            f"family ground of size {fam.ground.size} exceeds matroid ground "
            f"of size {matroid.ground_size}"
        )
    k = fam.num_colors
    incidences: list[tuple[int, int]] = []
    for c in range(k):
        for x in sorted(fam.sets[c]):
            incidences.append((c, x))
    m = len(incidences)

    def color_pred(s: frozenset[int]) -> bool:
        cols = [incidences[i][0] for i in s]
        return len(set(cols)) == len(cols)

    def lifted_pred(s: frozenset[int]) -> bool:
        elems = [incidences[i][1] for i in s]
        if len(set(elems)) != len(elems):
            return False
        return matroid.is_independent(elems)

    lift_colors = IndependenceOracle(m, color_pred, {"kind": "internal-color-partition"})
    lift_matroid = IndependenceOracle(m, lifted_pred, {"kind": "internal-induced"})
    common, reachable = _intersection_augment(lift_colors, lift_matroid)

    if len(common) == k:
        pairs = tuple(sorted(incidences[i] for i in common))
        f = ChoiceFunction(pairs)
        assert matroid.is_independent(f.image)
        return f

    by_color: dict[int, list[int]] = {c: [] for c in range(k)}
    for i, (c, _) in enumerate(incidences):
        by_color[c].append(i)
    deficient = frozenset(
        c for c in range(k) if all(i in reachable for i in by_color[c])
    )
    violator = Violator(deficient)
    union = family_union(fam, deficient)
    assert matroid.rank(union) < len(deficient)
    return violator
