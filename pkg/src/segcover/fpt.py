"""Branching solver for minimum-weight covers of size at most k.

Runs in ``(qk)^O(k) * poly`` time where ``q`` is the number of distinct
weights, so it is FPT for unweighted instances. Points that share a location
are merged before solving: the line-counting arguments are about locations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .geometry import Line, Point, collinear_with, line_through
from .instance import Instance, Solution, coverage_sets
from .oracle import min_weight_cover


@dataclass(frozen=True)
class ReasonableInstance:
    """An instance with dominated segments removed; ``kept[j]`` is the original index of segment ``j``."""

    instance: Instance
    kept: tuple[int, ...]


@dataclass
class FptStats:
    nodes: int = 0
    max_depth: int = 0
    # (number of children, q on the branching line, k at the node)
    branchings: list[tuple[int, int, int]] = field(default_factory=list)


def _dominated(alive: Sequence[int], masks: Sequence[int], weights: Sequence[Fraction], universe: int) -> set[int]:
    out = set()
    for a in alive:
        ma = masks[a] & universe
        for b in alive:
            if a == b or weights[a] != weights[b]:
                continue
            mb = masks[b] & universe
            if ma & mb == ma and (ma != mb or b < a):
                out.add(a)
                break
    return out


def _reduce(alive: Sequence[int], masks, weights, universe: int) -> list[int]:
    # domination is a strict partial order, so dropping every dominated
    # segment at once reaches the same fixpoint as one-at-a-time removal
    gone = _dominated(alive, masks, weights, universe)
    return [j for j in alive if j not in gone]


def reduce_reasonable(instance: Instance) -> ReasonableInstance:
    masks = coverage_sets(instance)
    universe = (1 << len(instance.points)) - 1
    kept = _reduce(range(len(instance.segments)), masks, instance.weights, universe)
    return ReasonableInstance(instance.subinstance(range(len(instance.points)), kept), tuple(kept))


def _lines_by_count(points: Sequence[Point], members: Sequence[int]) -> dict[Line, set[int]]:
    lines: dict[Line, set[int]] = {}
    for i, j in combinations(members, 2):
        if points[i] == points[j]:
            continue
        lines.setdefault(line_through(points[i], points[j]), set()).update((i, j))
    return lines


def _best_long_line(points: Sequence[Point], members: Sequence[int], k: int) -> Optional[Line]:
    distinct = {points[i]: i for i in reversed(members)}
    reps = sorted(distinct.values())
    if k == 0:
        # any single location lies on a line
        if not reps:
            return None
        t = points[reps[0]]
        return line_through(t, t.shifted(1, 0))
    lines = _lines_by_count(points, reps)
    best = None
    for line, on in lines.items():
        if len(on) >= k + 1:
            key = (-len(on), line.as_tuple())
            if best is None or key < best[0]:
                best = (key, line)
    return None if best is None else best[1]


def find_long_line(instance: Instance, k: int) -> Optional[Line]:
    """A line through at least ``k + 1`` distinct points; the fullest one, ties by ``(a, b, c)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _best_long_line(instance.points, range(len(instance.points)), k)


def _hitting(points, masks, segments, alive, on_line: list[int], line: Line, k: int) -> list[int]:
    order = sorted(on_line, key=lambda i: points[i])
    collinear = [j for j in alive if collinear_with(segments[j], line)]
    chosen: list[int] = []
    for i in range(min(k, len(order))):
        bit = 1 << order[i]
        prev = 1 << order[i - 1] if i > 0 else 0
        for j in collinear:
            if masks[j] & bit and not masks[j] & prev and j not in chosen:
                chosen.append(j)
    return sorted(chosen)


def hitting_candidates(ri: ReasonableInstance, line: Line, k: int) -> list[int]:
    """Segments of ``ri.instance`` that every cover of size at most ``k`` must use one of.

    Indices refer to ``ri.instance``. The result has at most ``q * k``
    members, where ``q`` counts distinct weights among segments on ``line``.
    """
    inst = ri.instance
    points = inst.points
    on_line = sorted({t: i for i, t in reversed(list(enumerate(points))) if line.contains(t)}.values())
    if len(on_line) < k + 1:
        raise ValueError(f"{line} carries {len(on_line)} distinct points, need at least {k + 1}")
    masks = coverage_sets(inst)
    everything = list(range(len(inst.segments)))
    if _dominated(everything, masks, inst.weights, (1 << len(points)) - 1):
        raise ValueError("instance is not reasonable")
    segs = [s for s, _ in inst.segments]
    return _hitting(points, masks, segs, everything, on_line, line, k)


class _Search:
    def __init__(self, instance: Instance, stats: Optional[FptStats]):
        # one representative per location; the others ride along in its mask bit
        reps: dict[Point, int] = {}
        for t in instance.points:
            reps.setdefault(t, len(reps))
        self.points = list(reps)
        self.segments = [s for s, _ in instance.segments]
        self.weights = instance.weights
        self.masks = coverage_sets(Instance(tuple(self.points), instance.segments))
        self.stats = stats

    def solve(self, remaining: int, alive: list[int], k: int, depth: int = 0):
        st = self.stats
        if st is not None:
            st.nodes += 1
            st.max_depth = max(st.max_depth, depth)
        alive = _reduce(alive, self.masks, self.weights, remaining)
        if not remaining:
            return (Fraction(0), ())
        if k == 0:
            return None
        members = [i for i in range(len(self.points)) if remaining >> i & 1]
        line = _best_long_line(self.points, members, k)
        if line is not None:
            on_line = [i for i in members if line.contains(self.points[i])]
            branch = _hitting(self.points, self.masks, self.segments, alive, on_line, line, k)
            if st is not None:
                q = len({self.weights[j] for j in alive if collinear_with(self.segments[j], line)})
                st.branchings.append((len(branch), q, k))
            best = None
            for s in branch:
                rest = [j for j in alive if j != s]
                sub = self.solve(remaining & ~self.masks[s], rest, k - 1, depth + 1)
                if sub is None:
                    continue
                cand = (sub[0] + self.weights[s], tuple(sorted(sub[1] + (s,))))
                if best is None or cand < best:
                    best = cand
            return best
        if len(members) > k * k:
            return None
        return min_weight_cover(remaining, self.masks, self.weights, k, alive)


def solve_fpt(instance: Instance, k: int, stats: Optional[FptStats] = None) -> Optional[Solution]:
    """Minimum-weight cover with at most ``k`` segments, or ``None`` if none exists."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    search = _Search(instance, stats)
    remaining = (1 << len(search.points)) - 1
    found = search.solve(remaining, list(range(len(instance.segments))), k)
    if found is None:
        return None
    return Solution(found[1], found[0])


def solve_unweighted(instance: Instance, k: int, stats: Optional[FptStats] = None) -> Optional[Solution]:
    if len(set(instance.weights)) > 1:
        raise ValueError("solve_unweighted needs all segment weights equal")
    return solve_fpt(instance, k, stats)
