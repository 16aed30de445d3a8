"""Weighted covering with delta-extension via dense subsets and a small kernel.

The returned cover only has to reach every point after each chosen segment is
delta-extended, but its weight is at most the best weight achievable *without*
extension.
"""

from __future__ import annotations

import bisect
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Literal, Optional, Sequence, Union

from .geometry import (
    Line,
    Point,
    RationalLike,
    Segment,
    as_rational,
    covers_extended,
    line_through,
)
from .instance import Instance, Solution, coverage_sets
from .oracle import brute_force

Reason = Literal["too-many-long-lines", "too-many-off-line-points"]


@dataclass(frozen=True)
class CollinearSet:
    """Distinct points on one line, kept sorted by their coordinate along it."""

    line: Line
    coords: tuple[Fraction, ...]

    @classmethod
    def from_points(cls, points: Iterable[Point], line: Optional[Line] = None) -> "CollinearSet":
        distinct = sorted(set(points))
        if line is None:
            if len(distinct) >= 2:
                line = line_through(distinct[0], distinct[-1])
            elif distinct:
                line = line_through(distinct[0], distinct[0].shifted(1, 0))
            else:
                raise ValueError("an empty collinear set needs an explicit line")
        for t in distinct:
            if not line.contains(t):
                raise ValueError(f"{t} is not on {line}")
        return cls(line, tuple(line.coordinate(t) for t in distinct))

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(self.line.point_at(c) for c in self.coords)

    def subset(self, coords: Iterable[Fraction]) -> "CollinearSet":
        return CollinearSet(self.line, tuple(sorted(set(coords))))

    def __len__(self) -> int:
        return len(self.coords)


def split_count(delta: Fraction) -> int:
    """Number of equal pieces the spanning segment is cut into: ceil(1 + 4/delta)."""
    return math.ceil(1 + 4 / delta)


def dense_size_bound(k: int, delta: RationalLike) -> Fraction:
    return (2 + 4 / as_rational(delta)) ** k


def _dense(coords: Sequence[Fraction], k: int, pieces: int) -> set[Fraction]:
    if len(coords) <= 1:
        return set(coords)
    lo, hi = coords[0], coords[-1]
    if k == 1:
        return {lo, hi}
    width = (hi - lo) / pieces
    out: set[Fraction] = set()
    for i in range(pieces):
        # closed pieces: a point on a shared boundary belongs to both neighbours
        left = bisect.bisect_left(coords, lo + i * width)
        right = bisect.bisect_right(coords, lo + (i + 1) * width)
        if left < right:
            out |= _dense(coords[left:right], k - 1, pieces)
    return out


def dense_subset(c: CollinearSet, k: int, delta: RationalLike) -> CollinearSet:
    """A (k, delta)-dense subset of ``c`` containing its extreme points."""
    delta = as_rational(delta)
    if k < 1:
        raise ValueError("k must be at least 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    return c.subset(_dense(list(c.coords), k, split_count(delta)))


def density_check(c: CollinearSet, a: CollinearSet, k: int, delta: RationalLike) -> bool:
    """Exhaustively decide whether every cover of ``a`` by at most ``k`` segments,
    once delta-extended, covers all of ``c``.

    Only covers made of segments ``[a_i, a_j]`` between points of ``a`` that
    tile ``a`` left to right are tried. Any violating cover can be shrunk
    into one of these, and shrinking only shrinks the extension.
    """
    delta = as_rational(delta)
    if not set(a.coords) <= set(c.coords):
        raise ValueError("a must be a subset of c")
    anchors = a.points
    targets = c.points
    where = {x: n for n, x in enumerate(c.coords)}
    full = (1 << len(targets)) - 1

    @functools.cache
    def reach(i: int, j: int) -> int:
        # the extension is an interval of the line: grow outward from the segment until it stops
        s = Segment(anchors[i], anchors[j])
        lo, hi = where[a.coords[i]], where[a.coords[j]]
        while lo > 0 and covers_extended(s, delta, targets[lo - 1]):
            lo -= 1
        while hi + 1 < len(targets) and covers_extended(s, delta, targets[hi + 1]):
            hi += 1
        return (1 << (hi + 1)) - (1 << lo)

    def violates(start: int, budget: int, covered: int) -> bool:
        if start == len(anchors):
            return covered != full
        if budget == 0:
            return False
        return any(violates(end + 1, budget - 1, covered | reach(start, end)) for end in range(start, len(anchors)))

    return not violates(0, k, 0)


def long_lines(instance: Instance, k: int) -> list[Line]:
    """Every line through more than ``k`` distinct points, sorted canonically."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0 and instance.points:
        raise ValueError("every point lies on infinitely many 0-long lines")
    distinct = sorted(set(instance.points))
    counts: dict[Line, set[Point]] = {}
    for p, q in combinations(distinct, 2):
        counts.setdefault(line_through(p, q), set()).update((p, q))
    return sorted(line for line, on in counts.items() if len(on) > k)


def _off_line_locations(instance: Instance, lines: Sequence[Line]) -> set[Point]:
    return {t for t in instance.points if not any(line.contains(t) for line in lines)}


def infeasibility_precheck(instance: Instance, k: int) -> Optional[Reason]:
    """A reason why no ``k`` segments can cover the points, when a counting argument shows it."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return "too-many-long-lines" if instance.points else None
    lines = long_lines(instance, k)
    if len(lines) > k:
        return "too-many-long-lines"
    if len(_off_line_locations(instance, lines)) > k * k:
        return "too-many-off-line-points"
    return None


@dataclass(frozen=True)
class Kernel:
    reduced: Instance
    point_provenance: tuple[int, ...]
    segment_provenance: tuple[int, ...]
    long_lines: tuple[Line, ...]
    D: tuple[int, ...]


@dataclass(frozen=True)
class Infeasible:
    reason: Reason


def kernelize(instance: Instance, k: int, delta: RationalLike) -> Union[Kernel, Infeasible]:
    delta = as_rational(delta)
    if k < 1:
        raise ValueError("k must be at least 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    reason = infeasibility_precheck(instance, k)
    if reason is not None:
        return Infeasible(reason)
    lines = long_lines(instance, k)
    first_index: dict[Point, int] = {}
    for i, t in enumerate(instance.points):
        first_index.setdefault(t, i)
    off = _off_line_locations(instance, lines)
    D = tuple(sorted(i for i, t in enumerate(instance.points) if t in off))
    kept = {first_index[t] for t in off}
    for line in lines:
        cset = CollinearSet.from_points([t for t in first_index if line.contains(t)], line)
        for t in dense_subset(cset, k, delta).points:
            kept.add(first_index[t])
    point_ids = tuple(sorted(kept))

    # one lightest segment through every unordered pair, singletons included
    masks = coverage_sets(instance)
    weights = instance.weights
    chosen: set[int] = set()
    for x, a in enumerate(point_ids):
        for b in point_ids[x:]:
            pair = 1 << a | 1 << b
            through = [j for j, m in enumerate(masks) if m & pair == pair]
            if through:
                chosen.add(min(through, key=lambda j: (weights[j], j)))
    segment_ids = tuple(sorted(chosen))
    return Kernel(instance.subinstance(point_ids, segment_ids), point_ids, segment_ids, tuple(lines), D)


def solve_ext(instance: Instance, k: int, delta: RationalLike) -> Optional[Solution]:
    """A cover of size at most ``k`` valid under delta-extension, no heavier than the
    best unextended cover; ``None`` only if no unextended ``k``-cover exists."""
    delta = as_rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Solution((), Fraction(0)) if not instance.points else None
    kernel = kernelize(instance, k, delta)
    if isinstance(kernel, Infeasible):
        return None
    found = brute_force(kernel.reduced, k)
    if found is None:
        return None
    return Solution(tuple(sorted(kernel.segment_provenance[j] for j in found.indices)), found.weight)
