"""Named bookkeeping shared by the reduction generators."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..geometry import Point, RationalLike, Segment, as_rational
from ..instance import Instance, Solution, WeightedSegment


@dataclass
class GadgetMeta:
    """Names for the points and segments a generator produced.

    ``params`` holds construction constants (rationals are kept as Fractions
    in memory and written as ``"num/den"`` strings). ``segment_weights`` lets
    the solution builders report weights without the instance at hand.
    """

    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    points: dict[str, int] = field(default_factory=dict)
    segments: dict[str, int] = field(default_factory=dict)
    point_groups: dict[str, list[int]] = field(default_factory=dict)
    segment_groups: dict[str, list[int]] = field(default_factory=dict)
    segment_weights: list[Fraction] = field(default_factory=list)

    def rational(self, name: str) -> Fraction:
        return as_rational(self.params[name])

    def solution(self, indices) -> Solution:
        idx = tuple(sorted(set(indices)))
        return Solution(idx, sum((as_rational(self.segment_weights[j]) for j in idx), Fraction(0)))

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "params": _jsonable(self.params),
            "points": self.points,
            "segments": self.segments,
            "point_groups": self.point_groups,
            "segment_groups": self.segment_groups,
            "segment_weights": [str(w) for w in self.segment_weights],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "GadgetMeta":
        return cls(
            doc["kind"],
            doc.get("params", {}),
            dict(doc.get("points", {})),
            dict(doc.get("segments", {})),
            {k: list(v) for k, v in doc.get("point_groups", {}).items()},
            {k: list(v) for k, v in doc.get("segment_groups", {}).items()},
            [as_rational(w) for w in doc.get("segment_weights", [])],
        )


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


class Builder:
    """Accumulates a point set and a segment family with names attached.

    Points are a set: adding a location twice returns the first index and
    records the new name as an alias.
    """

    def __init__(self, kind: str):
        self.meta = GadgetMeta(kind)
        self._points: list[Point] = []
        self._where: dict[Point, int] = {}
        self._segments: list[WeightedSegment] = []

    def point(self, name: str, x: RationalLike, y: RationalLike, *groups: str) -> int:
        t = Point.of(x, y)
        idx = self._where.get(t)
        if idx is None:
            idx = self._where[t] = len(self._points)
            self._points.append(t)
        self.meta.points[name] = idx
        for g in groups:
            self.meta.point_groups.setdefault(g, []).append(idx)
        return idx

    def segment(self, name: str, p: Point, q: Point, weight: RationalLike = 1, *groups: str) -> int:
        if name in self.meta.segments:
            raise ValueError(f"duplicate segment name {name!r}")
        idx = len(self._segments)
        w = as_rational(weight)
        self._segments.append(WeightedSegment(Segment(p, q), w))
        self.meta.segments[name] = idx
        self.meta.segment_weights.append(w)
        for g in groups:
            self.meta.segment_groups.setdefault(g, []).append(idx)
        return idx

    def build(self) -> tuple[Instance, GadgetMeta]:
        point_labels: dict[int, str] = {}
        for name, i in self.meta.points.items():
            point_labels.setdefault(i, name)
        segment_labels: dict[int, str] = {}
        for name, j in self.meta.segments.items():
            segment_labels.setdefault(j, name)
        inst = Instance(tuple(self._points), tuple(self._segments), point_labels, segment_labels)
        return inst, self.meta
