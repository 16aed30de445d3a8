"""Instances, solutions, the JSON file formats, and cover verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, NamedTuple, Optional, Sequence

from .geometry import (
    Point,
    RationalLike,
    Segment,
    as_rational,
    covers_extended,
    format_rational,
    on_segment,
)


class InstanceFormatError(ValueError):
    """Raised for malformed instance or solution documents.

    ``location`` is either ``"line L, column C"`` for JSON syntax errors or a
    path such as ``segments[3].w`` for semantic errors.
    """

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class WeightedSegment(NamedTuple):
    segment: Segment
    weight: Fraction


@dataclass(frozen=True)
class Instance:
    points: tuple[Point, ...]
    segments: tuple[WeightedSegment, ...]
    point_labels: Mapping[int, str] = field(default_factory=dict, compare=False)
    segment_labels: Mapping[int, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for j, (_, w) in enumerate(self.segments):
            if w < 0:
                raise ValueError(f"segment {j} has negative weight {w}")

    @classmethod
    def build(
        cls,
        points: Iterable[Sequence[RationalLike]],
        segments: Iterable[tuple],
        point_labels: Optional[Mapping[int, str]] = None,
        segment_labels: Optional[Mapping[int, str]] = None,
    ) -> "Instance":
        """Construct from plain tuples.

        Each segment entry is ``(p, q)`` (unit weight) or ``(p, q, w)``.
        """
        pts = tuple(Point.of(*p) for p in points)
        segs = []
        for entry in segments:
            p, q, *rest = entry
            w = as_rational(rest[0]) if rest else Fraction(1)
            segs.append(WeightedSegment(Segment(Point.of(*p), Point.of(*q)), w))
        return cls(pts, tuple(segs), dict(point_labels or {}), dict(segment_labels or {}))

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for _, w in self.segments)

    def weight_of(self, indices: Iterable[int]) -> Fraction:
        return sum((self.segments[j].weight for j in indices), Fraction(0))

    def subinstance(self, point_ids: Sequence[int], segment_ids: Sequence[int]) -> "Instance":
        """Restriction keeping the listed points and segments, in the given order."""
        return Instance(
            tuple(self.points[i] for i in point_ids),
            tuple(self.segments[j] for j in segment_ids),
            {n: self.point_labels[i] for n, i in enumerate(point_ids) if i in self.point_labels},
            {n: self.segment_labels[j] for n, j in enumerate(segment_ids) if j in self.segment_labels},
        )


@dataclass(frozen=True)
class Solution:
    indices: tuple[int, ...]
    weight: Fraction

    @classmethod
    def of(cls, instance: Instance, indices: Iterable[int]) -> "Solution":
        idx = tuple(sorted(set(indices)))
        for j in idx:
            if not 0 <= j < len(instance.segments):
                raise IndexError(f"segment index {j} out of range for {len(instance.segments)} segments")
        return cls(idx, instance.weight_of(idx))

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class CoverReport:
    covered: bool
    uncovered_points: tuple[int, ...]
    delta_used: Optional[Fraction] = None

    def to_json(self) -> dict[str, Any]:
        return {
            "covered": self.covered,
            "uncovered_points": list(self.uncovered_points),
            "delta_used": None if self.delta_used is None else format_rational(self.delta_used),
        }


# --- coverage ---------------------------------------------------------------


def coverage_sets(instance: Instance) -> list[int]:
    """Per-segment bitmask: bit ``i`` of mask ``j`` is set iff segment ``j`` covers point ``i``."""
    masks = []
    for s, _ in instance.segments:
        m = 0
        for i, t in enumerate(instance.points):
            if on_segment(s, t):
                m |= 1 << i
        masks.append(m)
    return masks


def verify_cover(
    instance: Instance, solution: Solution | Iterable[int], delta: Optional[RationalLike] = None
) -> CoverReport:
    """Check that the selected segments (delta-extended if given) cover every point."""
    indices = solution.indices if isinstance(solution, Solution) else tuple(solution)
    n = len(instance.segments)
    for j in indices:
        if not 0 <= j < n:
            raise IndexError(f"segment index {j} out of range for {n} segments")
    chosen = [instance.segments[j].segment for j in indices]
    if delta is None:
        hit = on_segment
    else:
        delta = as_rational(delta)

        def hit(s: Segment, t: Point) -> bool:
            return covers_extended(s, delta, t)

    missing = tuple(i for i, t in enumerate(instance.points) if not any(hit(s, t) for s in chosen))
    return CoverReport(not missing, missing, delta)


# --- serialization ------------------------------------------------------------


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise InstanceFormatError("expected a rational literal string", where)
    try:
        return as_rational(value)
    except ValueError as exc:
        raise InstanceFormatError(str(exc), where) from None


def _point(value: Any, where: str) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise InstanceFormatError('expected ["x", "y"]', where)
    return Point(_rational(value[0], f"{where}[0]"), _rational(value[1], f"{where}[1]"))


def _parse_json(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def _labels(raw: Any, where: str, size: int) -> dict[int, str]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise InstanceFormatError("expected an object of index -> tag", where)
    out = {}
    for key, tag in raw.items():
        if not key.isdigit() or int(key) >= size:
            raise InstanceFormatError(f"label index {key!r} out of range", where)
        if not isinstance(tag, str):
            raise InstanceFormatError("label tags must be strings", f"{where}.{key}")
        out[int(key)] = tag
    return out


def load_instance(text: str | bytes) -> Instance:
    doc = _parse_json(text)
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be an object", "$")
    raw_points = doc.get("points")
    raw_segments = doc.get("segments")
    if not isinstance(raw_points, list):
        raise InstanceFormatError("missing or non-list 'points'", "points")
    if not isinstance(raw_segments, list):
        raise InstanceFormatError("missing or non-list 'segments'", "segments")
    points = tuple(_point(p, f"points[{i}]") for i, p in enumerate(raw_points))
    segments = []
    for j, raw in enumerate(raw_segments):
        where = f"segments[{j}]"
        if not isinstance(raw, dict):
            raise InstanceFormatError('expected {"p", "q", "w"}', where)
        p = _point(raw.get("p"), f"{where}.p")
        q = _point(raw.get("q"), f"{where}.q")
        w = _rational(raw.get("w"), f"{where}.w")
        if w < 0:
            raise InstanceFormatError(f"negative weight {w}", f"{where}.w")
        segments.append(WeightedSegment(Segment(p, q), w))
    labels = doc.get("labels") or {}
    if not isinstance(labels, dict):
        raise InstanceFormatError("expected an object", "labels")
    return Instance(
        points,
        tuple(segments),
        _labels(labels.get("points"), "labels.points", len(points)),
        _labels(labels.get("segments"), "labels.segments", len(segments)),
    )


def _point_json(t: Point) -> list[str]:
    return [format_rational(t.x), format_rational(t.y)]


def instance_to_json(instance: Instance) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "points": [_point_json(t) for t in instance.points],
        "segments": [
            {"p": _point_json(s.p), "q": _point_json(s.q), "w": format_rational(w)}
            for s, w in instance.segments
        ],
    }
    labels = {}
    if instance.point_labels:
        labels["points"] = {str(i): instance.point_labels[i] for i in sorted(instance.point_labels)}
    if instance.segment_labels:
        labels["segments"] = {str(j): instance.segment_labels[j] for j in sorted(instance.segment_labels)}
    if labels:
        doc["labels"] = labels
    return doc


def save_instance(instance: Instance) -> str:
    return json.dumps(instance_to_json(instance), indent=1) + "\n"


def solution_to_json(solution: Optional[Solution]) -> dict[str, Any]:
    if solution is None:
        return {"feasible": False}
    return {
        "feasible": True,
        "indices": list(solution.indices),
        "weight": format_rational(solution.weight),
    }


def load_solution(text: str | bytes) -> Optional[Solution]:
    """Parse a solution document; ``None`` for ``{"feasible": false}``."""
    doc = _parse_json(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("feasible"), bool):
        raise InstanceFormatError("expected an object with boolean 'feasible'", "feasible")
    if not doc["feasible"]:
        return None
    indices = doc.get("indices")
    if not isinstance(indices, list) or not all(isinstance(j, int) and j >= 0 for j in indices):
        raise InstanceFormatError("expected a list of nonnegative integers", "indices")
    if len(set(indices)) != len(indices):
        raise InstanceFormatError("duplicate segment index", "indices")
    return Solution(tuple(sorted(indices)), _rational(doc.get("weight"), "weight"))
