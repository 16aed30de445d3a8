"""Exact planar primitives over the rationals.

Everything here is built on :class:`fractions.Fraction`; no floating point value
is ever accepted or produced.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_LITERAL = re.compile(r"-?\d+(?:/\d+)?")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or ``"num/den"`` literal to a Fraction.

    Floats are rejected on purpose: a float has already lost exactness.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _LITERAL.fullmatch(text):
            raise ValueError(f"malformed rational literal {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    return str(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "Point":
        return cls(as_rational(x), as_rational(y))

    def shifted(self, dx: RationalLike, dy: RationalLike) -> "Point":
        return Point(self.x + as_rational(dx), self.y + as_rational(dy))

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True, order=True)
class Segment:
    """Closed segment with endpoints stored in lexicographic order."""

    p: Point
    q: Point

    def __post_init__(self):
        p, q = Point(*map(as_rational, self.p)), Point(*map(as_rational, self.q))
        if q < p:
            p, q = q, p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_degenerate(self) -> bool:
        return self.p == self.q

    @property
    def midpoint(self) -> Point:
        return Point((self.p.x + self.q.x) / 2, (self.p.y + self.q.y) / 2)

    @property
    def is_horizontal(self) -> bool:
        return self.p.y == self.q.y

    @property
    def is_vertical(self) -> bool:
        return self.p.x == self.q.x

    def __repr__(self) -> str:
        return f"Segment(({self.p.x}, {self.p.y}), ({self.q.x}, {self.q.y}))"


@dataclass(frozen=True, order=True)
class Line:
    """The line ``a*x + b*y + c = 0`` in canonical integer form."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("a line needs (a, b) != (0, 0)")
        g = math.gcd(math.gcd(abs(self.a), abs(self.b)), abs(self.c))
        a, b, c = self.a // g, self.b // g, self.c // g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def contains(self, t: Point) -> bool:
        return self.a * t.x + self.b * t.y + self.c == 0

    @property
    def is_vertical(self) -> bool:
        return self.b == 0

    def coordinate(self, t: Point) -> Fraction:
        """1-D affine parameter of a point on this line, increasing in (x, y) order."""
        return t.y if self.is_vertical else t.x

    def point_at(self, coord: Fraction) -> Point:
        if self.is_vertical:
            return Point(Fraction(-self.c, self.a), coord)
        return Point(coord, (-self.c - self.a * coord) / self.b)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def _cross(o: Point, p: Point, t: Point) -> Fraction:
    return (p.x - o.x) * (t.y - o.y) - (p.y - o.y) * (t.x - o.x)


def on_segment(s: Segment, t: Point) -> bool:
    """True iff ``t`` lies on the closed segment ``s``."""
    # p <= q lexicographically, so x is already ordered; the box test is cheap and rejects most
    if not s.p.x <= t.x <= s.q.x:
        return False
    if not min(s.p.y, s.q.y) <= t.y <= max(s.p.y, s.q.y):
        return False
    return _cross(s.p, s.q, t) == 0


def covers_extended(s: Segment, delta: RationalLike, t: Point) -> bool:
    """Membership of ``t`` in the delta-extension of ``s``.

    The extension scales ``s`` about its midpoint by every factor in
    ``[1, 1 + delta)``, so it is open at the two scaled extremes while the
    original endpoints stay covered. A degenerate segment extends to itself.
    """
    delta = as_rational(delta)
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if s.is_degenerate:
        return t == s.p
    if _cross(s.p, s.q, t) != 0:
        return False
    # t = midpoint + mu * (q - p) / 2 with |mu| < 1 + delta, read off one non-constant axis
    p, q = s.p, s.q
    if p.x != q.x:
        off, span = 2 * t.x - p.x - q.x, q.x - p.x
    else:
        off, span = 2 * t.y - p.y - q.y, q.y - p.y
    return abs(off) < (1 + delta) * abs(span)


def line_through(p: Point, q: Point) -> Line:
    if p == q:
        raise ValueError(f"a line needs two distinct points, got {p} twice")
    a = p.y - q.y
    b = q.x - p.x
    c = -(a * p.x + b * p.y)
    scale = math.lcm(a.denominator, b.denominator, c.denominator)
    return Line(int(a * scale), int(b * scale), int(c * scale))


def collinear_with(s: Segment, line: Line) -> bool:
    return line.contains(s.p) and line.contains(s.q)


def extreme_points(points: Iterable[Point]) -> list[Point]:
    """Endpoints of the smallest segment covering a collinear point set."""
    distinct = sorted(set(points))
    if len(distinct) <= 1:
        return distinct
    line = line_through(distinct[0], distinct[-1])
    stray = [t for t in distinct if not line.contains(t)]
    if stray:
        raise ValueError(f"points are not collinear: {stray[0]} is off {line}")
    return [distinct[0], distinct[-1]]


def axis_parallel_length(s: Segment) -> Fraction:
    if s.is_horizontal:
        return s.q.x - s.p.x
    if s.is_vertical:
        return s.q.y - s.p.y
    raise NotImplementedError(f"length of oblique segment {s} is not rational in general")
