from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segcover.geometry import (
    Line,
    Point,
    Segment,
    as_rational,
    axis_parallel_length,
    collinear_with,
    covers_extended,
    extreme_points,
    line_through,
    on_segment,
)


def P(x, y):
    return Point.of(x, y)


def S(p, q):
    return Segment(P(*p), P(*q))


X_AXIS = Line(0, 1, 0)


class TestRationals:
    @pytest.mark.parametrize("text, value", [("3", F(3)), ("-7/4", F(-7, 4)), ("6/8", F(3, 4)), ("0", F(0))])
    def test_literals(self, text, value):
        assert as_rational(text) == value

    @pytest.mark.parametrize("bad", ["1.5", "1/0", "", "a/b", "1/-2", "2 /3"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            as_rational(bad)

    @pytest.mark.parametrize("bad", [0.5, True, None])
    def test_rejects_inexact_types(self, bad):
        with pytest.raises(TypeError):
            as_rational(bad)

    def test_surrounding_space_tolerated(self):
        assert as_rational(" 2 ") == 2

    def test_lowest_terms(self):
        r = as_rational("-10/4")
        assert (r.numerator, r.denominator) == (-5, 2)


class TestSegment:
    def test_canonical_orientation(self):
        s = S((2, 0), (0, 0))
        assert (s.p, s.q) == (P(0, 0), P(2, 0))
        assert s == S((0, 0), (2, 0))

    def test_degenerate_allowed(self):
        assert S((1, 1), (1, 1)).is_degenerate


class TestOnSegment:
    def test_midpoint(self):
        assert on_segment(S((0, 0), (2, 0)), P(1, 0))

    def test_off_line(self):
        assert not on_segment(S((0, 0), (2, 0)), P(1, 1))

    def test_choice_gadget_segment(self):
        eps = F(1, 64)
        s = Segment(P(0, 0), P(3 - eps, 0))
        assert on_segment(s, P(2 + eps, 0))
        assert not on_segment(s, P(3, 0))

    def test_endpoints_and_beyond(self):
        s = S((0, 0), (4, 2))
        assert on_segment(s, P(0, 0)) and on_segment(s, P(4, 2)) and on_segment(s, P(2, 1))
        assert not on_segment(s, P(6, 3))

    def test_degenerate(self):
        s = S((1, 1), (1, 1))
        assert on_segment(s, P(1, 1)) and not on_segment(s, P(1, 2))


class TestCoversExtended:
    s = S((0, 0), (2, 0))

    def test_original_endpoint_included(self):
        assert covers_extended(self.s, F(1, 2), P(0, 0))

    def test_scaled_endpoint_excluded(self):
        assert not covers_extended(self.s, F(1, 2), P(F(5, 2), 0))
        assert not covers_extended(self.s, F(1, 2), P(F(-1, 2), 0))

    def test_inside_reach(self):
        assert covers_extended(self.s, F(1, 2), P(F(-1, 4), 0))
        assert covers_extended(self.s, F(1, 2), P(F(249, 100), 0))

    def test_off_line(self):
        assert not covers_extended(self.s, F(1, 2), P(1, F(1, 1000)))

    def test_degenerate_extension_is_the_point(self):
        d = S((1, 1), (1, 1))
        assert covers_extended(d, 5, P(1, 1))
        assert not covers_extended(d, 5, P(2, 1))

    @pytest.mark.parametrize("delta", [0, -1, "-1/2"])
    def test_nonpositive_delta(self, delta):
        with pytest.raises(ValueError):
            covers_extended(self.s, delta, P(0, 0))


class TestLines:
    def test_axes(self):
        assert line_through(P(0, 0), P(1, 0)).as_tuple() == (0, 1, 0)
        assert line_through(P(0, 0), P(0, 1)).as_tuple() == (1, 0, 0)

    def test_oblique(self):
        line = line_through(P(0, 0), P(2, 4))
        assert line.as_tuple() == (2, -1, 0)
        assert line.contains(P(0, 0)) and line.contains(P(2, 4))

    def test_rational_points_clear_denominators(self):
        line = line_through(P(F(1, 2), F(1, 3)), P(F(3, 2), F(4, 3)))
        a, b, c = line.as_tuple()
        assert a > 0 and all(isinstance(v, int) for v in (a, b, c))
        assert line.contains(P(F(5, 2), F(7, 3)))

    def test_same_point_rejected(self):
        with pytest.raises(ValueError):
            line_through(P(1, 1), P(1, 1))

    def test_collinear_with(self):
        assert collinear_with(S((0, 0), (2, 0)), X_AXIS)
        assert not collinear_with(S((0, 0), (0, 2)), X_AXIS)
        assert collinear_with(S((1, 0), (1, 0)), X_AXIS)


class TestExtremePoints:
    def test_three(self):
        assert extreme_points([P(5, 0), P(0, 0), P(10, 0)]) == [P(0, 0), P(10, 0)]

    def test_singleton_and_empty(self):
        assert extreme_points([P(3, 3)]) == [P(3, 3)]
        assert extreme_points([]) == []

    def test_not_collinear(self):
        with pytest.raises(ValueError):
            extreme_points([P(0, 0), P(1, 0), P(0, 1)])


class TestLength:
    def test_values(self):
        assert axis_parallel_length(S((0, 0), (2, 0))) == 2
        assert axis_parallel_length(S((0, 0), (0, 0))) == 0
        assert axis_parallel_length(Segment(P(3 + F(1, 64), 0), P(7 - F(1, 64), 0))) == 4 - F(1, 32)
        assert axis_parallel_length(S((0, 1), (0, 5))) == 4

    def test_oblique_unsupported(self):
        with pytest.raises(NotImplementedError):
            axis_parallel_length(S((0, 0), (1, 1)))


small = st.integers(-6, 6)
points = st.builds(P, small, small)
deltas = st.fractions(min_value=F(1, 20), max_value=3).filter(lambda d: d > 0)


@given(points, points, points, deltas)
def test_extension_contains_segment(p, q, t, delta):
    s = Segment(p, q)
    if on_segment(s, t):
        assert covers_extended(s, delta, t)


@given(points, points, st.fractions(-8, 8), deltas, deltas)
def test_extension_monotone_in_delta(p, q, mu, d1, d2):
    s = Segment(p, q)
    d1, d2 = sorted((d1, d2))
    t = P(p.x + mu * (q.x - p.x), p.y + mu * (q.y - p.y))
    if covers_extended(s, d1, t):
        assert covers_extended(s, d2, t)


@given(points, points, st.fractions(0, 1), st.fractions(0, 1), st.fractions(-3, 4), deltas)
def test_shrinking_shrinks_extension(p, q, a, b, mu, delta):
    a, b = sorted((a, b))

    def at(m):
        return P(p.x + m * (q.x - p.x), p.y + m * (q.y - p.y))

    inner = Segment(at(a), at(b))
    t = at(mu)
    if covers_extended(inner, delta, t):
        assert covers_extended(Segment(p, q), delta, t)


@given(points, points)
def test_line_symmetric_and_canonical(p, q):
    if p == q:
        return
    line = line_through(p, q)
    assert line == line_through(q, p)
    assert line.contains(p) and line.contains(q)
    shifted = line_through(p, P(2 * q.x - p.x, 2 * q.y - p.y))
    assert shifted == line


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=8), st.sampled_from([(1, 0), (0, 1), (1, 1), (2, -3)]))
def test_extreme_points_span_the_set(ts, d):
    c = [P(t * d[0], t * d[1]) for t in ts]
    ends = extreme_points(c)
    assert set(ends) <= set(c)
    span = Segment(ends[0], ends[-1])
    assert all(on_segment(span, t) for t in c)
