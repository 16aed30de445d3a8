import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from segcover.generators.choice import (
    Chain,
    _gen_choice_unchecked,
    build_choice_cover,
    gen_choice,
    total_length,
)
from segcover.instance import Instance, coverage_sets, verify_cover


def test_chain_validation():
    Chain.of({1, 2}, {3}, {7, 9})
    with pytest.raises(ValueError):
        Chain.of({1, 3}, {2})
    with pytest.raises(ValueError):
        Chain.of({1}, set())
    with pytest.raises(ValueError):
        Chain.of({0}, {2})


def test_requires_large_n():
    with pytest.raises(ValueError):
        gen_choice(100, [Chain.of({3}, {7})])
    inst, _ = gen_choice(101, [Chain.of({3}, {7})])
    assert len(inst.points) == 1 + 3 * 101


def test_figure_example():
    inst, meta = _gen_choice_unchecked(8, [Chain.of({3}, {7})])
    assert len(inst.points) == 25
    cover = build_choice_cover(meta, 0, [3, 7])
    assert len(cover) == 3
    assert total_length(inst, cover.indices) == 9 - F(1, 16)
    assert meta.rational("eps") == F(1, 64)


def test_empty_chain_list():
    inst, meta = _gen_choice_unchecked(8, [])
    assert inst.segments == () and meta.params["ell"] == 0


@pytest.mark.parametrize(
    "chains",
    [
        [Chain.of({1}, {2}), Chain.of({3}, {4}, {5})],  # different lengths
        [Chain.of({1, 2}), Chain.of({2, 3})],  # overlapping sets
        [Chain.of({1}, {9})],  # beyond N = 8
    ],
)
def test_precondition_errors(chains):
    with pytest.raises(ValueError):
        _gen_choice_unchecked(8, chains)


def test_endpoints_are_gadget_coordinates():
    rng = random.Random(61)
    for _ in range(10):
        N = rng.randint(8, 30)
        inst, meta = _gen_choice_unchecked(N, [_random_chain(rng, N, 2)])
        eps = F(1, N * N)
        allowed = {F(0), F(N + 1)} | {i - eps for i in range(1, N + 1)} | {i + eps for i in range(1, N + 1)}
        for s, w in inst.segments:
            assert s.p.y == s.q.y == 0 and w == 1
            assert s.p.x in allowed and s.q.x in allowed


def _random_chain(rng, N, ell):
    cuts = sorted(rng.sample(range(1, N), ell - 1)) if ell > 1 else []
    bounds = [0, *cuts, N]
    sets = []
    for lo, hi in zip(bounds, bounds[1:]):
        pool = list(range(lo + 1, hi + 1))
        sets.append(set(rng.sample(pool, rng.randint(1, min(3, len(pool))))))
    return Chain(tuple(frozenset(s) for s in sets))


def test_cover_misses_exactly_the_transversal():
    rng = random.Random(62)
    for _ in range(20):
        N = rng.randint(10, 40)
        ell = rng.randint(1, 4)
        chain = _random_chain(rng, N, ell)
        inst, meta = _gen_choice_unchecked(N, [chain])
        B = [rng.choice(sorted(s)) for s in chain.sets]
        cover = build_choice_cover(meta, 0, B)
        assert len(cover) == ell + 1
        assert total_length(inst, cover.indices) == N + 1 - F(2 * ell, N * N)
        uncovered = {inst.point_labels[i] for i in verify_cover(inst, cover).uncovered_points}
        assert uncovered == {str(b) for b in B}


def test_build_cover_rejects_bad_transversal():
    _, meta = _gen_choice_unchecked(8, [Chain.of({2, 3}, {7})])
    with pytest.raises(ValueError):
        build_choice_cover(meta, 0, [3])
    with pytest.raises(ValueError):
        build_choice_cover(meta, 0, [4, 7])
    with pytest.raises(ValueError):
        build_choice_cover(meta, 1, [3, 7])


def covers_of(inst: Instance, target_ids, limit=None):
    """Every subset of segments covering the target points, by exhaustive enumeration."""
    masks = coverage_sets(inst)
    target = sum(1 << i for i in target_ids)
    m = len(masks)
    for size in range(m + 1 if limit is None else limit + 1):
        for combo in combinations(range(m), size):
            union = 0
            for j in combo:
                union |= masks[j]
            if union & target == target:
                yield combo


@pytest.mark.parametrize(
    "chains",
    [
        [Chain.of({2}, {5, 6})],
        [Chain.of({1, 2}, {5, 6}), Chain.of({3}, {7, 8})],
        [Chain.of({2, 4}), Chain.of({6})],
    ],
)
def test_length_properties_exhaustively(chains):
    N = 8
    inst, meta = _gen_choice_unchecked(N, chains)
    ell = meta.params["ell"]
    outside = meta.point_groups["U"]
    outside = [i for i in outside if i not in set(meta.point_groups["I"])]
    I_points = {meta.points[str(i)]: i for i in range(1, N + 1)}
    for combo in covers_of(inst, outside):
        length = total_length(inst, combo)
        assert length >= N + 1 - F(2, N)
        if length <= N + F(3, 2):
            assert length == N + 1 - F(2 * ell, N * N)
            missed = {I_points[i] for i in verify_cover(inst, combo).uncovered_points}
            assert any(all(missed & s for s in c.sets) for c in chains)
