"""Exhaustive cover search used as ground truth and as the leaf solver.

Both searches branch only on sets that contain the lowest uncovered element;
every cover contains such a set, so nothing optimal is lost.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .instance import Instance, Solution, coverage_sets

Best = Optional[tuple[Fraction, tuple[int, ...]]]


def min_weight_cover(
    target: int,
    masks: Sequence[int],
    weights: Sequence[Fraction],
    k: int,
    candidates: Optional[Sequence[int]] = None,
) -> Best:
    """Lightest set of at most ``k`` masks (from ``candidates``) whose union contains ``target``.

    Returns ``(weight, sorted indices)`` or ``None``. Ties go to the
    lexicographically smallest index tuple among inclusion-minimal covers.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    pool = range(len(masks)) if candidates is None else candidates
    by_bit: dict[int, list[int]] = {}
    rest = target
    while rest:
        low = rest & -rest
        by_bit[low] = [j for j in pool if masks[j] & low]
        rest ^= low

    best: list = [None]

    def dfs(uncovered: int, chosen: list[int], weight: Fraction, budget: int) -> None:
        if best[0] is not None and weight > best[0][0]:
            return
        if not uncovered:
            key = (weight, tuple(sorted(chosen)))
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        if budget == 0:
            return
        low = uncovered & -uncovered
        for j in by_bit[low]:
            if j in chosen:
                continue
            chosen.append(j)
            dfs(uncovered & ~masks[j], chosen, weight + weights[j], budget - 1)
            chosen.pop()

    dfs(target, [], Fraction(0), k)
    return best[0]


def brute_force(instance: Instance, k: int) -> Optional[Solution]:
    """Minimum-weight cover of all points using at most ``k`` segments, or ``None``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    masks = coverage_sets(instance)
    target = (1 << len(instance.points)) - 1
    found = min_weight_cover(target, masks, instance.weights, k)
    if found is None:
        return None
    return Solution(found[1], found[0])


def min_cover_size(target: int, masks: Sequence[int], limit: int) -> Optional[int]:
    """Smallest number of masks whose union contains ``target``, if at most ``limit``."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    by_bit: dict[int, list[int]] = {}
    rest = target
    while rest:
        low = rest & -rest
        # a mask dominated by another one covering this bit is never needed
        hits = sorted({m & target for m in masks if m & low}, key=lambda m: -bin(m).count("1"))
        by_bit[low] = [m for m in hits if not any(o != m and o & m == m for o in hits)]
        rest ^= low
    failed: set[tuple[int, int]] = set()

    def feasible(uncovered: int, budget: int) -> bool:
        if not uncovered:
            return True
        if budget == 0 or (uncovered, budget) in failed:
            return False
        low = uncovered & -uncovered
        for m in by_bit[low]:
            if feasible(uncovered & ~m, budget - 1):
                return True
        failed.add((uncovered, budget))
        return False

    for c in range(limit + 1):
        if feasible(target, c):
            return c
    return None
