"""(1 + eps)-approximation by guessing the heaviest weight and rounding the rest."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fpt import solve_fpt
from .geometry import RationalLike, as_rational
from .instance import Instance, Solution, WeightedSegment


@dataclass(frozen=True)
class RoundedWeights:
    weights: tuple[Fraction, ...]
    W: Fraction
    distinct_count: int


def round_weight(w: Fraction, W: Fraction, k: int, eps: Fraction) -> Fraction:
    floor_value = eps / (2 * k) * W
    if w <= floor_value:
        return floor_value
    ratio = 1 + eps / 2
    upper = W
    # smallest power bracket W/ratio^(i+1) < w <= W/ratio^i
    while not w > upper / ratio:
        upper /= ratio
    return upper


def round_weights(instance: Instance, W: RationalLike, k: int, eps: RationalLike) -> RoundedWeights:
    W, eps = as_rational(W), as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k < 1:
        raise ValueError("k must be at least 1")
    if W <= 0:
        raise ValueError("W must be positive")
    heavy = [j for j, w in enumerate(instance.weights) if w > W]
    if heavy:
        raise ValueError(f"segment {heavy[0]} is heavier than W = {W}")
    rounded = tuple(round_weight(w, W, k, eps) for w in instance.weights)
    return RoundedWeights(rounded, W, len(set(rounded)))


def solve_pas(instance: Instance, k: int, eps: RationalLike) -> Optional[Solution]:
    """A cover of size at most ``k`` whose weight is within ``1 + eps`` of the optimum."""
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0 or not instance.points:
        return solve_fpt(instance, k)
    best = None
    for W in sorted(set(instance.weights)):
        kept = [j for j, w in enumerate(instance.weights) if w <= W]
        sub = instance.subinstance(range(len(instance.points)), kept)
        if W == 0:
            # only zero-weight segments survive; every cover is optimal
            rounded = sub
        else:
            rw = round_weights(sub, W, k, eps)
            rounded = Instance(sub.points, tuple(WeightedSegment(s, w) for (s, _), w in zip(sub.segments, rw.weights)))
        found = solve_fpt(rounded, k)
        if found is None:
            continue
        indices = tuple(sorted(kept[j] for j in found.indices))
        cand = (instance.weight_of(indices), indices)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return Solution(best[1], best[0])
