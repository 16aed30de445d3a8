"""One-dimensional choice gadget over chains of integer sets.

On the line ``y = height`` the gadget places ``0`` and, for every ``i`` in
``1..N``, the three points ``i - eps``, ``i``, ``i + eps`` with
``eps = 1/N^2``. A cheap cover of everything except ``1..N`` must leave out
exactly one element from each set of a single chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from ..geometry import Point, axis_parallel_length
from ..instance import Instance, Solution
from .meta import Builder, GadgetMeta


@dataclass(frozen=True)
class Chain:
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        for t, s in enumerate(sets):
            if not s:
                raise ValueError(f"chain set {t} is empty")
            if any(not isinstance(v, int) or v < 1 for v in s):
                raise ValueError(f"chain set {t} must hold positive integers")
        for t in range(len(sets) - 1):
            if max(sets[t]) >= min(sets[t + 1]):
                raise ValueError(f"chain sets {t} and {t + 1} are not strictly increasing")

    @classmethod
    def of(cls, *sets: Iterable[int]) -> "Chain":
        return cls(tuple(frozenset(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)


def _check_chains(N: int, chains: Sequence[Chain]) -> int:
    lengths = {len(c) for c in chains}
    if len(lengths) > 1:
        raise ValueError(f"chains must share one length, got {sorted(lengths)}")
    ell = lengths.pop() if lengths else 0
    if chains and ell == 0:
        raise ValueError("chains must be nonempty")
    seen: set[int] = set()
    for c in chains:
        for s in c.sets:
            if seen & s:
                raise ValueError(f"chain sets overlap on {sorted(seen & s)}")
            if max(s) > N:
                raise ValueError(f"chain element {max(s)} exceeds N = {N}")
            seen |= s
    return ell


def place_choice_gadget(
    b: Builder,
    N: int,
    chains: Sequence[tuple[Hashable, Chain]],
    height: int = 0,
    prefix: str = "",
    weigh_by_length: bool = False,
) -> None:
    """Add the gadget's points and segments to ``b``.

    Segment names are ``{prefix}R{label}:0>{b}`` for ``[0, b-]``,
    ``{prefix}R{label}:{a}>{b}`` for ``[a+, b-]`` and
    ``{prefix}R{label}:{a}>end`` for ``[a+, N+1]``.
    """
    eps = Fraction(1, N * N)
    b.point(f"{prefix}0", 0, height, f"{prefix}U")
    for i in range(1, N + 1):
        b.point(f"{prefix}{i}-", i - eps, height, f"{prefix}U", f"{prefix}U-I")
        b.point(f"{prefix}{i}", i, height, f"{prefix}U", f"{prefix}I")
        b.point(f"{prefix}{i}+", i + eps, height, f"{prefix}U", f"{prefix}U-I")

    def add(name: str, x0: Fraction, x1: Fraction, group: str) -> None:
        p, q = Point.of(x0, height), Point.of(x1, height)
        w = x1 - x0 if weigh_by_length else 1
        b.segment(name, p, q, w, group, f"{prefix}F")

    for label, chain in chains:
        group = f"{prefix}R{label}"
        sets = [sorted(s) for s in chain.sets]
        for a in sets[0]:
            add(f"{group}:0>{a}", Fraction(0), a - eps, group)
        for t in range(len(sets) - 1):
            for a in sets[t]:
                for c in sets[t + 1]:
                    add(f"{group}:{a}>{c}", a + eps, c - eps, group)
        for a in sets[-1]:
            add(f"{group}:{a}>end", a + eps, Fraction(N + 1), group)


def _gen_choice_unchecked(N: int, chains: Sequence[Chain]) -> tuple[Instance, GadgetMeta]:
    """Test-only entry point: like :func:`gen_choice` without the ``N > 100`` requirement."""
    chains = [c if isinstance(c, Chain) else Chain(tuple(c)) for c in chains]
    ell = _check_chains(N, chains)
    b = Builder("choice")
    place_choice_gadget(b, N, list(enumerate(chains)))
    b.meta.params.update(
        N=N,
        eps=Fraction(1, N * N),
        ell=ell,
        p=len(chains),
        chains=[[sorted(s) for s in c.sets] for c in chains],
    )
    return b.build()


def gen_choice(N: int, chains: Sequence[Chain]) -> tuple[Instance, GadgetMeta]:
    if N <= 100:
        raise ValueError(f"the choice gadget needs N > 100, got {N}")
    return _gen_choice_unchecked(N, chains)


def choice_cover_names(prefix: str, label: Hashable, picks: Sequence[int]) -> list[str]:
    group = f"{prefix}R{label}"
    stops = ["0", *map(str, picks), "end"]
    return [f"{group}:{stops[t]}>{stops[t + 1]}" for t in range(len(stops) - 1)]


def build_choice_cover(meta: GadgetMeta, j: int, B: Iterable[int]) -> Solution:
    """The ``ell + 1`` segments that cover everything except the transversal ``B`` of chain ``j``."""
    chains = meta.params["chains"]
    if not 0 <= j < len(chains):
        raise ValueError(f"no chain {j}")
    picks = sorted(B)
    sets = chains[j]
    if len(picks) != len(sets) or any(b not in s for b, s in zip(picks, sets)):
        raise ValueError(f"{picks} does not pick one element from each set of chain {j}")
    return meta.solution(meta.segments[n] for n in choice_cover_names("", j, picks))


def total_length(instance: Instance, indices: Iterable[int]) -> Fraction:
    return sum((axis_parallel_length(instance.segments[j].segment) for j in indices), Fraction(0))
