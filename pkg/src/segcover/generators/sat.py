"""Unweighted axis-parallel instances from (E3,E5)-CNF formulas.

Layout, with ``L = 100 n``:

* variable ``i`` owns six points around height ``4i`` and six segments; the
  two optimal 3-covers are its "true" and "false" choices, and they contain
  the long horizontal ``xTrueSegment`` (height ``4i``) or ``xFalseSegment``
  (height ``4i + 2``);
* clause ``i`` sits around ``x = 20i`` above all variable gadgets and is built
  from two chained OR gadgets plus three transfer segments that drop down
  onto the literal's variable segment.

A clause gadget costs 11 segments when one of its literal points is already
covered by a variable gadget and 12 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from ..geometry import Point
from ..instance import Instance, Solution, verify_cover
from .meta import Builder, GadgetMeta

VARIABLE_POINTS = {"a": (-3, 0), "b": (-2, 0), "c": (-1, 0), "d": (-3, 1), "e": (-2, 1), "f": (-2, 2)}
VARIABLE_ENDS = {"g": (1, 0), "h": (1, 2)}  # segment endpoints outside the point set
CHOOSE_TRUE = ("ad", "bf", "cg")
CHOOSE_FALSE = ("ac", "de", "fh")

OR_POINTS = {
    "l": (0, 0), "m": (0, 1), "n": (0, 2), "o": (0, 3), "p": (0, 4),
    "q": (1, 1), "r": (1, 3), "s": (2, 1), "t": (2, 2), "u": (2, 3), "v": (3, 2),
}  # fmt: skip
OR_FALSE = ("qr", "su")
OR_TRUE = ("ms", "ou", "tv")
OR_MOVE = ("ln", "np")

LITERAL_NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class CnfFormula:
    """An (E3,E5) formula; literals use DIMACS signs over variables ``1..n``."""

    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.n <= 0 or self.n % 3:
            raise ValueError(f"n must be a positive multiple of 3, got {self.n}")
        if len(self.clauses) != 5 * self.n // 3:
            raise ValueError(f"expected {5 * self.n // 3} clauses for n = {self.n}, got {len(self.clauses)}")
        occurrences = [0] * (self.n + 1)
        for i, clause in enumerate(self.clauses, 1):
            if len(clause) != 3:
                raise ValueError(f"clause {i} has {len(clause)} literals, expected 3")
            for lit in clause:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"clause {i} has invalid literal {lit!r}")
                occurrences[abs(lit)] += 1
        wrong = [v for v in range(1, self.n + 1) if occurrences[v] != 5]
        if wrong:
            raise ValueError(f"variable {wrong[0]} occurs {occurrences[wrong[0]]} times, expected 5")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied(self, eta: Mapping[int, bool]) -> list[bool]:
        return [any(eta[abs(lit)] == (lit > 0) for lit in clause) for clause in self.clauses]


def gen_sat(f: CnfFormula) -> tuple[Instance, GadgetMeta]:
    n, m = f.n, f.m
    L = 100 * n
    top = 4 * (n + 1)
    b = Builder("sat")

    for i in range(1, n + 1):
        where = {}
        for name, (sx, dy) in VARIABLE_POINTS.items():
            b.point(f"v{i}.{name}", sx * L, 4 * i + dy, f"pointsVariable{i}")
            where[name] = Point.of(sx * L, 4 * i + dy)
        for name, (sx, dy) in VARIABLE_ENDS.items():
            where[name] = Point.of(sx * L, 4 * i + dy)
        for choice, names in (("true", CHOOSE_TRUE), ("false", CHOOSE_FALSE)):
            for nm in names:
                b.segment(
                    f"v{i}.{nm}", where[nm[0]], where[nm[1]], 1,
                    f"chooseVariable{i}.{choice}", f"segmentsVariable{i}",
                )  # fmt: skip
        b.meta.segments[f"xTrueSegment{i}"] = b.meta.segments[f"v{i}.cg"]
        b.meta.segments[f"xFalseSegment{i}"] = b.meta.segments[f"v{i}.fh"]

    for i, clause in enumerate(f.clauses, 1):
        pc = f"pointsClause{i}"
        sc = f"segmentsClause{i}"
        where: dict[str, Point] = {}
        lows = [(20 * i + t, 4 * abs(lit) + 2 * (lit < 0)) for t, lit in enumerate(clause)]
        highs = [(20 * i, top), (20 * i + 1, top + 4), (20 * i + 2, top + 6)]
        for name, low, high in zip(LITERAL_NAMES, lows, highs):
            b.point(f"c{i}.{name}0", *low, pc)
            b.point(f"c{i}.{name}1", *high, pc)
            where[f"{name}0"] = Point.of(*low)
            where[f"{name}1"] = Point.of(*high)
        for j in (0, 1):
            ox, oy = 20 * i + 3 + 3 * j, top + 2 * j
            tag = f"or{j}"
            for name, (dx, dy) in OR_POINTS.items():
                where[f"{tag}.{name}"] = Point.of(ox + dx, oy + dy)
                if name != "v":
                    b.point(f"c{i}.{tag}.{name}", ox + dx, oy + dy, pc, f"pointsOr{i},{j}")
            for kind, names in (("false", OR_FALSE), ("true", OR_TRUE), ("move", OR_MOVE)):
                for nm in names:
                    b.segment(
                        f"c{i}.{tag}.{nm}", where[f"{tag}.{nm[0]}"], where[f"{tag}.{nm[1]}"], 1,
                        f"chooseOr{i},{j}.{kind}", f"segmentsOr{i},{j}", sc,
                    )  # fmt: skip
        # v of the first OR gadget coincides with l of the second
        b.point(f"c{i}.or0.v", *where["or0.v"])
        b.point(f"c{i}.or1.v", *where["or1.v"], pc)
        transfers = {
            "x0x1": ("x0", "x1"), "y0y1": ("y0", "y1"), "z0z1": ("z0", "z1"),
            "x1l0": ("x1", "or0.l"), "y1p0": ("y1", "or0.p"), "z1p1": ("z1", "or1.p"),
        }  # fmt: skip
        for nm, (s, t) in transfers.items():
            b.segment(f"c{i}.{nm}", where[s], where[t], 1, f"moveVariableSegments{i}", sc)

    b.meta.params.update(n=n, m=m, L=L, clauses=[list(c) for c in f.clauses])
    return b.build()


def _clause_solution_names(i: int, literal: Optional[int]) -> list[str]:
    """Segment names of the 11-segment cover leaving literal point ``literal`` (0, 1, 2)
    to a variable gadget, or of the 12-segment full cover when ``literal`` is None."""
    or_true = ("ms", "ou", "tv")
    if literal == 0:
        parts = [("or0", ("np",) + or_true), ("or1", ("np",) + or_true)]
        extra = ["x1l0", "y0y1", "z0z1"]
    elif literal == 1:
        parts = [("or0", ("ln",) + or_true), ("or1", ("np",) + or_true)]
        extra = ["y1p0", "x0x1", "z0z1"]
    elif literal == 2:
        parts = [("or0", OR_MOVE + OR_FALSE), ("or1", ("ln",) + or_true)]
        extra = ["z1p1", "x0x1", "y0y1"]
    elif literal is None:
        parts = [("or0", OR_MOVE + OR_FALSE), ("or1", OR_MOVE + OR_FALSE)]
        extra = ["x0x1", "y0y1", "z0z1", "or1.tv"]
    else:
        raise ValueError(f"literal position must be 0, 1, 2 or None, got {literal!r}")
    names = [f"c{i}.{tag}.{nm}" for tag, nms in parts for nm in nms]
    return names + [f"c{i}.{nm}" for nm in extra]


def clause_solution(meta: GadgetMeta, i: int, literal: Optional[int]) -> list[int]:
    return [meta.segments[n] for n in _clause_solution_names(i, literal)]


def _normalize_eta(meta: GadgetMeta, eta: Union[Mapping[int, bool], Sequence[bool]]) -> dict[int, bool]:
    n = int(meta.params["n"])
    if isinstance(eta, Mapping):
        out = {int(v): bool(val) for v, val in eta.items()}
    else:
        out = {v: bool(val) for v, val in enumerate(eta, 1)}
    if set(out) != set(range(1, n + 1)):
        raise ValueError(f"assignment must cover variables 1..{n}")
    return out


def build_sat_solution(
    meta: GadgetMeta,
    eta: Union[Mapping[int, bool], Sequence[bool]],
    literal_choice: Optional[Mapping[int, int]] = None,
) -> Solution:
    """Cover of size ``64n/3 + (#unsatisfied clauses)`` from an assignment.

    ``literal_choice`` maps a clause number to the position (0, 1, 2) of a
    literal satisfying it; satisfied clauses not listed use their first
    satisfied literal.
    """
    eta = _normalize_eta(meta, eta)
    n = int(meta.params["n"])
    literal_choice = dict(literal_choice or {})
    chosen: list[int] = []
    for i in range(1, n + 1):
        chosen += meta.segment_groups[f"chooseVariable{i}.{'true' if eta[i] else 'false'}"]
    for i, clause in enumerate(meta.params["clauses"], 1):
        good = [t for t, lit in enumerate(clause) if eta[abs(lit)] == (lit > 0)]
        pick = literal_choice.pop(i, good[0] if good else None)
        if pick is not None and pick not in good:
            raise ValueError(f"literal {pick} of clause {i} is not satisfied by the assignment")
        chosen += clause_solution(meta, i, pick)
    if literal_choice:
        raise ValueError(f"no clause {sorted(literal_choice)[0]}")
    return meta.solution(chosen)


def overpaid_variables(meta: GadgetMeta, solution: Solution) -> list[int]:
    picked = set(solution.indices)
    n = int(meta.params["n"])
    return [i for i in range(1, n + 1) if len(picked & set(meta.segment_groups[f"segmentsVariable{i}"])) >= 4]


def decode_sat_assignment(
    meta: GadgetMeta, solution: Solution, instance: Optional[Instance] = None
) -> dict[int, bool]:
    """Read an assignment off a cover: true iff xTrueSegment is used or the variable is overpaid.

    When ``instance`` is given the solution is first checked to be a cover.
    """
    if instance is not None and not verify_cover(instance, solution).covered:
        raise ValueError("solution does not cover the instance")
    picked = set(solution.indices)
    overpaid = set(overpaid_variables(meta, solution))
    n = int(meta.params["n"])
    return {i: i in overpaid or meta.segments[f"xTrueSegment{i}"] in picked for i in range(1, n + 1)}


def formula_from_meta(meta: GadgetMeta) -> CnfFormula:
    return CnfFormula(int(meta.params["n"]), tuple(tuple(c) for c in meta.params["clauses"]))


def clauses_satisfied(meta: GadgetMeta, eta: Mapping[int, bool]) -> int:
    return sum(formula_from_meta(meta).satisfied(eta))


def literal_positions(clause: Iterable[int]) -> list[str]:
    return [LITERAL_NAMES[t] for t, _ in enumerate(clause)]
