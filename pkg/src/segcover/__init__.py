"""Covering points with weighted line segments: exact, approximate and extension solvers."""

from .extension import (
    CollinearSet,
    Infeasible,
    Kernel,
    dense_subset,
    density_check,
    infeasibility_precheck,
    kernelize,
    long_lines,
    solve_ext,
)
from .fpt import FptStats, find_long_line, hitting_candidates, reduce_reasonable, solve_fpt, solve_unweighted
from .geometry import Line, Point, Segment, as_rational, covers_extended, line_through, on_segment
from .instance import (
    CoverReport,
    Instance,
    InstanceFormatError,
    Solution,
    WeightedSegment,
    load_instance,
    load_solution,
    save_instance,
    solution_to_json,
    verify_cover,
)
from .oracle import brute_force, min_cover_size
from .pas import round_weights, solve_pas

__all__ = [
    "CollinearSet",
    "CoverReport",
    "FptStats",
    "Infeasible",
    "Instance",
    "InstanceFormatError",
    "Kernel",
    "Line",
    "Point",
    "Segment",
    "Solution",
    "WeightedSegment",
    "as_rational",
    "brute_force",
    "covers_extended",
    "dense_subset",
    "density_check",
    "find_long_line",
    "hitting_candidates",
    "infeasibility_precheck",
    "kernelize",
    "line_through",
    "load_instance",
    "load_solution",
    "long_lines",
    "min_cover_size",
    "on_segment",
    "reduce_reasonable",
    "round_weights",
    "save_instance",
    "solution_to_json",
    "solve_ext",
    "solve_fpt",
    "solve_pas",
    "solve_unweighted",
    "verify_cover",
]
