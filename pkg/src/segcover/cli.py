"""Command-line entry point.

Exit status is 0 on success (an "infeasible" answer included), 1 on a usage
error and 2 when an input file cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from .extension import Infeasible, infeasibility_precheck, kernelize, long_lines, solve_ext
from .fpt import solve_fpt
from .geometry import as_rational, format_rational, line_through
from .generators.choice import Chain, gen_choice
from .generators.psi import PsiInput, gen_psi
from .generators.sat import CnfFormula, gen_sat
from .instance import (
    InstanceFormatError,
    load_instance,
    load_solution,
    save_instance,
    solution_to_json,
    verify_cover,
)
from .oracle import brute_force
from .pas import solve_pas

USAGE_ERROR = 1
INPUT_ERROR = 2


class InputError(Exception):
    """An unreadable or malformed input; ``where`` names the file and location."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid rational {text!r} (expected N or N/D)") from None


def _positive_rational(text: str) -> Fraction:
    value = _rational_arg(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _dumps(doc: Any) -> str:
    return json.dumps(doc, indent=1) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    except UnicodeDecodeError as exc:
        raise InputError(path, f"not UTF-8 text ({exc.reason})") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None


def _load(path: str, loader: Callable[[str], Any]) -> Any:
    text = _read(path)
    try:
        return loader(text)
    except InstanceFormatError as exc:
        raise InputError(path, str(exc)) from None


def _line_json(line) -> list[int]:
    return list(line.as_tuple())


# --- subcommands ----------------------------------------------------------------


def cmd_solve(args) -> dict[str, Any]:
    instance = _load(args.file, load_instance)
    if args.mode == "pas":
        if args.epsilon is None:
            raise _UsageError("--mode pas requires --epsilon")
        found = solve_pas(instance, args.k, args.epsilon)
        doc = solution_to_json(found)
        doc["epsilon"] = format_rational(args.epsilon)
        doc["bound_factor"] = format_rational(1 + args.epsilon)
        return doc
    if args.mode == "ext":
        if args.delta is None:
            raise _UsageError("--mode ext requires --delta")
        doc = solution_to_json(solve_ext(instance, args.k, args.delta))
        doc["delta"] = format_rational(args.delta)
        return doc
    solver = solve_fpt if args.mode == "exact" else brute_force
    return solution_to_json(solver(instance, args.k))


def cmd_verify(args) -> dict[str, Any]:
    instance = _load(args.file, load_instance)
    solution = _load(args.solution, load_solution)
    indices = () if solution is None else solution.indices
    bad = [j for j in indices if j >= len(instance.segments)]
    if bad:
        raise InputError(args.solution, f"indices: segment {bad[0]} out of range for {len(instance.segments)} segments")
    return verify_cover(instance, indices, args.delta).to_json()


def cmd_kernelize(args) -> dict[str, Any]:
    if args.k < 1:
        raise _UsageError("--k must be at least 1 for kernelize")
    instance = _load(args.file, load_instance)
    kernel = kernelize(instance, args.k, args.delta)
    if isinstance(kernel, Infeasible):
        return {"feasible": False, "reason": kernel.reason}
    _write(args.out, save_instance(kernel.reduced))
    if args.provenance:
        _write(
            args.provenance,
            _dumps(
                {
                    "points": list(kernel.point_provenance),
                    "segments": list(kernel.segment_provenance),
                    "long_lines": [_line_json(line) for line in kernel.long_lines],
                    "off_line_points": list(kernel.D),
                }
            ),
        )
    return {
        "feasible": True,
        "points": len(kernel.reduced.points),
        "segments": len(kernel.reduced.segments),
        "long_lines": len(kernel.long_lines),
    }


def cmd_stats(args) -> dict[str, Any]:
    instance = _load(args.file, load_instance)
    distinct = sorted(set(instance.points))
    on_line: dict[Any, set] = {}
    for p, q in combinations(distinct, 2):
        on_line.setdefault(line_through(p, q), set()).update((p, q))
    census = Counter(len(pts) for pts in on_line.values())
    doc: dict[str, Any] = {
        "points": len(instance.points),
        "distinct_points": len(distinct),
        "segments": len(instance.segments),
        "distinct_weights": len(set(instance.weights)),
        "total_weight": format_rational(instance.weight_of(range(len(instance.segments)))),
        "lines_by_point_count": {str(c): census[c] for c in sorted(census)},
    }
    if args.k is not None:
        if args.k == 0:
            doc["long_lines"] = None
        else:
            doc["long_lines"] = [
                {"line": _line_json(line), "points": sum(1 for t in distinct if line.contains(t))}
                for line in long_lines(instance, args.k)
            ]
        doc["precheck"] = infeasibility_precheck(instance, args.k)
    return doc


def _spec_error(path: str, where: str, message: str) -> InputError:
    return InputError(path, f"{where}: {message}")


def _gen_choice(spec: dict, path: str):
    N = spec.get("N")
    if not isinstance(N, int):
        raise _spec_error(path, "N", "expected an integer")
    if N <= 100:
        raise _spec_error(path, "N", f"the choice gadget needs N > 100, got {N}")
    raw = spec.get("chains", [])
    if not isinstance(raw, list):
        raise _spec_error(path, "chains", "expected a list of chains")
    chains = []
    for j, chain in enumerate(raw):
        if not isinstance(chain, list) or not all(isinstance(s, list) for s in chain):
            raise _spec_error(path, f"chains[{j}]", "expected a list of integer lists")
        try:
            chains.append(Chain.of(*chain))
        except ValueError as exc:
            raise _spec_error(path, f"chains[{j}]", str(exc)) from None
    try:
        return gen_choice(N, chains)
    except ValueError as exc:
        raise _spec_error(path, "chains", str(exc)) from None


def _pairs(raw: Any, path: str, where: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise _spec_error(path, where, "expected a list of [u, v] pairs")
    out = []
    for i, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise _spec_error(path, f"{where}[{i}]", "expected [u, v] with integer vertices")
        out.append((e[0], e[1]))
    return out


def _gen_psi(spec: dict, path: str):
    H = _pairs(spec.get("H"), path, "H")
    G_raw = spec.get("G")
    G = _pairs(G_raw.get("edges") if isinstance(G_raw, dict) else G_raw, path, "G.edges")
    raw_colors = spec.get("lambda")
    if not isinstance(raw_colors, dict):
        raise _spec_error(path, "lambda", "expected an object vertex -> pattern vertex")
    colors = {}
    for v, a in raw_colors.items():
        if not (v.lstrip("-").isdigit() and isinstance(a, int)):
            raise _spec_error(path, f"lambda.{v}", "expected integer vertex and colour")
        colors[int(v)] = a
    try:
        return gen_psi(PsiInput(tuple(H), tuple(G), colors))
    except ValueError as exc:
        raise _spec_error(path, "$", str(exc)) from None


def _gen_sat(spec: dict, path: str):
    n = spec.get("n")
    clauses = spec.get("clauses")
    if not isinstance(n, int):
        raise _spec_error(path, "n", "expected an integer")
    if not isinstance(clauses, list) or not all(isinstance(c, list) for c in clauses):
        raise _spec_error(path, "clauses", "expected a list of literal lists")
    try:
        return gen_sat(CnfFormula(n, tuple(tuple(c) for c in clauses)))
    except ValueError as exc:
        raise _spec_error(path, "clauses", str(exc)) from None


GENERATORS = {"choice": _gen_choice, "psi": _gen_psi, "sat": _gen_sat}


def cmd_gen(args) -> dict[str, Any]:
    text = _read(args.spec)
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(args.spec, f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(spec, dict):
        raise _spec_error(args.spec, "$", "top level must be an object")
    instance, meta = GENERATORS[args.kind](spec, args.spec)
    _write(args.out, save_instance(instance))
    if args.meta:
        _write(args.meta, meta.dumps())
    return {"kind": args.kind, "points": len(instance.points), "segments": len(instance.segments)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segcover", description="Cover points with weighted segments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance with at most K segments")
    p.add_argument("--mode", choices=("exact", "pas", "ext", "brute"), required=True)
    p.add_argument("--k", type=_nonnegative_int, required=True)
    p.add_argument("--epsilon", type=_positive_rational)
    p.add_argument("--delta", type=_positive_rational)
    p.add_argument("file")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("gen", help="generate a reduction instance from a JSON spec")
    p.add_argument("kind", choices=sorted(GENERATORS))
    p.add_argument("spec")
    p.add_argument("--out", required=True)
    p.add_argument("--meta")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("verify", help="check that a solution covers an instance")
    p.add_argument("file")
    p.add_argument("solution")
    p.add_argument("--delta", type=_positive_rational)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("kernelize", help="write the reduced instance for the extension solver")
    p.add_argument("--k", type=_nonnegative_int, required=True)
    p.add_argument("--delta", type=_positive_rational, required=True)
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--provenance")
    p.set_defaults(run=cmd_kernelize)

    p = sub.add_parser("stats", help="counts, line census and distinct weights")
    p.add_argument("file")
    p.add_argument("--k", type=_nonnegative_int)
    p.set_defaults(run=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit 1 through _Parser.error
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        doc = args.run(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"segcover: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except InputError as exc:
        print(f"segcover: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    sys.stdout.write(_dumps(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
