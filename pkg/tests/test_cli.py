import json

import pytest

from corpus import corpus
from segcover.cli import main
from segcover.generators.meta import GadgetMeta
from segcover.generators.sat import build_sat_solution
from segcover.instance import load_instance, load_solution, save_instance, solution_to_json

SAT_SPEC = {"n": 3, "clauses": [[1, 2, 3], [-1, 2, -3], [1, -2, 3], [-1, -2, -3], [1, 2, -3]]}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def small(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(
        json.dumps(
            {
                "points": [["0", "0"], ["1", "0"], ["2", "0"], ["0", "1"]],
                "segments": [
                    {"p": ["0", "0"], "q": ["2", "0"], "w": "3"},
                    {"p": ["0", "0"], "q": ["0", "1"], "w": "1"},
                    {"p": ["1", "0"], "q": ["2", "0"], "w": "1"},
                ],
            }
        )
    )
    return path


@pytest.mark.parametrize("mode, extra", [("exact", []), ("brute", []), ("pas", ["--epsilon", "1/2"]), ("ext", ["--delta", "1/2"])])
def test_solve_modes(capsys, small, mode, extra):
    code, out, _ = run(capsys, "solve", "--mode", mode, "--k", 2, *extra, small)
    assert code == 0
    doc = json.loads(out)
    assert doc["feasible"] and doc["indices"] == [1, 2] and doc["weight"] == "2"
    assert load_solution(out) is not None
    if mode == "pas":
        assert doc["bound_factor"] == "3/2"


def test_brute_k0_infeasible(capsys, small):
    code, out, _ = run(capsys, "solve", "--mode", "brute", "--k", 0, small)
    assert code == 0 and json.loads(out) == {"feasible": False}


def test_exact_matches_brute_end_to_end(capsys, tmp_path):
    for n, (inst, k) in enumerate(corpus(40, seed=91)):
        path = tmp_path / f"i{n}.json"
        path.write_text(save_instance(inst))
        outs = [json.loads(run(capsys, "solve", "--mode", m, "--k", k, path)[1]) for m in ("exact", "brute")]
        assert outs[0].get("weight") == outs[1].get("weight")
        assert outs[0]["feasible"] == outs[1]["feasible"]


def test_verify_sat_solution_with_half_extension(capsys, tmp_path):
    spec = tmp_path / "sat.json"
    spec.write_text(json.dumps(SAT_SPEC))
    inst_path, meta_path = tmp_path / "inst.json", tmp_path / "meta.json"
    code, out, _ = run(capsys, "gen", "sat", spec, "--out", inst_path, "--meta", meta_path)
    assert code == 0 and json.loads(out)["segments"] == 118
    meta = GadgetMeta.from_json(json.loads(meta_path.read_text()))
    sol = build_sat_solution(meta, {1: True, 2: True, 3: False})
    sol_path = tmp_path / "sol.json"
    sol_path.write_text(json.dumps(solution_to_json(sol)))
    code, out, _ = run(capsys, "verify", inst_path, sol_path, "--delta", "1/2")
    assert code == 0
    assert json.loads(out) == {"covered": True, "uncovered_points": [], "delta_used": "1/2"}
    assert len(load_instance(inst_path.read_text()).points) == 153


def test_gen_choice_and_psi(capsys, tmp_path):
    spec = tmp_path / "choice.json"
    spec.write_text(json.dumps({"N": 101, "chains": [[[3], [7, 8]], [[1], [50]]]}))
    code, out, _ = run(capsys, "gen", "choice", spec, "--out", tmp_path / "c.json")
    assert code == 0 and json.loads(out)["points"] == 1 + 3 * 101
    k4 = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]
    spec = tmp_path / "psi.json"
    spec.write_text(json.dumps({"H": k4, "G": {"edges": [[10 * a, 10 * b] for a, b in k4]}, "lambda": {str(10 * a): a for a in range(1, 5)}}))
    code, out, _ = run(capsys, "gen", "psi", spec, "--out", tmp_path / "p.json", "--meta", tmp_path / "pm.json")
    assert code == 0
    meta = json.loads((tmp_path / "pm.json").read_text())
    assert meta["params"]["k_prime"] == 22 and meta["params"]["N"] > 400


def test_kernelize(capsys, small, tmp_path):
    out_path, prov = tmp_path / "k.json", tmp_path / "prov.json"
    code, out, _ = run(capsys, "kernelize", "--k", 2, "--delta", "1/2", small, "--out", out_path, "--provenance", prov)
    assert code == 0 and json.loads(out)["feasible"]
    reduced = load_instance(out_path.read_text())
    doc = json.loads(prov.read_text())
    assert len(doc["points"]) == len(reduced.points)
    assert doc["long_lines"] == [[0, 1, 0]]


def test_kernelize_infeasible(capsys, tmp_path):
    path = tmp_path / "gp.json"
    path.write_text(json.dumps({"points": [[str(x), str(x * x)] for x in range(5)], "segments": []}))
    code, out, _ = run(capsys, "kernelize", "--k", 2, "--delta", 1, path, "--out", tmp_path / "k.json")
    assert code == 0 and json.loads(out) == {"feasible": False, "reason": "too-many-off-line-points"}
    assert not (tmp_path / "k.json").exists()


def test_stats(capsys, small):
    code, out, _ = run(capsys, "stats", small, "--k", 2)
    doc = json.loads(out)
    assert code == 0
    assert doc["points"] == 4 and doc["segments"] == 3 and doc["distinct_weights"] == 2
    assert doc["lines_by_point_count"] == {"2": 3, "3": 1}
    assert doc["long_lines"] == [{"line": [0, 1, 0], "points": 3}]
    assert doc["precheck"] is None


def test_output_is_byte_stable(capsys, small):
    first = run(capsys, "stats", small)[1] + run(capsys, "solve", "--mode", "pas", "--k", 2, "--epsilon", "1/10", small)[1]
    second = run(capsys, "stats", small)[1] + run(capsys, "solve", "--mode", "pas", "--k", 2, "--epsilon", "1/10", small)[1]
    assert first == second


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["solve", "--mode", "exact", "--k", "-1"], "--k"),
        (["solve", "--mode", "pas", "--k", "1", "--epsilon", "0"], "--epsilon"),
        (["solve", "--mode", "ext", "--k", "1", "--delta", "1.5"], "--delta"),
        (["solve", "--mode", "pas", "--k", "1"], "--epsilon"),
        (["solve", "--mode", "ext", "--k", "1"], "--delta"),
        (["solve", "--mode", "fast", "--k", "1"], "--mode"),
        (["kernelize", "--k", "0", "--delta", "1", "--out", "x.json"], "--k"),
        (["frobnicate"], "frobnicate"),
    ],
)
def test_usage_errors(capsys, small, argv, flag):
    code, _, err = run(capsys, *argv, small)
    assert code == 1
    assert flag in err


def test_io_errors(capsys, tmp_path, small):
    code, _, err = run(capsys, "stats", tmp_path / "missing.json")
    assert code == 2 and "missing.json" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [["0", "x"]], "segments": []}')
    code, _, err = run(capsys, "stats", bad)
    assert code == 2 and "points[0][1]" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, _, err = run(capsys, "solve", "--mode", "exact", "--k", 1, broken)
    assert code == 2 and "line 1" in err
    sol = tmp_path / "sol.json"
    sol.write_text('{"feasible": true, "indices": [7], "weight": "1"}')
    code, _, err = run(capsys, "verify", small, sol)
    assert code == 2 and "indices" in err


@pytest.mark.parametrize(
    "kind, spec, where",
    [
        ("sat", {"n": 3, "clauses": [[1, 2, 3]]}, "clauses"),
        ("sat", {"clauses": []}, "n"),
        ("choice", {"N": 8, "chains": [[[3], [7]]]}, "N"),
        ("choice", {"N": 200, "chains": [[[7], [3]]]}, "chains[0]"),
        ("psi", {"H": [[1, 2]], "G": {"edges": [[1, 2]]}, "lambda": {"1": 1, "2": 2}}, "3-regular"),
        ("psi", {"H": [[1, 2]], "G": {"edges": [[1, 2]]}}, "lambda"),
    ],
)
def test_invalid_generator_specs(capsys, tmp_path, kind, spec, where):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, _, err = run(capsys, "gen", kind, path, "--out", tmp_path / "o.json")
    assert code == 2 and where in err


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "segcover", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "kernelize" in proc.stdout
