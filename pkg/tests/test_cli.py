import io
import json
import os
import subprocess
import sys

import pytest

from eqtc.cli import EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, main
from eqtc.corpus import get_action


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_version_lists_every_rule(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == EXIT_OK and out.startswith("eqtc 0.1.0")
    for k in range(1, 21):
        assert f"R{k}" in out


def test_empty_complex_has_reduced_class_in_degree_minus_one(capsys, files):
    code, out, _ = run(capsys, "analyze-complex", files("e.txt", "m=2"))
    assert code == EXIT_OK
    assert "rank H~^-1 = 1" in out


def test_analyze_complex_json(capsys, files):
    code, out, _ = run(capsys, "analyze-complex", files("c4.txt", "m=4; 1 2; 2 3; 3 4; 1 4"), "--out", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["f_vector"] == [4, 4] and doc["reduced_cohomology"] == {"1": 1}


def report_rows(capsys, *argv):
    code, out, _ = run(capsys, "report", *argv, "--out", "json")
    assert code == EXIT_OK
    return {r["quantity"]: r["interval"] for r in json.loads(out)["quantities"]}


def test_report_two_vertices(capsys, files):
    # Z_K = S^3 for two disjoint points: zcl_2 = 1, k-matrix sum 6, two facets
    path = files("two.txt", "m=2; 1; 2")
    rows = report_rows(capsys, path)
    assert rows["cat_{T^2}(Z_K)"] == [2, 2]
    assert rows["TC_{T^2,2}(Z_K)"][1] == 6
    sharp = report_rows(capsys, path, "--sharp-zcl")
    assert sharp["TC_{T^2,2}(Z_K)"] == [2, 6]
    code, md, _ = run(capsys, "report", path, "--sharp-zcl")
    assert "| TC_{T^2,2}(Z_K) | [2, 6] |" in md


def test_orbit_dot(capsys, files):
    path = files("refl.json", get_action("reflection_square").to_json())
    code, out, _ = run(capsys, "orbit", path, "--out", "dot")
    assert code == EXIT_OK and out.startswith("digraph")
    assert out.count("minimal=yes") == 2
    assert "TC^{Z2,2}(S1) = inf" in out


def test_saved_facts_round_trip(capsys, files, tmp_path):
    saved = str(tmp_path / "saved.json")
    path = files("anti.json", get_action("antipodal_octagon").to_json())
    code, first, _ = run(capsys, "bounds", "--action", path, "--save-facts", saved)
    assert code == EXIT_OK
    code, second, _ = run(capsys, "bounds", saved)
    assert code == EXIT_OK and second == first


def test_inconsistent_facts_exit_three(capsys, files):
    facts = [{"kind": "TC_n", "params": {"space": "X", "n": 2}, "interval": [5, "inf"]},
             {"kind": "TC_{G,n}", "params": {"space": "X", "group": "G", "n": 2}, "interval": [1, 3]}]
    code, out, err = run(capsys, "bounds", files("f.json", facts))
    assert code == EXIT_INCONSISTENT and "inconsistent" in err


@pytest.mark.parametrize("argv", [
    ["analyze-complex", "/nonexistent/file"],
    ["moment-angle", "-", "--field", "F4"],
    ["analyze-complex", "-", "--out", "dot"],
    [],
])
def test_input_errors_exit_one(capsys, monkeypatch, argv):
    monkeypatch.setattr(sys, "stdin", io.StringIO("m=2; 1 2"))
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err


def test_parse_error_names_the_module(capsys, files):
    code, _, err = run(capsys, "analyze-complex", files("bad.txt", "m=3; 1 x"))
    assert code == EXIT_INPUT and err.startswith("eqtc: simplicial:")


def test_budget_exit_two(capsys, files):
    code, _, err = run(capsys, "moment-angle", files("c8.txt", "m=8; 1 2; 2 3; 3 4; 4 5; 5 6; 6 7; 7 8; 1 8"),
                       "--max-vertices", "6")
    assert code == EXIT_BUDGET and "budget" in err


def test_output_ignores_hash_seed(files):
    path = files("refl.json", get_action("reflection_square").to_json())
    outputs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-m", "eqtc", "report", path, "--out", "json"],
                             capture_output=True, text=True, env=env, check=True)
        outputs.add(res.stdout)
    assert len(outputs) == 1
