import json
import subprocess
import sys

import pytest

from exactlmi.cli import EXIT_GENERICITY, EXIT_OK, EXIT_PARSE, EXIT_TIMEOUT, main
from exactlmi.pencil import load_pencil


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--m", "3", "--n", "2", "--r", "2", "--json")
    assert code == EXIT_OK and json.loads(out)["theta"] == 9
    code, out, _ = run(capsys, "bound", "--m", "3", "--n", "2", "--r", "2")
    assert "= 9" in out


def test_bound_range_is_parse_error(capsys):
    code, _, err = run(capsys, "bound", "--m", "3", "--n", "2", "--r", "3")
    assert code == EXIT_PARSE and "error" in err


def test_solve_scheiderer(capsys):
    code, out, _ = run(capsys, "solve", "scheiderer.json", "--json", "--deterministic")
    assert code == EXIT_OK
    res = json.loads(out)
    assert res["outcome"] == "Witness" and res["rank"] == 2
    assert res["degree"] == 3 and res["real_roots"] == 3 and len(res["accepted"]) == 2
    firsts = sorted(acc["point"][0] for acc in res["accepted"])
    assert firsts == ["-0.127050844", "-0.930402927"]
    assert "timings" not in res


def test_solve_scheiderer_text(capsys):
    code, out, _ = run(capsys, "solve", "scheiderer.json", "--precision", "5")
    assert code == EXIT_OK
    assert "Witness at rank 2" in out and "-0.93040" in out and "approximation" in out


def test_solve_infeasible_fixture(capsys):
    code, out, _ = run(capsys, "solve", "infeasible_diag.json")
    assert code == EXIT_OK and "Empty" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent/pencil.json")
    assert code == EXIT_PARSE


def test_malformed_pencil(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 2, "n": 0, "matrices": [[["1", "2"], ["3", "1"]]]}')
    code, _, _ = run(capsys, "solve", str(bad))
    assert code == EXIT_PARSE


def test_bad_seed(capsys):
    code, _, _ = run(capsys, "bound", "--m", "3", "--n", "2", "--r", "2", "--seed", "-1")
    assert code == EXIT_PARSE


def test_genericity_exit(tmp_path, capsys):
    zero = [["0"] * 3 for _ in range(3)]
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"m": 3, "n": 3, "matrices": [zero] * 4}))
    code, out, _ = run(capsys, "lowrank", str(path), "--r", "1", "--json")
    assert code == EXIT_GENERICITY
    assert json.loads(out)["stage"] == "IsReg"


def test_timeout_exit(tmp_path, capsys):
    path = tmp_path / "p.json"
    run(capsys, "random", "--m", "3", "--n", "3", "--seed", "1", "--bound", "10", "--integer", "--out", str(path))
    code, _, _ = run(capsys, "lowrank", str(path), "--r", "2", "--max-seconds", "0")
    assert code == EXIT_TIMEOUT


def test_random_is_seeded(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "random", "--m", "3", "--n", "2", "--seed", "4", "--out", str(path))[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    p = load_pencil(a)
    assert (p.m, p.n) == (3, 2)
    code, out, _ = run(capsys, "random", "--m", "2", "--n", "1", "--seed", "4")
    assert json.loads(out)["m"] == 2


def test_lowrank_check_round_trip(tmp_path, capsys):
    pencil, rp = tmp_path / "p.json", tmp_path / "rp.json"
    run(capsys, "random", "--m", "3", "--n", "2", "--seed", "2", "--bound", "10", "--integer", "--out", str(pencil))
    code, out, _ = run(capsys, "lowrank", str(pencil), "--r", "2", "--out", str(rp), "--json", "--deterministic")
    assert code == EXIT_OK
    emitted = json.loads(out)["parametrization"]
    assert json.loads(rp.read_text()) == emitted
    # check also accepts the full lowrank output, unchanged
    full = tmp_path / "full.json"
    full.write_text(out)
    for path in (rp, full):
        code, out2, _ = run(capsys, "check", str(pencil), str(path), "--json")
        assert code == EXIT_OK
        res = json.loads(out2)
        assert res["real_roots"] >= len(res["accepted"])


def test_check_dimension_mismatch(tmp_path, capsys):
    rp = tmp_path / "rp.json"
    rp.write_text(json.dumps({"n": 1, "lambda": None, "q0": [1], "qi": [[0]], "qn1": [0, 1]}))
    code, _, _ = run(capsys, "check", "scheiderer.json", str(rp))
    assert code == EXIT_PARSE


def test_deterministic_output_is_byte_identical():
    cmd = [sys.executable, "-m", "exactlmi", "solve", "scheiderer.json", "--json", "--deterministic", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["outcome"] == "Witness"


def test_report_writes_csv_and_png(tmp_path, capsys):
    code, out, _ = run(capsys, "report", "--cases", "3,2,2", "--seeds", "1", "--out", str(tmp_path), "--json")
    assert code == EXIT_OK
    paths = json.loads(out)
    assert (tmp_path / "degrees.csv").read_text().startswith("m,n,r,seed")
    assert (tmp_path / "degrees.png").read_bytes()[:4] == b"\x89PNG"
    assert paths["csv"].endswith("degrees.csv")


def test_report_bad_cases(capsys):
    code, _, _ = run(capsys, "report", "--cases", "3,2")
    assert code == EXIT_PARSE


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
