import json
import os
import subprocess
import sys

import pytest

from dioph.cli import main
from dioph.corpus import fixture_dir
from dioph.integerize import IntegerSolution, verify
from dioph.store import SolutionStore


def fixture(name):
    return str(fixture_dir() / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_k3(capsys):
    code, out, _ = run(capsys, "construct", "--problem", fixture("ex2.3"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "k3" and doc["curve"]["a6"] == "-161/27000"


def test_construct_k4(capsys):
    code, out, _ = run(capsys, "construct", "--problem", fixture("ex3.7a"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["curve"]["a4"] == "-49/3" and doc["q"] == "7"


def test_construct_non_square_exits_2(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"a": "1", "k": 4, "z": "3", "terms": [{"coeff": "1", "exp": 3, "value": "2"}]}))
    code, _, err = run(capsys, "construct", "--problem", str(path))
    assert code == 2 and "square" in err


def test_construct_malformed_exits_1(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text("{not json")
    assert run(capsys, "construct", "--problem", str(path))[0] == 1
    path.write_text(json.dumps({"a": "0", "k": 3, "z": "1", "terms": []}))
    assert run(capsys, "construct", "--problem", str(path))[0] == 1
    assert run(capsys, "construct", "--problem", str(tmp_path / "missing.json"))[0] == 1


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1


def test_solve_reproduces_printed_identity(capsys):
    code, out, _ = run(capsys, "solve", "--problem", fixture("ex2.3"), "--gen", "643/90,2578/135")
    assert code == 0
    (line,) = out.splitlines()
    sol = IntegerSolution.from_json(json.loads(line))
    assert verify(sol) and sol.mu == 9
    assert [t.value for t in sol.lhs + sol.rhs] == [-5201, 5111, 45, 1929, 9, 18, 27]


def test_solve_second_multiple(capsys):
    code, out, _ = run(capsys, "solve", "--problem", fixture("ex3.7b"), "--gen=-8,16", "--multiples", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    second = IntegerSolution.from_json(json.loads(lines[1]))
    assert [t.value for t in second.lhs[:3]] == [4856749, -4297067, -279841]


def test_solve_zero_multiples(capsys):
    assert run(capsys, "solve", "--problem", fixture("ex2.3"), "--gen", "643/90,2578/135", "--multiples", "0")[:2] == (0, "")


def test_solve_off_curve_exits_1(capsys):
    code, _, err = run(capsys, "solve", "--problem", fixture("ex2.3"), "--gen", "1,1")
    assert code == 1 and "not on" in err


def test_solve_reports_skips(capsys):
    # (0, 0) is 2-torsion on y^2 = x^3 - 96x: m = 1 has y = 0, m = 2 is infinity
    code, out, err = run(capsys, "solve", "--problem", fixture("ex3.7b"), "--gen", "0,0", "--multiples", "2")
    assert code == 0 and out == ""
    assert "skip m=1" in err and "skip m=2" in err


def test_solve_is_deterministic(capsys):
    argv = ("solve", "--problem", fixture("ex3.8"), "--gen=-152/9,140/27", "--multiples", "3")
    assert run(capsys, *argv) == run(capsys, *argv)


def test_store_deduplicates(tmp_path, capsys):
    store = tmp_path / "s.jsonl"
    argv = ("solve", "--problem", fixture("ex2.3"), "--gen", "643/90,2578/135", "--multiples", "3", "--store", str(store))
    assert run(capsys, *argv)[0] == 0
    assert run(capsys, *argv)[0] == 0
    records = SolutionStore(store).records()
    assert len(records) == 3 and all(verify(r) for r in records)


def test_store_env_default(tmp_path, capsys, monkeypatch):
    target = tmp_path / "env.jsonl"
    monkeypatch.setenv("DIOPH_STORE", str(target))
    run(capsys, "solve", "--problem", fixture("ex3.7c"), "--gen=-2,10", "--store")
    assert len(SolutionStore(target)) == 1


def test_store_skips_unverified(tmp_path):
    bad = IntegerSolution.from_json(
        {"lhs": [{"coeff": "1", "exp": 3, "value": "1"}, {"coeff": "1", "exp": 3, "value": "2"}],
         "rhs": [{"coeff": "1", "exp": 3, "value": "3"}]}
    )
    assert SolutionStore(tmp_path / "s.jsonl").add([bad]) == 0


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--problem", fixture("ex3.7c"), "--num-bound", "10")
    assert code == 0 and "-2,10    100 = 100" in out.splitlines()
    code, out, _ = run(capsys, "search", "--problem", fixture("ex3.8"), "--num-bound", "160", "--den-bound", "9", "--json")
    found = [json.loads(line) for line in out.splitlines()]
    assert {"x": "-44/3", "y": "20/3", "lhs": "400/9", "rhs": "400/9"} in found
    assert any(p["x"] == "-152/9" and p["y"] == "140/27" for p in found)


def test_search_empty_window(capsys):
    code, out, _ = run(capsys, "search", "--problem", fixture("ex2.3"), "--num-bound", "0")
    assert code == 0 and out == ""


def test_verify_command(tmp_path, capsys):
    good = tmp_path / "good.jsonl"
    good.write_text(json.dumps({"identity": "359227580^3+(-251874598)^3+107352982^3=128122^5+(-79524)^5+48598^5"}) + "\n")
    code, out, _ = run(capsys, "verify", str(good))
    assert code == 0 and "verified" in out

    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps({"identity": "1^3+2^3=3^3"}) + "\n")
    assert run(capsys, "verify", str(bad))[0] == 3

    junk = tmp_path / "junk.jsonl"
    junk.write_text('{"identity": "1^3+2^3=9^1"}\nnot json\n')
    code, _, err = run(capsys, "verify", str(junk))
    assert code == 1 and "line 2" in err


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "12/12 entries passed" in out
    code, out, _ = run(capsys, "corpus", "--json")
    assert json.loads(out)["all_passed"] is True


def test_console_script_entry_point(tmp_path):
    env = dict(os.environ, DIOPH_STORE=str(tmp_path / "unused.jsonl"))
    proc = subprocess.run(
        [sys.executable, "-m", "dioph.cli", "construct", "--problem", fixture("ex3.7b")],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0 and "-96" in proc.stdout
