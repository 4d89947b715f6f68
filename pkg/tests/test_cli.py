import json
import subprocess
import sys

import pytest

from ghostclass import cli
from ghostclass.tables import fixture_text


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("n", [4, 5])
def test_table_matches_fixture(capsys, n):
    code, out, _ = run(capsys, "table", "--n", str(n))
    assert code == 0
    assert out == fixture_text(n)


def test_table_rows(capsys):
    _, out, _ = run(capsys, "table", "--n", "5")
    row = next(ln for ln in out.splitlines() if ln.startswith("| w7 |"))
    assert row == "| w7 | e | {1} | 5 | 10+2a1 | w2 w14 | -a1-5 | a2 |"
    _, out, _ = run(capsys, "table", "--n", "4")
    row = next(ln for ln in out.splitlines() if ln.startswith("| w16 |"))
    assert "| 1 | -2a1 |" in row and row.endswith("| -a3-1 |")
    _, out, _ = run(capsys, "table", "--n", "3")
    assert len(out.splitlines()) == 2 + 8


def test_table_csv_and_json(capsys):
    _, out, _ = run(capsys, "table", "--n", "5", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "w,sigma,f,l(w),weight+2c,W2^0 W^P2,n1,n2"
    assert lines[7] == 'w7,e,{1},5,10+2a1,w2 w14,-a1-5,a2'
    _, out, _ = run(capsys, "table", "--n", "5", "--format", "json-lines")
    rec = json.loads(out.splitlines()[1])
    assert rec["label"] == "w2" and rec["schema_version"] == cli.SCHEMA_VERSION


def test_table_bad_n(capsys):
    code, _, err = run(capsys, "table", "--n", "2")
    assert code == 2 and "n must be" in err


def _jsonl(out):
    return [json.loads(ln) for ln in out.splitlines()]


def test_classify_zero_weight(capsys):
    code, out, _ = run(capsys, "classify", "--n", "5", "--lambda", "0,0,0", "--c", "0", "--format", "json-lines")
    assert code == 0
    recs = _jsonl(out)
    surv = [(r["label"], r["degree"], r["offset"]) for r in recs if r["survives"]]
    assert surv == [("w2", 2, "0"), ("w3", 4, "0"), ("w19", 9, "1"), ("w21", 6, "0"), ("w24", 7, "1")]
    keys = {"schema_version", "n", "label", "sigma", "f", "length", "degree", "weight", "offset",
            "survival", "extrapolated"}
    assert all(keys <= set(r) for r in recs)
    assert len(recs) == 24


def test_classify_n4_single_survivor(capsys):
    _, out, _ = run(capsys, "classify", "--n", "4", "--lambda", "2,1,1", "--c", "0", "--format", "json-lines")
    surv = [(r["label"], r["degree"], r["offset"]) for r in _jsonl(out) if r["survives"]]
    assert surv == [("w12", 5, "3")]


def test_classify_symbolic(capsys):
    _, out, _ = run(capsys, "classify", "--n", "5", "--format", "json-lines")
    surv = [(r["label"], r["survival"]) for r in _jsonl(out) if r["survives"]]
    assert surv[-1] == ("w24", "a2=a3 in {0,1}")
    assert len(surv) == 5


def test_classify_invalid_weight(capsys):
    code, _, err = run(capsys, "classify", "--n", "5", "--lambda", "1,0,0", "--c", "0")
    assert code == 2 and "parity" in err
    code, _, err = run(capsys, "classify", "--n", "5", "--lambda", "1,0")
    assert code == 2
    code, _, err = run(capsys, "classify", "--n", "5", "--lambda", "x")
    assert code == 2


def test_classify_extrapolation_warning(capsys):
    code, out, err = run(capsys, "classify", "--n", "6", "--format", "json-lines")
    assert code == 0 and "warning" in err
    assert all(r["extrapolated"] for r in _jsonl(out))
    _, _, err = run(capsys, "classify", "--n", "6", "--extrapolate")
    assert err == ""


def test_internal_error_exit_code(capsys, monkeypatch):
    from ghostclass.errors import ConsistencyError

    def boom(*a, **k):
        raise ConsistencyError("no factorisation")
    monkeypatch.setattr(cli, "classify", boom)
    code, _, err = run(capsys, "classify", "--n", "5")
    assert code == 3 and "internal" in err


def test_sweep_n5(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "5", "--box", "a1=0..3,a2=0..3,a3=0..3", "--format", "json-lines")
    assert code == 0
    lines = _jsonl(out)
    assert lines[0]["summary"] and lines[0]["points"] > 0
    for rec in lines[1:]:
        for w in rec["weights"]:
            a = [int(v) for v in w.split(";")[0].split(",")]
            assert a[1] == a[2] and a[1] in (0, 1)


def test_sweep_n4(capsys):
    _, out, _ = run(capsys, "sweep", "--n", "4", "--box", "a1=0..2,a2=0..2,a3=-2..2", "--format", "json-lines")
    for rec in _jsonl(out)[1:]:
        for w in rec["weights"]:
            a = [int(v) for v in w.split(";")[0].split(",")]
            assert abs(a[2]) == a[1] and a[1] in (0, 1)


def test_sweep_empty_and_invalid(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "5", "--box", "a1=0..0,a2=1..1,a3=0..0")
    assert code == 0 and "0 valid weights" in out
    assert run(capsys, "sweep", "--n", "5", "--box", "a1=0..3")[0] == 2
    assert run(capsys, "sweep", "--n", "5", "--box", "a1=3..0,a2=0..0,a3=0..0")[0] == 2
    assert run(capsys, "sweep", "--n", "5", "--box", "b1=0..1,a1=0..0,a2=0..0,a3=0..0")[0] == 2
    assert run(capsys, "sweep", "--n", "5", "--box", "a1=0-3")[0] == 2


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--max-n", "6")
    assert code == 0
    passes = [ln for ln in out.splitlines() if ln.startswith("PASS")]
    assert len(passes) >= 12 and "FAIL" not in out


def test_check_corrupted_fixture(capsys, tmp_path):
    bad = fixture_text(5).replace("| w7 | e | {1} | 5 |", "| w7 | e | {1} | 6 |")
    path = tmp_path / "table_n5.md"
    path.write_text(bad)
    code, out, _ = run(capsys, "check", "--max-n", "5", "--fixture", f"5={path}")
    assert code == 1
    assert "first failure: golden table fixtures: fixture table_n5: w7/l(w): 5 != 6" in out


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "ghostclass.cli", "classify", "--n", "4", "--format", "json-lines"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True,
                            env={"GHOSTCLASS_BACKEND": "numpy", "PATH": ""}).stdout
    assert first == second
