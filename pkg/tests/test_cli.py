import csv
import io
import json

import pytest

from stirmode.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stirling_row(capsys):
    assert run(capsys, "stirling", "4")[:2] == (0, "1 7 6 1\n")
    assert run(capsys, "stirling", "5", "5")[:2] == (0, "1\n")
    code, out, _ = run(capsys, "stirling", "25", "--format", "json")
    assert code == 0 and all(isinstance(v, str) for v in json.loads(out))


def test_stirling_usage(capsys):
    assert run(capsys, "stirling", "0")[0] == 2
    assert run(capsys, "stirling", "abc")[0] == 2
    assert run(capsys)[0] == 2


def test_max_n_env(capsys, monkeypatch):
    monkeypatch.setenv("STIRMODE_MAX_N", "10")
    assert run(capsys, "stirling", "11")[0] == 2


def test_kn(capsys):
    assert run(capsys, "kn", "10")[1] == "K_n=5 k_star=5 interval=[4,6] ties=false\n"
    assert run(capsys, "kn", "2")[1] == "K_n=1 k_star=2 interval=[1,2] ties=true\n"
    assert run(capsys, "kn", "1")[0] == 2
    code, out, _ = run(capsys, "kn", "10", "--format", "json")
    assert json.loads(out) == {"n": 10, "K_n": 5, "k_star": 5, "corollary_interval": [4, 6], "ties": False}


def test_verify_json(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--from", "2", "--to", "150", "--checks", "theorem1,cp,equality",
                     "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["schema_version"] == "1" and doc["command"] == "verify"
    assert doc["summary"]["equality_event_n"] == [2]
    assert [r["n"] for r in doc["results"]] == list(range(2, 151))
    assert json.loads(json.dumps(doc)) == doc


def test_verify_wegner_and_usage(capsys):
    assert run(capsys, "verify", "--from", "3", "--to", "100", "--checks", "wegner_upper")[0] == 0
    assert run(capsys, "verify", "--from", "2", "--to", "1")[0] == 2
    assert run(capsys, "verify", "--from", "2", "--to", "5", "--checks", "bogus")[0] == 2


def test_verify_failure_exit(capsys, monkeypatch):
    import stirmode.verifier as v
    real = v.verify_n

    def broken(n, row=None):
        r = real(n, row)
        return v.CheckReport(**{**r.__dict__, "theorem1_ok": n != 7})

    monkeypatch.setattr(v, "verify_n", broken)
    code, out, _ = run(capsys, "verify", "--from", "2", "--to", "10", "--checks", "theorem1")
    assert code == 1
    assert json.loads(out)["summary"]["failures"]["theorem1"] == [7]


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--from", "30", "--to", "35", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["n"]) for r in rows] == list(range(30, 36))
    assert rows[0]["wegner_lower_ok"] == "" and rows[1]["wegner_lower_ok"] == "True"


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "--from", "2", "--to", "60")[1]
    b = run(capsys, "verify", "--from", "2", "--to", "60")[1]
    assert a == b and json.loads(a)["generated_at"] is None


def test_timestamp_sources(capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    out = run(capsys, "verify", "--from", "2", "--to", "3")[1]
    assert json.loads(out)["generated_at"] == "1970-01-01T00:00:00Z"
    out = run(capsys, "verify", "--from", "2", "--to", "3", "--timestamp")[1]
    assert json.loads(out)["generated_at"].endswith("Z")


def test_implications_cmd(capsys):
    code, out, _ = run(capsys, "implications", "--from", "3", "--to", "500")
    assert code == 0 and json.loads(out)["summary"]["ok"]


def test_conjecture_cmd(capsys):
    code, out, _ = run(capsys, "conjecture", "--n", "2", "--grid", "100")
    assert code == 0 and json.loads(out)["summary"]["max_shift"] <= 1
    a = run(capsys, "conjecture", "--n", "8", "--trials", "3000", "--seed", "42")
    b = run(capsys, "conjecture", "--n", "8", "--trials", "3000", "--seed", "42")
    assert a == b and a[0] == 0
    assert run(capsys, "conjecture", "--n", "0", "--trials", "5")[0] == 2
    assert run(capsys, "conjecture", "--n", "3")[0] == 2


def test_conjecture_cmd_counterexample(capsys, monkeypatch):
    import stirmode.poisson_binomial as pbm
    monkeypatch.setattr(pbm, "_shift_mode", lambda nums: (pbm._modes(nums)[0] + 2, True))
    code, out, _ = run(capsys, "conjecture", "--n", "3", "--trials", "4", "--seed", "1")
    doc = json.loads(out)
    assert code == 1 and doc["summary"]["counterexample_found"]
    assert doc["results"][0]["shift"] == 2 and doc["results"][0]["id"] == "trial:0"


def test_precision_cap_exit(capsys, monkeypatch):
    import stirmode.cli as cli
    from stirmode.errors import PrecisionCapError

    def boom(*a, **k):
        raise PrecisionCapError("cap")

    monkeypatch.setattr(cli, "dobinski_mode", boom)
    assert run(capsys, "kn", "10")[0] == 3


def test_module_entry_point():
    import subprocess
    import sys
    p = subprocess.run([sys.executable, "-m", "stirmode", "stirling", "4"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "1 7 6 1\n"
