import csv
import io
import json
import subprocess
import sys

import pytest

from golden_games import cli
from golden_games.core import PHI
from golden_games.theory import xi_sequence


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sample_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--depth", "1", "--p", "1", "--seed", "7")
    assert code == 0 and out == "GGAME v1 depth=1\n11\n"
    code, out, _ = run(capsys, "sample", "--depth", "2", "--p", "0", "--seed", "7")
    assert out.splitlines()[1] == "0000"
    a, b = tmp_path / "a", tmp_path / "b"
    for path in (a, b):
        assert run(capsys, "sample", "--depth", "9", "--seed", "5", "--index", "3", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_sample_binary(capsys, tmp_path):
    path = tmp_path / "g.bin"
    run(capsys, "sample", "--depth", "4", "--p", "1", "--binary", "--out", str(path))
    assert path.read_bytes() == b"GGB1\x01\x04\xff\xff"


@pytest.mark.parametrize(
    "body, expected",
    [
        ("GGAME v1 depth=1\n00\n", {"value": 0, "fragility": 2, "witness": [0, 1]}),
        ("GGAME v1 depth=1\n11\n", {"value": 1, "fragility": 1, "witness": [0]}),
        ("GGAME v1 depth=2\n1001\n", {"value": 0, "fragility": 1, "witness": [1]}),
    ],
)
def test_eval_examples(capsys, tmp_path, body, expected):
    path = tmp_path / "g.txt"
    path.write_text(body)
    code, out, _ = run(capsys, "eval", str(path))
    assert code == 0 and json.loads(out) == expected


def test_eval_binary_file(capsys, tmp_path):
    path = tmp_path / "g.bin"
    path.write_bytes(b"GGB1\x01\x02\x09")  # leaves 1,0,0,1
    code, out, _ = run(capsys, "eval", str(path))
    assert json.loads(out) == {"value": 0, "fragility": 1, "witness": [1]}


def test_eval_malformed(capsys, tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"GGB1\x01\x04\x00")
    code, _, err = run(capsys, "eval", str(path))
    assert code == 3 and "offset 7" in err


def test_eval_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "eval", str(tmp_path / "nope"))
    assert code == 3


def test_exact_default_golden(capsys):
    code, out, _ = run(capsys, "exact", "--depth", "1", "--dmax", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1
    assert rows[0]["n"] == "1"
    assert abs(float(rows[0]["F_1"]) - (1 - PHI**4)) < 1e-12


def test_exact_all_n_and_json(capsys):
    _, out, _ = run(capsys, "exact", "--depth", "3", "--dmax", "2", "--all-n")
    assert [r["n"] for r in csv.DictReader(io.StringIO(out))] == ["0", "1", "2", "3"]
    _, out, _ = run(capsys, "exact", "--depth", "3", "--dmax", "2", "--p", "0", "--format", "json")
    doc = json.loads(out)
    assert doc[0]["alpha"] == [None, None]


def test_exact_converges_to_theory(capsys):
    _, out, _ = run(capsys, "exact", "--depth", "60", "--dmax", "5")
    row = next(csv.DictReader(io.StringIO(out)))
    for t in xi_sequence(5):
        assert abs(float(row[f"F_{t.d}"]) - t.F) < 1e-6


def test_exact_non_golden(capsys):
    _, out, _ = run(capsys, "exact", "--depth", "40", "--p", "0.70", "--dmax", "1")
    assert float(next(csv.DictReader(io.StringIO(out)))["F_1"]) < 0.01


def test_exact_flag_validation(capsys):
    assert run(capsys, "exact", "--depth", "65", "--dmax", "2")[0] == 2
    assert run(capsys, "exact", "--depth", "5", "--dmax", "17")[0] == 2
    assert run(capsys, "exact", "--depth", "5", "--p", "1.2")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_theory_rows(capsys):
    code, out, _ = run(capsys, "theory", "--dmax", "5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5
    assert abs(float(rows[0]["F"]) - 0.773) < 5e-4
    assert abs(float(rows[3]["one_minus_F"]) - 5.57e-5) < 0.05 * 5.57e-5


def test_theory_rows_are_full_precision(capsys):
    _, out, _ = run(capsys, "theory", "--dmax", "8")
    rows = list(csv.DictReader(io.StringIO(out)))
    for row, t in zip(rows, xi_sequence(8)):
        assert float(row["xi"]) == t.xi
        assert float(row["one_minus_F"]) == t.complement


def test_mc_examples(capsys):
    code, out, _ = run(capsys, "mc", "--p", "1", "--depth", "8", "--samples", "100")
    assert code == 0 and json.loads(out)["prob_v1"]["est"] == 1.0
    _, one, _ = run(capsys, "mc", "--depth", "8", "--samples", "3000", "--seed", "4", "--workers", "1")
    _, eight, _ = run(capsys, "mc", "--depth", "8", "--samples", "3000", "--seed", "4", "--workers", "8")
    assert one == eight


def test_mc_workers_env(capsys, monkeypatch):
    monkeypatch.setenv("GOLDEN_GAMES_THREADS", "4")
    _, a, _ = run(capsys, "mc", "--depth", "6", "--samples", "500")
    monkeypatch.delenv("GOLDEN_GAMES_THREADS")
    _, b, _ = run(capsys, "mc", "--depth", "6", "--samples", "500")
    assert a == b


def test_mc_bad_request(capsys):
    assert run(capsys, "mc", "--depth", "4", "--samples", "0")[0] == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-depth", "3", "--budget", "8")
    assert code == 0
    assert "all checks passed" in out
    assert out.count("[PASS]") == 7


def test_verify_reports_failure(capsys, monkeypatch):
    from golden_games import verify

    monkeypatch.setattr(verify, "fragility", lambda g: 1)
    code, out, _ = run(capsys, "verify", "--max-depth", "1", "--budget", "4")
    assert code == 1
    assert "[FAIL]" in out and "first counterexample" in out


def test_verify_usage(capsys):
    assert run(capsys, "verify", "--max-depth", "5")[0] == 2


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "golden_games.cli", "theory", "--dmax", "1"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert out.startswith("d,xi,xi_sq,H,F,one_minus_F\n1,")
