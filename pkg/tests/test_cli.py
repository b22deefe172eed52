import csv
import io
import json
import subprocess
import sys

import pytest

from copson.cli import run_command


def run(argv, capsys):
    code = run_command(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lemma_h_exits_zero(capsys):
    code, out, _ = run(["certify", "lemma", "--id", "H", "--interval", "1/3", "1"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["verdict"]["state"] == "Positive"
    assert report["config"]["interval"] == ["1/3", "1/1"]


def test_cubic_dominance_exits_zero(capsys):
    code, out, _ = run(["certify", "dominance", "--family", "cubic", "--alpha", "1/2", "--n", "1..1000"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["config"]["alpha"] == "1/2"
    margin = report["report"]["min_margin"]["margin"]
    assert set(margin) == {"lo", "hi", "precision_bits"}
    assert "elapsed_s" not in report["report"]


def test_alpha_out_of_range_is_usage_error(capsys):
    code, _, err = run(["weights", "--family", "unit", "--alpha", "2", "--n", "1..10"], capsys)
    assert code == 3 and "alpha" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["weights", "--family", "unit", "--alpha", "x/y", "--n", "1..3"],
        ["weights", "--family", "unit", "--alpha", "1/2", "--n", "5..3"],
        ["weights", "--family", "triangle", "--alpha", "1/2", "--n", "1..3"],
        ["certify", "dominance", "--family", "unit", "--alpha", "1/2", "--n", "1..5", "--format", "csv"],
        ["certify", "lemma", "--id", "H", "--interval", "0", "1"],
        ["quadform", "--family", "unit", "--alpha", "0", "--N", "4"],
        ["scan", "--family", "unit", "--alpha", "0", "1", "--steps", "3", "--nmax", "5"],
        ["certify", "dominance", "--family", "unit", "--alpha", "0", "--n", "1..5", "--precision", "8"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 3


def test_weights_csv(capsys):
    code, out, _ = run(["weights", "--family", "linear", "--alpha", "1/2", "--n", "1..4", "--classical"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "w_lo", "w_hi", "classical_lo", "classical_hi", "margin_lo"]
    assert [int(r["n"]) for r in rows] == [1, 2, 3, 4]
    assert abs(float(rows[0]["w_lo"]) - 0.7262719) < 1e-7
    assert all(float(r["margin_lo"]) > 0 for r in rows)
    code, out, _ = run(["weights", "--family", "unit", "--alpha", "0", "--n", "2..2"], capsys)
    assert out.splitlines()[0] == "n,w_lo,w_hi"


def test_weights_json(capsys):
    code, out, _ = run(["weights", "--family", "unit", "--alpha", "0.5", "--n", "1..2", "--format", "json"], capsys)
    report = json.loads(out)
    assert report["config"]["alpha"] == "1/2" and len(report["rows"]) == 2


def test_nonpositive_exit_code(tmp_path, capsys):
    table = tmp_path / "osc.csv"
    table.write_text("\n".join(["1", "100"] * 10) + "\n")
    code, out, _ = run(["certify", "dominance", "--family", f"table:{table}", "--alpha", "1/2", "--n", "1..19"], capsys)
    assert code == 1
    assert json.loads(out)["report"]["verdict"]["state"] == "NonPositive"


def test_undecided_exit_code(capsys):
    # a 16-bit cap cannot separate the n = 300 margin from zero
    argv = ["certify", "dominance", "--family", "unit", "--alpha", "0", "--n", "1..300"]
    code, out, _ = run(argv + ["--precision", "16", "--precision-cap", "16"], capsys)
    assert code == 2
    assert json.loads(out)["report"]["verdict"]["state"] == "Undecided"


def test_identity_commands(capsys):
    assert run(["certify", "identity", "--id", "M1H"], capsys)[0] == 0
    assert run(["certify", "identity", "--id", "J2f"], capsys)[0] == 0


def test_quadform_modes(capsys):
    base = ["quadform", "--family", "unit", "--alpha", "0", "--N", "2"]
    code, out, _ = run(base + ["--mineig", "1/1000000"], capsys)
    assert code == 0
    lo = float(json.loads(out)["min_eigenvalue"]["lo"])
    assert abs(lo - 0.6400818) < 1e-6
    code, out, _ = run(base + ["--psd"], capsys)
    assert code == 0 and json.loads(out)["verdict"]["state"] == "Positive"
    code, out, _ = run(base + ["--random", "50", "--seed", "4"], capsys)
    assert code == 0 and json.loads(out)["config"]["seed"] == 4


def test_scan_and_oracle(capsys):
    code, out, _ = run(["scan", "--family", "cubic", "--alpha", "0", "1/2", "--steps", "6", "--nmax", "100"], capsys)
    report = json.loads(out)["report"]
    assert code == 0 and report["boundary_bracket"] == "all-pass" and len(report["grid"]) == 6
    code, out, _ = run(["oracle", "remainder", "--trials", "100", "--seed", "2"], capsys)
    assert code == 0 and json.loads(out)["nonzero_defects"] == []


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# dominance run\nfamily = linear\nalpha = 17/50\nn = 1..50\n")
    code, out, _ = run(["--config", str(cfg), "certify", "dominance"], capsys)
    report = json.loads(out)
    assert code == 0 and report["config"]["alpha"] == "17/50" and report["config"]["n_hi"] == 50
    code, out, _ = run(["--config", str(cfg), "certify", "dominance", "--alpha", "1/2"], capsys)
    assert json.loads(out)["config"]["alpha"] == "1/2"


def test_env_precision_cap(monkeypatch, capsys):
    monkeypatch.setenv("COPSON_PRECISION_CAP", "256")
    _, out, _ = run(["certify", "dominance", "--family", "unit", "--alpha", "0", "--n", "1..5"], capsys)
    assert json.loads(out)["config"]["precision_cap"] == 256


def test_output_file_and_byte_identity(tmp_path, capsys):
    argv = ["certify", "dominance", "--family", "linear", "--alpha", "3/4", "--n", "1..200"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(argv + ["-o", str(a)], capsys)[0] == 0
    assert run(argv + ["-o", str(b)], capsys)[0] == 0
    assert a.read_bytes().replace(b"a.json", b"b.json") == b.read_bytes()
    _, first, _ = run(argv + ["--jobs", "2"], capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_timing_flag_adds_elapsed(capsys):
    _, out, _ = run(["certify", "dominance", "--family", "unit", "--alpha", "0", "--n", "1..5", "--timing"], capsys)
    assert "elapsed_s" in json.loads(out)["report"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "copson.cli", "certify", "identity", "--id", "M1H"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["holds"] is True
