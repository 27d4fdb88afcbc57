import csv
import json

import pytest

from qca_clock_sim.cli import EXIT_OK, EXIT_USAGE, EXIT_VERDICT, main, table_paths
from qca_clock_sim.config import shipped_config


def read_csv(path):
    lines = path.read_text().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    body = list(csv.reader(ln for ln in lines if not ln.startswith("#")))
    return header, body[0], body[1:]


def test_evolve_writes_csv_and_report(tmp_path):
    out = tmp_path / "run.csv"
    assert main(["evolve", "--out", str(out), "--samples", "31"]) == EXIT_OK
    header, cols, rows = read_csv(out)
    assert header[0] == "# qca-clock-sim evolve"
    for key in ("circuit_hash", "dt", "t_f", "gamma_max", "units"):
        assert any(h.startswith(f"# {key}:") for h in header)
    assert cols == ["t", "norm", "P1", "P2", "P3", "P4"]
    assert len(rows) == 31
    report = json.loads(out.with_suffix(".json").read_text())
    assert report["report"]["transitions"]["entries"]["1111"] == pytest.approx(0.9858, abs=5e-4)
    assert all(v["passed"] for v in report["verdicts"])


def test_evolve_excited_start_same_output_bit(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["evolve", "--out", str(a), "--samples", "2"]) == EXIT_OK
    assert main(["evolve", "--out", str(b), "--samples", "2", "--initial", "0110"]) == EXIT_OK
    ra = json.loads(a.with_suffix(".json").read_text())["report"]
    rb = json.loads(b.with_suffix(".json").read_text())["report"]
    assert ra["output_bit1_probability"] == pytest.approx(rb["output_bit1_probability"], abs=1e-6)


def test_evolve_without_probes(tmp_path):
    out = tmp_path / "bare.csv"
    assert main(["evolve", "--out", str(out), "--samples", "3", "--observables", ""]) == EXIT_OK
    assert read_csv(out)[1] == ["t", "norm"]


def test_evolve_custom_probe(tmp_path):
    out = tmp_path / "probe.csv"
    assert main(["evolve", "--out", str(out), "--samples", "3", "--observables", "ZZII,P4"]) == EXIT_OK
    assert read_csv(out)[1] == ["t", "norm", "ZZII", "P4"]


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["evolve", "--out", str(path), "--samples", "11", "--dt", "0.01"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert a.with_suffix(".json").read_bytes() == b.with_suffix(".json").read_bytes()


def test_stdout_mode(capsys):
    assert main(["evolve", "--samples", "2", "--dt", "0.01"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("# qca-clock-sim evolve")
    assert "P(output bit 1)" in captured.err


def test_spectrum_one_table_per_gamma(tmp_path):
    out = tmp_path / "spec.csv"
    code = main(["spectrum", "--out", str(out), "--gamma-max", "0.1,0.5,2.0", "--samples", "41"])
    assert code == EXIT_OK
    paths = table_paths(out, ["gamma0.1", "gamma0.5", "gamma2"])
    for p in paths.values():
        _, cols, rows = read_csv(p)
        assert cols == ["t", "E0", "E1", "E2", "E3"]
        assert len(rows) == 41
    gaps = json.loads(out.with_suffix(".json").read_text())["report"]["min_gaps"]
    assert gaps == sorted(gaps)


def test_spectrum_levels_and_samples(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--out", str(out), "--levels", "1", "--samples", "2"]) == EXIT_OK
    _, cols, rows = read_csv(out)
    assert cols == ["t", "E0"]
    assert len(rows) == 2
    assert float(rows[0][0]) == 0.0
    # Latched wire4 ground energy: driver 1/2 plus three couplings of 1/2.
    assert float(rows[0][1]) == pytest.approx(-2.0, abs=1e-12)


def test_oracle(tmp_path):
    out = tmp_path / "oracle.csv"
    assert main(["oracle", "--out", str(out), "--samples", "31"]) == EXIT_OK
    _, cols, rows = read_csv(out)
    assert cols == ["t", "Z0_reduced", "P_full", "abs_diff"]
    assert max(float(r[3]) for r in rows) <= 1e-6


def test_oracle_with_nnn_reports_breakdown(tmp_path):
    out = tmp_path / "oracle.csv"
    cfg = shipped_config("wire6_nnn.json")
    assert main(["oracle", "--config", str(cfg), "--out", str(out), "--dt", "0.005"]) == EXIT_OK
    report = json.loads(out.with_suffix(".json").read_text())
    assert report["report"]["max_deviation"] >= 1e-4


def test_split_single_start(tmp_path):
    out = tmp_path / "split.csv"
    cfg = shipped_config("wire6_nnn.json")
    code = main(["split", "--config", str(cfg), "--out", str(out), "--initial", "000000", "--samples", "21"])
    assert code == EXIT_OK
    _, cols, rows = read_csv(out)
    assert cols == ["t", "shift_000000", "correlator_000000"]
    assert float(rows[0][1]) == 0.0
    assert float(rows[-1][1]) == pytest.approx(-0.036, abs=0.01)


def test_gates_exit_code_reflects_verdicts(tmp_path):
    out = tmp_path / "gates.csv"
    code = main(["gates", "--out", str(out), "--dt", "0.005"])
    report = json.loads(out.with_suffix(".json").read_text())
    enforced = [v for v in report["verdicts"] if v["enforced"]]
    assert code == (EXIT_OK if all(v["passed"] for v in enforced) else EXIT_VERDICT)
    assert any(not v["enforced"] for v in report["verdicts"])


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["evolve", "--dt", "-1"],
        ["evolve", "--initial", "012"],
        ["evolve", "--initial", "00000"],
        ["evolve", "--observables", "XYZ"],
        ["evolve", "--config", "/nonexistent/cfg.json"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_bad_config_reports_field(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"cells": 2,\n "clock_zones": [],\n "colour": 1}')
    assert main(["evolve", "--config", str(cfg)]) == EXIT_USAGE
    assert "colour (line 3)" in capsys.readouterr().err


def test_failed_verdict_exits_2(tmp_path):
    # A coarse step loses norm well beyond the hygiene bound.
    assert main(["evolve", "--out", str(tmp_path / "w.csv"), "--dt", "0.5"]) == EXIT_VERDICT
    report = json.loads((tmp_path / "w.json").read_text())
    assert [v["name"] for v in report["verdicts"] if not v["passed"]][0] == "norm_drift"
