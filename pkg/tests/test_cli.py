import csv
import json

import numpy as np
import pytest

from infoconv import cli
from infoconv.boolnet import build_gate_pair, save_network
from infoconv.discrete import TPM, save_tpm
from infoconv.schemas import CSV_HEADERS, validate_document


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_logic_gates_csv(tmp_path):
    assert cli.main(["logic-gates", "--out", str(tmp_path)]) == cli.EXIT_OK
    header, rows = read_csv(tmp_path / "logic_gates.csv")
    assert header == CSV_HEADERS["logic_gates"]
    table = {r[0]: [float(v) for v in r[1:]] for r in rows}
    assert list(table) == ["AND", "OR", "XOR"]
    assert table["XOR"][:2] == pytest.approx([2.5, 1.0], abs=1e-3)
    assert table["XOR"][3] == pytest.approx(0.833, abs=2e-3)
    assert table["AND"][1] == pytest.approx(table["OR"][1], abs=1e-12)
    assert table["AND"][3] == pytest.approx(table["OR"][3], abs=1e-12)
    for kind in ("AND", "OR", "XOR"):
        doc = json.loads((tmp_path / f"spectrum_{kind}.json").read_text())
        validate_document(doc, "gate_spectra")


def test_logic_gates_json_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert cli.main(["logic-gates", "--out", str(out), "--format", "json"]) == 0
    for name in ("logic_gates.json", "spectrum_XOR.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    validate_document(json.loads((a / "logic_gates.json").read_text()), "logic_gates")


def test_expansion_outputs(tmp_path):
    args = ["expansion", "--seed", "4", "--n-systems", "4", "--kind", "gaussian",
            "--out", str(tmp_path)]
    assert cli.main(args) == 0
    header, rows = read_csv(tmp_path / "expansion_gaussian.csv")
    assert header == CSV_HEADERS["expansion"]
    assert len(rows) == 4
    for row in rows:
        macro, meso, micro, gain = (float(row[i]) for i in (2, 3, 4, 6))
        assert gain == macro - micro
    header, rows = read_csv(tmp_path / "scatter_gaussian.csv")
    assert header == CSV_HEADERS["scatter"]
    summary = json.loads((tmp_path / "summary_gaussian.json").read_text())
    validate_document(summary, "expansion_summary")
    assert summary["positive_gain_fraction"] == 1.0
    assert summary["max_mi_drift"] < 1e-9
    assert summary["n_analysed"] == 4


def test_expansion_is_byte_identical_across_runs_and_jobs(tmp_path):
    base = ["expansion", "--seed", "9", "--n-systems", "3", "--kind", "both"]
    assert cli.main(base + ["--out", str(tmp_path / "a")]) == 0
    assert cli.main(base + ["--out", str(tmp_path / "b"), "--jobs", "2"]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert "summary_combined.json" in names
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_expansion_json_and_levels(tmp_path):
    args = ["expansion", "--seed", "1", "--n-systems", "3", "--kind", "deterministic",
            "--levels", "1", "--format", "json", "--out", str(tmp_path)]
    assert cli.main(args) == 0
    rows = json.loads((tmp_path / "expansion_deterministic.json").read_text())
    validate_document(rows, "expansion_rows")
    assert all(r["meso_bsyn"] is None for r in rows)


def test_two_systems_give_null_correlation(tmp_path):
    args = ["expansion", "--seed", "0", "--n-systems", "2", "--kind", "gaussian",
            "--out", str(tmp_path)]
    assert cli.main(args) == 0
    summary = json.loads((tmp_path / "summary_gaussian.json").read_text())
    assert summary["rho"] is None and summary["p_value"] is None


@pytest.mark.parametrize("args", [
    ["expansion", "--n-systems", "5"],
    ["expansion", "--seed", "0", "--n-systems", "1"],
    ["expansion", "--seed", "0", "--n-systems", "3", "--split-element", "7"],
])
def test_expansion_validation_exit_code(tmp_path, args, capsys):
    assert cli.main(args + ["--out", str(tmp_path)]) == cli.EXIT_VALIDATION
    assert "infoconv:" in capsys.readouterr().err


def test_all_skipped_exits_numerical(tmp_path, monkeypatch, capsys):
    def skip_everything(spec, levels, split_element, jobs):
        from infoconv.expansion import ExperimentResult

        return ExperimentResult(spec, levels, split_element, [], [(0, "X"), (1, "Y")])

    monkeypatch.setattr(cli, "run_expansion_experiment", skip_everything)
    args = ["expansion", "--seed", "0", "--n-systems", "2", "--kind", "gaussian",
            "--out", str(tmp_path)]
    assert cli.main(args) == cli.EXIT_NUMERICAL
    assert "skipped" in capsys.readouterr().err


def write_json(path, data):
    path.write_text(json.dumps(data))
    return path


def funnel_tpm(tmp_path):
    path = tmp_path / "tpm.json"
    save_tpm(TPM(np.eye(4)[[2, 2, 3, 0]]), path)
    return path


def test_ei_scan_identity_partition(tmp_path):
    part = write_json(tmp_path / "p.json", [0, 1, 2, 3])
    assert cli.main(["ei-scan", "--tpm", str(funnel_tpm(tmp_path)), "--partition",
                     str(part), "--out", str(tmp_path / "o")]) == 0
    report = json.loads((tmp_path / "o" / "ei_scan.json").read_text())
    validate_document(report, "ei_scan")
    assert all(v == 0 for v in report["delta"].values())


def test_ei_scan_merging_duplicates(tmp_path):
    part = write_json(tmp_path / "p.json", [0, 0, 1, 2])
    assert cli.main(["ei-scan", "--tpm", str(funnel_tpm(tmp_path)), "--partition",
                     str(part), "--out", str(tmp_path / "o")]) == 0
    delta = json.loads((tmp_path / "o" / "ei_scan.json").read_text())["delta"]
    assert delta["degeneracy"] < 0
    assert delta["ei"] > 0


def test_ei_scan_merge_everything(tmp_path):
    part = write_json(tmp_path / "p.json", [0, 0, 0, 0])
    assert cli.main(["ei-scan", "--tpm", str(funnel_tpm(tmp_path)), "--partition",
                     str(part), "--out", str(tmp_path / "o")]) == 0
    macro = json.loads((tmp_path / "o" / "ei_scan.json").read_text())["macro"]
    assert macro["ei"] == 0


def test_ei_scan_size_mismatch(tmp_path):
    part = write_json(tmp_path / "p.json", [0, 1, 1])
    assert cli.main(["ei-scan", "--tpm", str(funnel_tpm(tmp_path)), "--partition",
                     str(part), "--out", str(tmp_path / "o")]) == cli.EXIT_VALIDATION


def test_pid_from_network(tmp_path):
    net = tmp_path / "xor.json"
    save_network(build_gate_pair("XOR").macro, net)
    assert cli.main(["pid", "--network", str(net), "--input", "induced",
                     "--out", str(tmp_path / "o")]) == 0
    doc = json.loads((tmp_path / "o" / "pid.json").read_text())
    assert doc["b_syn"] == pytest.approx(0.8333, abs=1e-4)
    assert doc["total_mi"] == pytest.approx(1.0)


def test_pid_undefined_bias_is_null(tmp_path):
    path = tmp_path / "t.json"
    save_tpm(TPM(np.full((4, 4), 0.25)), path)
    assert cli.main(["pid", "--tpm", str(path), "--out", str(tmp_path / "o")]) == 0
    doc = json.loads((tmp_path / "o" / "pid.json").read_text())
    assert doc["b_syn"] is None


def test_pid_induced_needs_network(tmp_path):
    assert cli.main(["pid", "--tpm", str(funnel_tpm(tmp_path)), "--input", "induced",
                     "--out", str(tmp_path / "o")]) == cli.EXIT_VALIDATION


def test_missing_file(tmp_path):
    assert cli.main(["pid", "--tpm", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path)]) == cli.EXIT_VALIDATION


def test_bad_schema_file(tmp_path):
    bad = write_json(tmp_path / "t.json", {"rows": "nope"})
    assert cli.main(["pid", "--tpm", str(bad), "--out", str(tmp_path)]) == cli.EXIT_VALIDATION


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "infoconv", "--help"],
                         capture_output=True, text=True, check=True)
    assert "logic-gates" in out.stdout
