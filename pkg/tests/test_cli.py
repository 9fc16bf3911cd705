"""CLI surface: exit codes, schema-valid JSON, deterministic output."""

import json
import subprocess
from pathlib import Path

import jsonschema

from gaborcert.cli import main
from gaborcert.criterion import DensityProfile
from gaborcert.window import read_sampled_csv

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def load_schema(name):
    return json.loads((SCHEMAS / f"{name}.v1.json").read_text())


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_certify_json_is_schema_valid(capsys):
    payload = run_json(capsys, "certify", "--window", "gaussian", "--delta", "0.9985")
    jsonschema.validate(payload, load_schema("verdict"))
    assert payload["status"] == "Certified"
    assert payload["margin"] > 0
    assert payload["rigorous"] is True


def test_certify_rect_route(capsys):
    payload = run_json(
        capsys, "certify", "--window", "hermite:1", "--a", "0.7", "--b", "0.5"
    )
    jsonschema.validate(payload, load_schema("verdict"))
    assert payload["status"] == "Certified"
    assert payload["delta"] == 0.35


def test_gaussian_cert_schema_and_value(capsys):
    payload = run_json(capsys, "gaussian-cert")
    jsonschema.validate(payload, load_schema("gaussian_certificate"))
    assert 0.9985 <= payload["certified_delta"] < 1.0


def test_iwasawa_schema(capsys):
    payload = run_json(capsys, "iwasawa", "--basis", "0.8,0,0,1.25")
    jsonschema.validate(payload, load_schema("iwasawa"))
    assert abs(payload["scale"] - 1.0) <= 1e-12
    assert payload["r"] == 0.0
    assert abs(payload["a"] - 0.8) <= 1e-12


def test_reduce_schema_and_window_export(capsys, tmp_path):
    out_window = tmp_path / "reduced.csv"
    payload = run_json(
        capsys,
        "reduce",
        "--window",
        "hermite:1",
        "--basis",
        "0.75,0,0.3,0.75",
        "--out-window",
        str(out_window),
    )
    jsonschema.validate(payload, load_schema("reduce"))
    assert payload["parity"] == "odd"
    assert payload["parity_preserved"] is True
    tags = [step[0] for step in payload["steps"]]
    assert tags == ["frac_fourier", "chirp", "dilate"]
    grid, values = read_sampled_csv(out_window)
    assert grid.size == values.size == 3201


def test_oracle_schema(capsys):
    payload = run_json(
        capsys, "oracle", "--window", "gaussian", "--a", "0.5", "--b", "1.0"
    )
    jsonschema.validate(payload, load_schema("oracle"))
    assert payload["N"] == 240
    assert payload["snapped_a"] == 0.5
    assert 0.0 < payload["ratio"] <= 1.0


def test_oracle_accepts_capital_n_alias(capsys):
    payload = run_json(
        capsys, "oracle", "--window", "gaussian", "--a", "0.5", "--b", "1.0", "--N", "144"
    )
    assert payload["N"] == 144


def test_profile_stdout_is_csv(capsys):
    code, out, err = run_cli(
        capsys, "profile", "--window", "gaussian", "--grid-points", "11"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "omega,delta_g_low,delta_g,delta_g_high,tail_bound_num,tail_bound_den"
    # 11 grid points plus refinement rows around the minimum
    assert len(lines) >= 12


def test_profile_file_and_summary_agree(capsys, tmp_path):
    out = tmp_path / "profile.csv"
    code, stdout, err = run_cli(
        capsys,
        "profile",
        "--window",
        "hermite:1",
        "--grid-points",
        "51",
        "--out",
        str(out),
    )
    assert code == 0
    summary = json.loads(stdout)
    jsonschema.validate(summary, load_schema("profile_summary"))
    profile = DensityProfile.read_csv(out)
    assert profile.min_value == summary["min_value"]
    assert profile.argmin_omega == summary["argmin_omega"]


def test_barrier_scan_deterministic(capsys, tmp_path):
    args = ("barrier-scan", "--b-min", "0.5", "--b-max", "2.0", "--steps", "7")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    path = tmp_path / "scan.csv"
    code3, _, _ = run_cli(capsys, *args, "--out", str(path))
    assert code3 == 0
    assert path.read_bytes().decode() == out1


def test_json_output_deterministic_and_sorted(capsys, tmp_path):
    args = ("certify", "--window", "gaussian", "--delta", "0.5")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    keys = list(json.loads(out1))
    assert keys == sorted(keys)
    path = tmp_path / "verdict.json"
    run_cli(capsys, *args, "--out", str(path))
    assert path.read_bytes().decode() == out1


def test_usage_errors_exit_64(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 64
    assert run_cli(capsys)[0] == 64
    assert run_cli(capsys, "certify", "--delta", "0.5")[0] == 64  # missing --window
    assert run_cli(capsys, "certify", "--window", "gaussian", "--delta", "-1")[0] == 64
    assert run_cli(capsys, "oracle", "--window", "gaussian", "--a", "0.5")[0] == 64


def test_precondition_errors_exit_2(capsys, tmp_path):
    cases = [
        ("certify", "--window", "hermite:x", "--delta", "0.5"),
        ("certify", "--window", "gaussian"),
        ("certify", "--window", "gaussian", "--delta", "0.5", "--a", "0.5"),
        ("certify", "--window", f"file:{tmp_path / 'missing.csv'}", "--delta", "0.5"),
        ("certify", "--window", "einstein", "--delta", "0.5"),
        ("iwasawa", "--basis", "1,2,3"),
        ("iwasawa", "--basis", "1,2,3,nope"),
        ("reduce", "--window", "gaussian", "--basis", "1,2,2,4"),
    ]
    for argv in cases:
        code, out, err = run_cli(capsys, *argv)
        assert code == 2, (argv, err)
        assert "gaborcert:" in err


def test_numerical_errors_exit_3(capsys):
    code, _, err = run_cli(
        capsys, "oracle", "--window", "gaussian", "--a", "0.001", "--b", "0.001"
    )
    assert code == 3
    assert "numerical failure" in err
    # a rotation angle inside the degenerate band reaches the kernel check
    tiny = "0.999999999999995,1e-07,-1e-07,0.999999999999995"
    code, _, err = run_cli(capsys, "reduce", "--window", "gaussian", "--basis", tiny)
    assert code == 3


def test_tail_tol_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("GABOR_TAIL_TOL", "1e-6")
    payload = run_json(capsys, "certify", "--window", "gaussian", "--delta", "0.5")
    assert payload["tail_tol"] == 1e-6
    payload = run_json(
        capsys,
        "certify",
        "--window",
        "gaussian",
        "--delta",
        "0.5",
        "--tail-tol",
        "1e-8",
    )
    assert payload["tail_tol"] == 1e-8
    monkeypatch.setenv("GABOR_TAIL_TOL", "not-a-number")
    code, _, err = run_cli(capsys, "certify", "--window", "gaussian", "--delta", "0.5")
    assert code == 2


def test_dilation_flag_matches_rect_route(capsys):
    via_flag = run_json(
        capsys,
        "certify",
        "--window",
        "hermite:1",
        "--dilation",
        "0.5",
        "--delta",
        "0.35",
    )
    via_rect = run_json(
        capsys, "certify", "--window", "hermite:1", "--a", "0.7", "--b", "0.5"
    )
    assert via_flag["min_delta_g"] == via_rect["min_delta_g"]
    assert via_flag["status"] == via_rect["status"] == "Certified"


def test_console_entry_point():
    result = subprocess.run(
        ["gaborcert", "gaussian-cert"], capture_output=True, text=True, timeout=120
    )
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["schema"] == "gaborcert/gaussian_certificate/v1"
    bad = subprocess.run(
        ["gaborcert", "nope"], capture_output=True, text=True, timeout=120
    )
    assert bad.returncode == 64
