import csv
import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from specshare import cli
from specshare.errors import ValidationError
from specshare.scenario import Scenario, dumps, load, parse

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


@pytest.mark.parametrize(
    "golden,argv",
    [
        ("secrecy_default.txt", ["secrecy"]),
        ("pcmin.csv", ["pcmin", "--rs-list", "0.5,1,1.5", "--pp-range", "0.5:3:0.5"]),
        ("mu_vs_t.csv", ["mu-vs-t", "--t-range", "0.05:0.15:0.01"]),
        ("optimize_pp.csv", ["optimize-sweep", "--var", "p_p", "--range", "0.5:3:0.5"]),
        ("simulate_fast.txt", ["simulate", "--frames", "100000", "--seed", "7"]),
    ],
)
def test_golden_outputs(capsys, golden, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_secrecy_report(capsys):
    _, out, _ = run(capsys, "secrecy")
    assert "C_S = 1.029747" in out
    _, out, _ = run(capsys, "secrecy", "--set", "p_c=0")
    assert "C_S = 0.000000" in out
    _, out, _ = run(capsys, "secrecy", "--set", "p_p=0")
    assert {"C_P = 0.000000", "C_E = 0.000000", "C_S = 0.000000"} <= set(out.splitlines())


def test_pcmin_spot_and_trends(capsys):
    code, out, _ = run(capsys, "pcmin", "--rs-list", "1", "--pp-range", "1:1:1")
    assert code == 0
    assert out == "r_s,p_p,p_c_min,status\n1.000000,1.000000,0.933333,ok\n"
    _, out, _ = run(capsys, "pcmin", "--rs-list", "0.5,1,1.5", "--pp-range", "0.1:3:0.1")
    rows = rows_of(out)
    low = [r for r in rows if r["r_s"] == "1.500000" and float(r["p_p"]) <= 0.3]
    assert low and all(r["status"] == "infeasible" for r in low)
    curves = {}
    for r in rows:
        curves.setdefault(r["r_s"], {})[r["p_p"]] = float(r["p_c_min"]) if r["status"] == "ok" else None
    for small, large in [("0.500000", "1.000000"), ("1.000000", "1.500000")]:
        for p_p, value in curves[large].items():
            if value is not None and curves[small][p_p] is not None:
                assert value >= curves[small][p_p]


def test_pcmin_all_infeasible_exit_code(capsys):
    code, out, _ = run(capsys, "pcmin", "--rs-list", "5", "--pp-range", "0.5:1:0.5")
    assert code == cli.EXIT_INFEASIBLE
    assert out.count("infeasible") == 2


def test_mu_vs_t(capsys):
    _, out, _ = run(capsys, "mu-vs-t")
    rows = rows_of(out)
    at_009 = [r for r in rows if r["t"] == "0.090000"]
    assert at_009[0]["mu"] == "1.183096"
    summary = out.splitlines()[-1]
    assert summary.startswith("# t_star=")
    t_star = float(summary.split(",")[0].split("=")[1])
    assert abs(t_star - 0.09) <= 2e-3
    mus = [float(r["mu"]) for r in rows]
    assert mus[-1] < 0.05 * max(mus)


def test_optimize_sweep_p_c(capsys):
    _, out, _ = run(capsys, "optimize-sweep", "--var", "p_c", "--range", "0.25:3:0.25")
    rows = rows_of(out)
    c_s = [float(r["c_s"]) for r in rows]
    assert all(b > a for a, b in zip(c_s, c_s[1:]))
    mu = {float(r["var_value"]): float(r["mu_star"]) for r in rows}
    tail = [mu[v] for v in sorted(mu) if v >= 0.5]
    assert all(b < a for a, b in zip(tail, tail[1:]))


def test_out_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "mu-vs-t", "--t-range", "0.05:0.15:0.01", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "mu_vs_t.csv").read_text()
    assert target.read_bytes().endswith(b"\n")


def test_validation_errors(capsys, tmp_path):
    code, _, err = run(capsys, "mu-vs-t", "--set", "p_c=0")
    assert code == cli.EXIT_VALIDATION and "p_c" in err
    code, _, err = run(capsys, "secrecy", "--set", "bogus=1")
    assert code == cli.EXIT_VALIDATION and "bogus" in err
    code, _, _ = run(capsys, "mu-vs-t", "--t-range", "0.5:0.1:0.1")
    assert code == cli.EXIT_VALIDATION
    bad = tmp_path / "bad.txt"
    bad.write_text("alpha = 2\n# fine\nfrequency = 3\n")
    code, _, err = run(capsys, "secrecy", "--scenario", str(bad))
    assert code == cli.EXIT_VALIDATION and "line 3" in err


def test_simulate_deterministic_and_frames_one(capsys):
    a = run(capsys, "simulate", "--frames", "20000", "--seed", "3")
    b = run(capsys, "simulate", "--frames", "20000", "--seed", "3", "--workers", "2")
    assert a == b and a[0] == 0
    code, out, _ = run(capsys, "simulate", "--frames", "1")
    assert code == 0 and out.rstrip().endswith("PASS")


def test_simulate_band_violation_exit_code(capsys):
    # 9 samples per window: the sample-level detector departs from the CLT model
    code, out, _ = run(capsys, "simulate", "--mode", "sample", "--frames", "200000", "--seed", "1")
    assert code == cli.EXIT_BAND
    assert "CLT approximation is loose" in out


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "7")
    _, out, _ = run(capsys, "simulate", "--frames", "100000")
    assert out == (GOLDEN / "simulate_fast.txt").read_text()


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1:1:1", (1.0,)),
        ("0.25:3:0.25", tuple(0.25 * i for i in range(1, 13))),
        ("0:1:0.3", (0.0, 0.3, 0.6, 0.9)),
        ("0.01:0.99:0.01", tuple(round(0.01 * i, 12) for i in range(1, 100))),
    ],
)
def test_parse_range(text, expected):
    assert cli.parse_range(text) == pytest.approx(expected, abs=1e-15)
    assert cli.parse_range(text)[-1] == expected[-1]


@pytest.mark.parametrize("text", ["1:2", "1:0:0.1", "0:1:0", "a:1:0.1", "0:1:-1"])
def test_parse_range_rejects(text):
    with pytest.raises(ValidationError):
        cli.parse_range(text)


def test_scenario_roundtrip_and_case(tmp_path):
    sc = Scenario(d_pe=4.0, r_s=0.5, t=0.2)
    assert parse(dumps(sc)) == sc
    assert parse("ALPHA = 3 # exponent\n\nD_P=1.5\n") == Scenario(alpha=3.0, d_p=1.5)
    path = tmp_path / "s.txt"
    path.write_text("pr1 = 0.5\n")
    assert load(path, ["k=200"]) == Scenario(pr1=0.5, k=200.0)


@pytest.mark.parametrize("text", ["alpha = 0.5\n", "pr1 = 1.5\n", "t = 1\n", "d_c = 1e2\n", "alpha 2\n", "r_s = 0\n"])
def test_scenario_rejects(text):
    with pytest.raises(ValidationError):
        parse(text)


def test_module_entry_point_and_backend_env(tmp_path):
    env = {**os.environ, "SPECSHARE_BACKEND": "python"}
    proc = subprocess.run(
        [sys.executable, "-m", "specshare", "simulate", "--frames", "100000", "--seed", "7"],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 0
    # the fast-mode kernels use integer-exact decisions, so both backends agree byte for byte
    assert proc.stdout == (GOLDEN / "simulate_fast.txt").read_text()
