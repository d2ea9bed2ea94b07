"""Command line behavior: parsing, precedence, outputs, exit codes."""

import shutil
import subprocess

import pytest

import mbqrw.selfcheck
from mbqrw.cli import (ConfigError, _parse_grid, _parse_mu_list,
                       _parse_phi_list, load_config_file, main)
from mbqrw.harness import SWEEP_HEADER, TRACE_HEADER

FAST_SWEEP = ["sweep", "--mu", "1", "--phi", "0.3", "--trials", "5",
              "--iterations", "10"]


# ---------------------------------------------------------------------------
# flag parsing helpers

def test_parse_mu_list():
    assert _parse_mu_list("1,10,50") == [1, 10, 50]
    assert _parse_mu_list("7") == [7]
    with pytest.raises(ConfigError):
        _parse_mu_list("1,x")
    with pytest.raises(ConfigError):
        _parse_mu_list(",")


def test_parse_grid():
    assert _parse_grid("0:1:0.01") == (0.0, 1.0, 0.01)
    with pytest.raises(ConfigError):
        _parse_grid("0:1")
    with pytest.raises(ConfigError):
        _parse_grid("a:b:c")


def test_parse_phi_list():
    assert _parse_phi_list("0,0.5,1.5") == [0.0, 0.5, 1.5]
    with pytest.raises(ConfigError):
        _parse_phi_list("0.3,oops")


# ---------------------------------------------------------------------------
# happy paths

def test_sweep_prints_csv_to_stdout(capsys):
    assert main(FAST_SWEEP) == 0
    out = capsys.readouterr().out
    assert SWEEP_HEADER in out
    assert out.startswith("# generator=mbqrw")
    data = [ln for ln in out.splitlines()
            if ln and not ln.startswith("#") and ln != SWEEP_HEADER]
    assert len(data) == 1 and data[0].startswith("1,10,")


def test_sweep_writes_csv_and_figures(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--mu", "1,2", "--grid", "0:1:0.5",
                 "--trials", "5", "--iterations", "10", "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert (tmp_path / "sweep_success.png").exists()
    assert (tmp_path / "sweep_disturbance.png").exists()
    messages = capsys.readouterr().out
    assert f"wrote {out}" in messages
    assert "sweep_success.png" in messages


def test_no_figures_flag_suppresses_rendering(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(FAST_SWEEP + ["--out", str(out), "--no-figures"]) == 0
    assert out.exists()
    assert list(tmp_path.glob("*.png")) == []


def test_trace_stdout_and_file(tmp_path, capsys):
    assert main(["trace", "--mu", "1", "--phi", "0.6",
                 "--iterations", "15", "--seed", "3"]) == 0
    out_text = capsys.readouterr().out
    assert TRACE_HEADER in out_text
    assert "# seed=3" in out_text

    path = tmp_path / "trace.csv"
    assert main(["trace", "--mu", "1", "--phi", "0.6", "--iterations", "15",
                 "--seed", "3", "--out", str(path)]) == 0
    assert path.exists()
    assert (tmp_path / "trace.png").exists()
    stdout_rows = [ln for ln in out_text.splitlines()
                   if ln and not ln.startswith("#") and ln != TRACE_HEADER]
    file_rows = [ln for ln in path.read_text().splitlines()
                 if ln and not ln.startswith("#") and ln != TRACE_HEADER]
    assert stdout_rows == file_rows


def test_model_stdout_row_count(capsys):
    assert main(["model", "--mu", "1", "--grid", "0:1:0.25",
                 "--iterations", "100"]) == 0
    out = capsys.readouterr().out
    rows = [ln for ln in out.splitlines()
            if ln and not ln.startswith("#")
            and not ln.startswith("mu,")]
    assert len(rows) == 5


def test_model_full_grid(capsys):
    assert main(["model", "--mu", "1", "--full",
                 "--iterations", "100"]) == 0
    out = capsys.readouterr().out
    rows = [ln for ln in out.splitlines()
            if ln and not ln.startswith("#") and not ln.startswith("mu,")]
    assert len(rows) == 1001


def test_model_writes_figures(tmp_path):
    out = tmp_path / "model.csv"
    assert main(["model", "--mu", "1,10", "--grid", "0:1:0.1",
                 "--out", str(out)]) == 0
    assert out.exists()
    assert (tmp_path / "model_success.png").exists()
    assert (tmp_path / "model_disturbance.png").exists()


def test_sweep_reruns_are_byte_identical(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    base = ["sweep", "--mu", "1", "--grid", "0:1:0.5", "--trials", "10",
            "--iterations", "10", "--seed", "7", "--no-figures"]
    assert main(base + ["--out", str(a)]) == 0
    assert main(base + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_workers_flag_matches_serial(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    base = ["sweep", "--mu", "1,2", "--grid", "0:1:0.5", "--trials", "10",
            "--iterations", "10", "--no-figures"]
    assert main(base + ["--out", str(a), "--workers", "1"]) == 0
    assert main(base + ["--out", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# config files

def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment line\n"
                   "mu=1\n"
                   "phi=0.3\n"
                   "trials=5\n"
                   "iterations=10\n"
                   "figures=false\n")
    assert main(["sweep", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    data = [ln for ln in out.splitlines()
            if ln and not ln.startswith("#") and ln != SWEEP_HEADER]
    assert len(data) == 1
    cols = data[0].split(",")
    assert cols[0] == "1" and cols[1] == "10" and cols[4] == "5"


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("mu=1\nphi=0.3\ntrials=5\niterations=10\n")
    assert main(["sweep", "--config", str(cfg), "--trials", "7"]) == 0
    out = capsys.readouterr().out
    row = [ln for ln in out.splitlines()
           if ln and not ln.startswith("#") and ln != SWEEP_HEADER][0]
    assert row.split(",")[4] == "7"


def test_no_figures_flag_beats_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("figures=true\n")
    out = tmp_path / "s.csv"
    assert main(FAST_SWEEP + ["--config", str(cfg), "--out", str(out),
                              "--no-figures"]) == 0
    assert list(tmp_path.glob("*.png")) == []


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("muu=1\n")
    with pytest.raises(ConfigError):
        load_config_file(str(cfg))
    assert main(["sweep", "--config", str(cfg)]) == 2


def test_config_file_rejects_bare_lines(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("just some words\n")
    assert main(["sweep", "--config", str(cfg)]) == 2


# ---------------------------------------------------------------------------
# exit codes

def test_invalid_configuration_exits_2(capsys):
    assert main(["sweep", "--mu", "0", "--phi", "0.3", "--trials", "5",
                 "--iterations", "10"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["sweep", "--grid", "0.9:0.1:0.01", "--trials", "5",
                 "--iterations", "10"]) == 2
    capsys.readouterr()
    assert main(["sweep", "--phi", "0.3", "--grid", "0:1:0.5",
                 "--trials", "5", "--iterations", "10"]) == 2
    capsys.readouterr()
    assert main(["trace", "--mu", "1", "--phi", "9.9",
                 "--iterations", "5"]) == 2
    capsys.readouterr()
    assert main(["model", "--mu", "1", "--phi", "0.3",
                 "--iterations", "11"]) == 2
    capsys.readouterr()


def test_malformed_flag_values_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--grid", "zebra"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unwritable_output_exits_3(capsys):
    assert main(FAST_SWEEP + ["--out", "/nonexistent/dir/sweep.csv"]) == 3
    assert "I/O error" in capsys.readouterr().err


def test_verify_success_exits_0(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "all invariant checks passed" in out
    assert out.count("PASS") >= 10


def test_verify_failure_exits_4(monkeypatch, capsys):
    monkeypatch.setattr(mbqrw.selfcheck, "run_all", lambda verbose: 3)
    assert main(["verify"]) == 4
    assert "3 invariant check(s) failed" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# installed entry point

def test_console_script_is_wired_up():
    exe = shutil.which("mbqrw")
    assert exe is not None
    proc = subprocess.run([exe, "model", "--mu", "1", "--phi", "0.3"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "mu,J,phi" in proc.stdout
