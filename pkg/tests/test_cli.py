import json
import subprocess
import sys
from pathlib import Path

import pandas as pd
import pytest

from app.errors import EXIT_OK, EXIT_USAGE
from app.main import run


def test_moments_h1(capsys, tmp_path):
    """Test `moments h1 --n 2^4` prints Catalan(2)"""
    assert run(["--output-dir", str(tmp_path), "moments", "h1", "--n", "2^4"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"


def test_mf_eigen_table(capsys, tmp_path):
    """Test the weight 12 eigenform table shows tau(2) = -24"""
    assert run(["--output-dir", str(tmp_path), "mf", "eigen", "--weight", "12", "--ncoeffs", "50"]) == EXIT_OK
    assert "-24" in capsys.readouterr().out
    assert (tmp_path / "eigen_12.csv").exists()
    assert (tmp_path / "eigen_12.json").exists()


def test_hecke_expand(capsys, tmp_path):
    """Test lambda^2 = 1 + lambda(p^2)"""
    assert run(["--output-dir", str(tmp_path), "hecke", "expand", "--alpha", "2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["lambda(p^0): 1", "lambda(p^2): 1"]


def test_unknown_subcommand(capsys):
    """Test an unknown subcommand exits with a usage error"""
    assert run(["nope"]) == EXIT_USAGE
    assert capsys.readouterr().err


def test_domain_error_is_usage(tmp_path):
    """Test alpha = 0 maps to exit 1"""
    assert run(["--output-dir", str(tmp_path), "hecke", "expand", "--alpha", "0"]) == EXIT_USAGE


def test_missing_config(tmp_path):
    """Test a missing config file maps to exit 1"""
    missing = str(tmp_path / "none.env")
    assert run(["--output-dir", str(tmp_path), "oracle", "--lemma", "combinato", "--config", missing]) == EXIT_USAGE


def test_malformed_config(tmp_path):
    """Test a line without = maps to exit 1"""
    config = tmp_path / "bad.env"
    config.write_text("x1 10\n")
    assert run(["--output-dir", str(tmp_path), "oracle", "--lemma", "combinato", "--config", str(config)]) == EXIT_USAGE


def test_oracle_run(tmp_path):
    """Test an oracle instance writes its report"""
    config = tmp_path / "oracle.env"
    config.write_text("# small window\nx1=10\nx2=40\nn=4\nseed=3\n")
    out = tmp_path / "out"
    assert run(["--output-dir", str(out), "oracle", "--lemma", "combinato", "--config", str(config)]) == EXIT_OK
    report = json.loads((out / "oracle_combinato.json").read_text())
    assert report["pass"] is True


def test_pipeline_chain(tmp_path):
    """Test the chain subcommand writes its table and report"""
    config = tmp_path / "chain.env"
    config.write_text("log_loglog_k=52000\nthreshold_exponent=100000\n")
    assert run(["--output-dir", str(tmp_path), "pipeline", "chain", "--config", str(config)]) == EXIT_OK
    assert (tmp_path / "chain_bounds.csv").exists()
    assert json.loads((tmp_path / "chain.json").read_text())["chain"]["all_pass"] is True


def test_pipeline_markov(tmp_path):
    """Test the Markov subcommand"""
    config = tmp_path / "markov.env"
    config.write_text("log_k=1e40\nv=1e33\n")
    assert run(["--output-dir", str(tmp_path), "pipeline", "markov", "--config", str(config)]) == EXIT_OK
    assert json.loads((tmp_path / "markov.json").read_text())["bound"]["passes"] is True


def test_pipeline_classify(tmp_path):
    """Test classification on a small synthetic family"""
    config = tmp_path / "classify.env"
    config.write_text("log_k=100\nx=300\nforms=500\nseed=2\n")
    assert run(["--output-dir", str(tmp_path), "--threads", "2", "pipeline", "classify", "--config", str(config)]) == EXIT_OK
    summary = json.loads((tmp_path / "classification.json").read_text())["summary"]
    assert summary["partition"] is True


def test_simulate_deterministic(tmp_path):
    """Test identical argv gives byte-identical artifacts"""
    argv = ["simulate", "--x", "50", "--forms", "100", "--seed", "8"]
    assert run(["--output-dir", str(tmp_path / "a")] + argv) == EXIT_OK
    assert run(["--output-dir", str(tmp_path / "b"), "--threads", "3"] + argv) == EXIT_OK
    for name in ("family.csv", "family_meta.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


@pytest.mark.slow
def test_accept_quick(tmp_path):
    """Test the quick acceptance suite passes"""
    assert run(["--output-dir", str(tmp_path), "accept", "--suite", "quick"]) == EXIT_OK
    assert (tmp_path / "acceptance" / "acceptance.json").exists()


def test_pipeline_sound_margins(tmp_path):
    """Test `pipeline sound` reports bound, log L and margin for every g in B_24"""
    config = tmp_path / "sound.env"
    config.write_text("log_k=2.4849066497880004\nweight=12\nncoeffs=200\nx=20736\nlambda_f=delta\n")
    assert run(["--output-dir", str(tmp_path), "pipeline", "sound", "--config", str(config)]) == EXIT_OK
    table = pd.read_csv(tmp_path / "margins.csv")
    assert list(table.columns) == ["k", "g_index", "x", "x_exponent", "bound", "log_L", "margin"]
    assert len(table) == 2
    assert (table["x_exponent"] == 4).all()
    assert ((table["bound"] - table["log_L"] - table["margin"]).abs() < 1e-9).all()
    assert len(json.loads((tmp_path / "sound.json").read_text())["margins"]) == 2


def test_pipeline_sound_rejects_delta_at_other_weight(tmp_path):
    """Test lambda_f=delta with weight 16 is a usage error"""
    config = tmp_path / "sound.env"
    config.write_text("log_k=3\nweight=16\nlambda_f=delta\n")
    assert run(["--output-dir", str(tmp_path), "pipeline", "sound", "--config", str(config)]) == EXIT_USAGE


@pytest.mark.slow
def test_accept_runs_are_byte_identical(tmp_path):
    """Test two separate `accept` processes write identical files"""
    root = Path(__file__).resolve().parents[1]
    for name in ("a", "b"):
        completed = subprocess.run(
            [sys.executable, "-m", "app.main", "--output-dir", str(tmp_path / name), "accept", "--suite", "quick"],
            cwd=root,
            capture_output=True,
        )
        assert completed.returncode == EXIT_OK, completed.stderr.decode()[-2000:]
    first = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
    second = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
    assert first == second and first
    for relative in first:
        assert (tmp_path / "a" / relative).read_bytes() == (tmp_path / "b" / relative).read_bytes(), relative
