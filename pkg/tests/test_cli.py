import json
import subprocess
import sys

import numpy as np
import pytest

from anyonweave import __version__
from anyonweave.cli import main, read_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rep_text(capsys):
    code, out, _ = run(capsys, "rep", "--n", "3", "--k", "0", "--alpha", "0.5", "--gen", "1")
    assert code == 0
    assert "basis (canonical order): LR RL" in out
    assert "+0.980785+0.195090j" in out  # e^{i pi/16}
    assert "-0.195090+0.980785j" in out  # e^{9 i pi/16}


def test_rep_json_and_order(capsys):
    code, out, _ = run(capsys, "rep", "--n", "4", "--k", "1", "--alpha", "0.6", "--word", "1,2,1", "--json")
    a = json.loads(out)
    code, out, _ = run(capsys, "rep", "--n", "4", "--k", "1", "--alpha", "0.6", "--word", "2,1,2", "--json")
    b = json.loads(out)
    Ma = np.array(a["matrices"]["word 1,2,1"])
    Mb = np.array(b["matrices"]["word 2,1,2"])
    assert np.abs(Ma - Mb).max() < 1e-10
    code, out, _ = run(capsys, "rep", "--n", "3", "--k", "0", "--alpha", "0.7", "--order", "paper", "--json")
    assert json.loads(out)["basis"] == ["RL", "LR"]


def test_rep_errors(capsys):
    code, _, err = run(capsys, "rep", "--n", "3", "--k", "5", "--alpha", "0.5")
    assert code == 2 and "dimension zero" in err
    code, _, _ = run(capsys, "rep", "--n", "3", "--k", "0", "--alpha", "1.0")
    assert code == 2
    code, _, _ = run(capsys, "rep", "--n", "3", "--k", "0", "--alpha", "0.5", "--word", "1,x")
    assert code == 2
    code, _, _ = run(capsys, "rep", "--n", "3")
    assert code == 2


def test_rep_singular_pairing(capsys):
    code, out, _ = run(capsys, "rep", "--n", "5", "--k", "2", "--alpha", "0.6", "--gen", "2")
    assert code == 0 and "gram: undefined" in out


def test_verify(capsys, tmp_path):
    out_file = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--suite", "singular", "--out", str(out_file))
    assert code == 0 and "PASS" in out
    rep = json.loads(out_file.read_text())
    assert rep["passed"] and rep["suite"] == "singular"
    code, out, _ = run(capsys, "verify", "--suite", "burau", "--trials", "2")
    assert code == 0


def test_burau(capsys):
    code, out, _ = run(capsys, "burau", "--n", "4", "--s-angle", "1.1")
    assert code == 0 and "E-basis: unitarity residual" in out and "FAIL" not in out
    code, out, _ = run(capsys, "burau", "--n", "4", "--alpha", "0.6", "--check-iso")
    assert code == 0 and "expected +1" in out
    code, out, _ = run(capsys, "burau", "--n", "2", "--s-angle", "0.0")
    assert code == 0 and "warning" in out and "degenerate" in out
    code, _, err = run(capsys, "burau", "--n", "3", "--s-angle", "1", "--s-modulus", "2")
    assert code == 1 and "not 1" in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--fibonacci", "--target", "T", "--budget", "10")
    assert code == 0 and "error=2.350748e-01" in out
    code, _, _ = run(capsys, "search", "--alpha", "0.2", "--target", "T")
    assert code == 2
    code, _, _ = run(capsys, "search", "--alpha", "0.7", "--target", "Y")
    assert code == 2


def sweep_csv(capsys, tmp_path, name, *extra):
    path = tmp_path / name
    code, _, _ = run(capsys, "sweep", "--alpha", "0.25:0.45:0.05", "--target", "T,iX", "--budget", "8",
                     "--baseline", "--out", str(path), *extra)
    return code, path.read_bytes()


def test_sweep_csv(capsys, tmp_path):
    code, data = sweep_csv(capsys, tmp_path, "a.csv", "--threads", "1")
    assert code == 0
    lines = data.decode().splitlines()
    assert lines[0] == "alpha,target,metric,budget,error,cost,weave"
    rows = [l.split(",") for l in lines[1:] if not l.startswith("#")]
    assert [r[0] for r in rows] == ["0.35", "0.4", "0.45"] * 2 + ["fibonacci"] * 2
    assert lines[-2] == "# skipped 2 alpha values (indefinite form or singular)"
    assert lines[-1].startswith(f"# anyonweave {__version__} seed=0 ")
    assert "threads" not in lines[-1]
    for r in rows:
        float(r[4])
        assert ":" in r[6]
    _, again = sweep_csv(capsys, tmp_path, "b.csv", "--threads", "3")
    assert again == data


def test_sweep_empty_grid(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--alpha", "0.1:0.3:0.1", "--target", "T", "--budget", "4",
                       "--out", str(tmp_path / "e.csv"))
    assert code == 1 and "positive definite" in err


def test_sweep_threads_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ANYONWEAVE_THREADS", "2")
    code, data = sweep_csv(capsys, tmp_path, "c.csv")
    assert code == 0
    monkeypatch.setenv("ANYONWEAVE_THREADS", "lots")
    code, _, _ = run(capsys, "sweep", "--alpha", "0.5", "--target", "T", "--budget", "4")
    assert code == 2


def test_config_file(capsys, tmp_path):
    conf = tmp_path / "sweep.conf"
    conf.write_text("# defaults\nbudget = 6\ntarget = iZ\nbaseline = yes\n")
    assert read_config(str(conf)) == {"budget": "6", "target": "iZ", "baseline": "yes"}
    code, out, _ = run(capsys, "--config", str(conf), "sweep", "--alpha", "0.7")
    assert code == 0
    rows = [l for l in out.splitlines() if l and not l.startswith("#")][1:]
    assert rows[0].startswith("0.7,iZ,opnorm,6,") and rows[1].startswith("fibonacci,iZ")
    # flags win over the file
    code, out, _ = run(capsys, "--config", str(conf), "sweep", "--alpha", "0.7", "--budget", "4")
    assert ",4," in out.splitlines()[1]
    code, out, _ = run(capsys, "--config", str(conf), "sweep", "--alpha", "0.7", "--target", "T")
    assert {l.split(",")[1] for l in out.splitlines()[1:] if not l.startswith("#")} == {"T"}
    bad = tmp_path / "bad.conf"
    bad.write_text("nonsense = 1\n")
    code, _, err = run(capsys, "--config", str(bad), "sweep", "--alpha", "0.7")
    assert code == 2


def test_config_fills_required_flags(capsys, tmp_path):
    conf = tmp_path / "rep.conf"
    conf.write_text("n = 3\nk = 0\nalpha = 0.5\n")
    code, out, _ = run(capsys, "--config", str(conf), "rep", "--gen", "1")
    assert code == 0 and "H(n=3, k=0, alpha=0.5)" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "anyonweave", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and __version__ in out.stdout
    out = subprocess.run([sys.executable, "-m", "anyonweave", "bogus"], capture_output=True, text=True)
    assert out.returncode == 2


@pytest.mark.slow
def test_sweep_ix_window_minimum(tmp_path):
    out = tmp_path / "ix.csv"
    code = main(["sweep", "--alpha", "0.55:0.65:0.001", "--target", "iX", "--budget", "24",
                 "--baseline", "--refine", "--out", str(out)])
    assert code == 0
    rows = [ln.split(",") for ln in out.read_text().splitlines()[1:] if not ln.startswith("#")]
    grid = [(float(r[4]), float(r[0])) for r in rows if r[0] != "fibonacci"]
    # the dip at 0.6002 is narrower than the grid step; --refine adds step/10 points around it
    assert len(grid) > 101
    err, a = min(grid)
    assert err <= 1.4e-3 and abs(a - 0.60) < 0.01
