import json
import subprocess
import sys
from pathlib import Path

import pytest

from stabglue.cli import main


def run_cli(args, cwd):
    return main(args)


def test_verify_kernel(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["verify-kernel", "--samples", "5000", "--seed", "7", "--out", "vk.json"])
    assert code == 0
    rep = json.loads(Path("vk.json").read_text())
    assert rep["results"]["ok"]
    assert rep["results"]["equality_witness"]["equality"]
    assert set(rep["results"]["thetas"]) == {"pi/6", "pi/2", "2pi/3", "5pi/6"}


def test_verify_kernel_deterministic(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    main(["verify-kernel", "--samples", "2000", "--seed", "3", "--out", "a.json"])
    main(["verify-kernel", "--samples", "2000", "--seed", "3", "--out", "b.json"])
    a = json.loads(Path("a.json").read_text())
    b = json.loads(Path("b.json").read_text())
    a.pop("timings")
    b.pop("timings")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_hn_subcommand(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(
        [
            "hn",
            "--n",
            "2",
            "--charge=-1|1,0|1",
            "--object",
            "I[1,1]@0 + I[2,2]@0",
            "--out",
            "hn.json",
        ]
    )
    assert code == 0
    rep = json.loads(Path("hn.json").read_text())
    assert [f["phase"] for f in rep["results"]["factors"]] == [0.75, 0.5]


def test_glue_subcommand(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["glue", "--side", "0", "--out", "glue.json"])
    assert code == 0
    rep = json.loads(Path("glue.json").read_text())
    assert rep["results"]["conditions"]["all"]
    assert rep["results"]["semistable_sweep"]["failures"] == []
    assert rep["results"]["semistable_sweep"]["sup_ratio"] <= 1.0 + 1e-12


def test_tilt_subcommand_and_usage_error(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["tilt", "--beta", "1/2", "--omega", "1/2", "--out", "tilt.json"])
    assert code == 0
    rep = json.loads(Path("tilt.json").read_text())
    assert rep["results"]["validation"]["ok"]
    assert rep["results"]["classification"]
    # negative omega is a usage error: exit 2
    code = main(["tilt", "--beta", "2", "--omega", "-1"])
    assert code == 2


def test_scan_small_grid(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(
        [
            "scan",
            "--grid",
            "5x3",
            "--eps1",
            "1/3",
            "--eps2=-1/2",
            "--out",
            "scan.json",
            "--csv",
            "grid.csv",
        ]
    )
    assert code == 0
    rep = json.loads(Path("scan.json").read_text())
    assert rep["results"]["ok"]
    lines = Path("grid.csv").read_text().strip().splitlines()
    assert lines[0] == "beta,omega,in_region,sup_ratio,heart_ok,ball_ok"
    assert len(lines) == 1 + 15


def test_path_subcommand_short(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(
        ["path", "--steps", "32", "--eps", "1/16", "--out", "path.json", "--csv", "p.csv"]
    )
    assert code == 0
    rep = json.loads(Path("path.json").read_text())
    assert rep["results"]["endpoint_rotation"]["ok"]
    assert rep["results"]["links_ok"]
    assert rep["results"]["heart_windows_mid"]["ok"]
