"""End-to-end figures: scan CSV outputs in, SVG region plots out.

Runs the scan CLI as a subprocess so the two packages only meet at the
CSV files, then renders both figure layouts and checks the drawn
boundary tables are monotone intervals.
"""

import csv
import hashlib
import subprocess
import sys

import pytest

from qcap_plotkit import BOUNDARIES_COLUMNS
from qcap_plotkit.cli import main


def run(args):
    proc = subprocess.run(args, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


def boundary_rows(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        assert reader.fieldnames == BOUNDARIES_COLUMNS
        return list(reader)


def assert_monotone_intervals(rows):
    for row in rows:
        for lo_key, hi_key in (
            ("param_min_q", "param_max_q"),
            ("param_min_q1", "param_max_q1"),
        ):
            lo, hi = row[lo_key], row[hi_key]
            assert (lo == "") == (hi == "")
            if lo != "":
                assert float(lo) <= float(hi)


@pytest.fixture(scope="module")
def erasure_scan(tmp_path_factory):
    out = tmp_path_factory.mktemp("erasure_scan")
    run([
        "qcap", "scan", "erasure", "--d", "10",
        "--mu-max", "0.1:0.26:0.02", "--lam", "0.3:0.7:0.05",
        "--path", "lower", "--out-dir", str(out),
    ])
    return out


@pytest.fixture(scope="module")
def mad_scans(tmp_path_factory):
    out = tmp_path_factory.mktemp("mad_scans")
    dirs = []
    for d in (2, 3, 4):
        sub = out / f"d{d}"
        run([
            "qcap", "scan", "mad", "--d", str(d), "--mu-max", "auto",
            "--gamma", "0.3:0.7:0.02", "--path", "exact",
            "--out-dir", str(sub),
        ])
        dirs.append(sub)
    return dirs


def test_mu_max_axis_figure_from_scan_output(erasure_scan, tmp_path):
    rows = boundary_rows(erasure_scan / "boundaries.csv")
    assert rows, "scan produced no boundary rows"
    assert_monotone_intervals(rows)

    fig = tmp_path / "erasure_regions.svg"
    code = main([
        "--points", str(erasure_scan / "points.csv"),
        "--boundaries", str(erasure_scan / "boundaries.csv"),
        "--out", str(fig), "--family", "erasure", "--d", "10",
    ])
    assert code == 0
    assert fig.read_text().startswith("<?xml")


def test_d_axis_figure_from_pooled_scans(mad_scans, tmp_path):
    for sub in mad_scans:
        assert_monotone_intervals(boundary_rows(sub / "boundaries.csv"))

    fig = tmp_path / "mad_regions.svg"
    args = ["--out", str(fig), "--family", "mad", "--x-axis", "d"]
    for sub in mad_scans:
        args += ["--boundaries", str(sub / "boundaries.csv")]
    assert main(args) == 0
    assert fig.read_text().startswith("<?xml")


def test_cli_entry_point_and_repeat_render_identical(erasure_scan, tmp_path):
    digests = []
    for name in ("one.svg", "two.svg"):
        fig = tmp_path / name
        run([
            sys.executable, "-m", "qcap_plotkit.cli",
            "--boundaries", str(erasure_scan / "boundaries.csv"),
            "--out", str(fig), "--family", "erasure", "--d", "10",
        ])
        digests.append(hashlib.sha256(fig.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
