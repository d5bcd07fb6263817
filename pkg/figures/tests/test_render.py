"""Figure rendering tests.

Bundles are produced through the primary package's public CLI (a
subprocess), never by importing its internals: the CSV files and
bundle.json are the only interface exercised here.
"""

import json
import os
import subprocess
import sys

import pytest

from figrender import (BundleError, EmptyDataError, SchemaVersionError,
                       render_figure)
from figrender.cli import main as cli_main


def make_bundle(tmp_path, fig, *extra):
    out = str(tmp_path / fig)
    cmd = [sys.executable, "-m", "sortnetlab.cli", "figures", "--fig", fig,
           "--n", "40", "--seed", "7", "--out", out, *extra]
    subprocess.run(cmd, check=True, capture_output=True)
    return out


@pytest.mark.parametrize("fig,extra", [
    ("fig1", ("--t", "0.5")),
    ("fig2", ("--grid", "20")),
    ("fig3", ("--t-list", "0.0", "0.5", "1.0")),
    ("fig4", ("--grid", "16", "--particles", "1", "20", "40")),
])
def test_render_each_figure(tmp_path, fig, extra):
    bundle = make_bundle(tmp_path, fig, *extra)
    out = str(tmp_path / f"{fig}.png")
    assert render_figure(bundle, out) == out
    assert os.path.getsize(out) > 1000  # a real raster, not a stub


def test_cli_exit_codes(tmp_path):
    bundle = make_bundle(tmp_path, "fig1")
    out = str(tmp_path / "img.png")
    assert cli_main([bundle, "--out", out]) == 0
    assert os.path.exists(out)
    assert cli_main([]) == 2  # missing args -> usage


def test_schema_version_mismatch(tmp_path):
    bundle = make_bundle(tmp_path, "fig1")
    path = os.path.join(bundle, "bundle.json")
    manifest = json.load(open(path))
    manifest["format_version"] = "figbundle v99"
    json.dump(manifest, open(path, "w"))
    with pytest.raises(SchemaVersionError):
        render_figure(bundle, str(tmp_path / "x.png"))
    assert cli_main([bundle, "--out", str(tmp_path / "x.png")]) == 2


def test_empty_csv_rejected(tmp_path):
    bundle = make_bundle(tmp_path, "fig1")
    scatter = os.path.join(bundle, "scatter.csv")
    lines = open(scatter).read().splitlines()
    open(scatter, "w").write("\n".join(lines[:2]) + "\n")  # meta + header only
    target = str(tmp_path / "x.png")
    with pytest.raises(EmptyDataError):
        render_figure(bundle, target)
    assert not os.path.exists(target)  # no empty image produced


def test_missing_manifest(tmp_path):
    with pytest.raises(BundleError):
        render_figure(str(tmp_path), str(tmp_path / "x.png"))
