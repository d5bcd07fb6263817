import json
import os

import pytest

from sortnetlab import cli, core


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_sample_writes_batch_and_manifest(tmp_path, capsys):
    out = str(tmp_path / "b")
    code, _ = run(["sample", "--n", "4", "--count", "3", "--seed", "7",
                   "--out", out], capsys)
    assert code == 0
    manifest = json.load(open(os.path.join(out, "manifest.json")))
    assert manifest["n"] == 4 and manifest["count"] == 3 and manifest["seed"] == 7
    for name in manifest["files"]:
        net = core.read_network(os.path.join(out, name))
        assert core.is_sorting_network(net.seq)


def test_sample_rerun_byte_identical(tmp_path, capsys):
    out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
    run(["sample", "--n", "4", "--count", "2", "--seed", "5", "--out", out1], capsys)
    run(["sample", "--n", "4", "--count", "2", "--seed", "5", "--out", out2], capsys)
    for name in ("net_000000.txt", "net_000001.txt", "manifest.json"):
        a = open(os.path.join(out1, name), "rb").read()
        b = open(os.path.join(out2, name), "rb").read()
        assert a == b


def test_sample_n2_unique(tmp_path, capsys):
    out = str(tmp_path / "u")
    code, _ = run(["sample", "--n", "2", "--count", "1", "--seed", "1",
                   "--out", out], capsys)
    assert code == 0
    net = core.read_network(os.path.join(out, "net_000000.txt"))
    assert list(net.word) == [1]


def test_entropy_seed_printed(tmp_path, capsys):
    code, out = run(["sample", "--n", "2", "--count", "1",
                     "--out", str(tmp_path / "e")], capsys)
    assert code == 0
    assert out.startswith("seed=")


def test_verify_uniformity_passes(capsys):
    code, out = run(["verify", "--suite", "uniformity", "--seed", "3",
                     "--samples", "4000"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "uniformity" and report["pass"]


def test_verify_failure_exit_code(capsys):
    # an impossible scale: tiny ensemble at tiny n makes the LIS bound fail
    code, out = run(["verify", "--suite", "lis", "--seed", "3", "--n", "12",
                     "--count", "2"], capsys)
    report = json.loads(out)
    assert (code == 0) == report["pass"]
    assert code in (0, 1)


def test_unknown_suite_usage_error(capsys):
    assert cli.main(["verify", "--suite", "nope"]) == 2


def test_missing_command_usage_error(capsys):
    assert cli.main([]) == 2


def test_io_error_exit_code(tmp_path, capsys):
    target = tmp_path / "file"
    target.write_text("x")
    # out_dir is an existing regular file -> IO failure
    code = cli.main(["sample", "--n", "2", "--count", "1", "--seed", "1",
                     "--out", str(target)])
    assert code == 3


def test_figures_fig1_bundle(tmp_path, capsys):
    out = str(tmp_path / "f1")
    code, _ = run(["figures", "--fig", "fig1", "--n", "30", "--t", "0.5",
                   "--seed", "2", "--out", out], capsys)
    assert code == 0
    manifest = json.load(open(os.path.join(out, "bundle.json")))
    assert manifest["figure"] == "fig1"
    scatter = open(os.path.join(out, "scatter.csv")).read().splitlines()
    assert scatter[0].startswith("#") and scatter[1] == "x,z"
    assert len(scatter) == 2 + 30


def test_figures_fig3_bundle(tmp_path, capsys):
    out = str(tmp_path / "f3")
    code, _ = run(["figures", "--fig", "fig3", "--n", "20", "--seed", "2",
                   "--t-list", "0.0", "0.5", "1.0", "--out", out], capsys)
    assert code == 0
    manifest = json.load(open(os.path.join(out, "bundle.json")))
    assert len(manifest["files"]) == 6  # 3 scatters + 3 ellipse polylines


def test_figures_fig2_and_fig4(tmp_path, capsys):
    out2 = str(tmp_path / "f2")
    code, _ = run(["figures", "--fig", "fig2", "--n", "20", "--grid", "10",
                   "--seed", "2", "--particles", "1", "10", "20",
                   "--out", out2], capsys)
    assert code == 0
    rows = open(os.path.join(out2, "trajectories.csv")).read().splitlines()
    assert rows[1] == "particle,t,position_scaled"
    assert len(rows) == 2 + 3 * 11

    out4 = str(tmp_path / "f4")
    code, _ = run(["figures", "--fig", "fig4", "--n", "20", "--grid", "8",
                   "--seed", "2", "--particles", "5", "--out", out4], capsys)
    assert code == 0
    rows = open(os.path.join(out4, "zpaths.csv")).read().splitlines()
    assert rows[1] == "particle,t,re,im"
    assert len(rows) == 2 + 9


def test_config_defaults_flags_win(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"count": 2}))
    out = str(tmp_path / "c")
    code, _ = run(["--config", str(cfg), "sample", "--n", "2", "--seed", "1",
                   "--out", out], capsys)
    assert code == 0
    manifest = json.load(open(os.path.join(out, "manifest.json")))
    assert manifest["count"] == 2
