"""CSV bundles for the four standard figure types (data only, no rendering).

Each bundle is a directory with a ``bundle.json`` manifest and one or more
CSV files.  Schemas (all CSVs start with a '# key=value ...' comment line):

  fig1  scatter.csv    x,z              time-t permutation measure points
        ellipse.csv    x,z_low,z_high   boundary polyline of the t-ellipse
  fig2  trajectories.csv  particle,t,position_scaled
  fig3  scatter_<i>.csv / ellipse_<i>.csv per time value (montage panels)
  fig4  zpaths.csv     particle,t,re,im

Rendering is the job of the separate figure scripts, which consume these
files and never recompute statistics.
"""

from __future__ import annotations

import json
import os

import numpy as np

from . import stats
from .core import SortingNetwork, global_trajectories, write_trajectory_csv

BUNDLE_VERSION = "figbundle v1"


def _meta(**kv) -> str:
    return " ".join(f"{k}={v}" for k, v in kv.items())


def _write_scatter(path: str, m: stats.EmpiricalMeasure2D, meta: str) -> None:
    stats.write_stat_csv(
        path, "scatter",
        ((float(x), float(z)) for x, z in m.points),
        ["x", "z"], meta,
    )


def _write_ellipse(path: str, t: float, meta: str) -> None:
    poly = stats.ArchEllipse(t).boundary()
    stats.write_stat_csv(
        path, "ellipse",
        ((float(a), float(b), float(c)) for a, b, c in poly),
        ["x", "z_low", "z_high"], meta,
    )


def _manifest(out_dir: str, figure: str, params: dict, files: dict) -> dict:
    from . import __version__  # deferred: the package re-exports this module

    manifest = {
        "format_version": BUNDLE_VERSION,
        "figure": figure,
        "code_version": __version__,
        "params": params,
        "files": files,
    }
    with open(os.path.join(out_dir, "bundle.json"), "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return manifest


def fig1_bundle(out_dir: str, net: SortingNetwork, t: float, seed: int) -> dict:
    """Time-t permutation-matrix scatter with its ellipse boundary."""
    os.makedirs(out_dir, exist_ok=True)
    meta = _meta(seed=seed, n=net.n, t=t)
    m = stats.eta_t(net, t)
    _write_scatter(os.path.join(out_dir, "scatter.csv"), m, meta)
    _write_ellipse(os.path.join(out_dir, "ellipse.csv"), t, meta)
    return _manifest(out_dir, "fig1", {"n": net.n, "t": t, "seed": seed},
                     {"scatter": "scatter.csv", "ellipse": "ellipse.csv"})


def fig2_bundle(out_dir: str, net: SortingNetwork, particles, G: int, seed: int) -> dict:
    """Wiring-diagram style trajectory fan for selected particles."""
    os.makedirs(out_dir, exist_ok=True)
    grid = global_trajectories(net, G)
    meta = _meta(seed=seed, n=net.n, G=G)
    write_trajectory_csv(os.path.join(out_dir, "trajectories.csv"), grid,
                         particles=particles, meta=meta)
    return _manifest(out_dir, "fig2",
                     {"n": net.n, "G": G, "seed": seed,
                      "particles": [int(p) for p in particles]},
                     {"trajectories": "trajectories.csv"})


def fig3_bundle(out_dir: str, net: SortingNetwork, t_values, seed: int) -> dict:
    """Montage of eta_t scatters with ellipse overlays over a list of times."""
    os.makedirs(out_dir, exist_ok=True)
    files = {}
    for i, t in enumerate(t_values):
        meta = _meta(seed=seed, n=net.n, t=t)
        sname, ename = f"scatter_{i}.csv", f"ellipse_{i}.csv"
        _write_scatter(os.path.join(out_dir, sname), stats.eta_t(net, t), meta)
        _write_ellipse(os.path.join(out_dir, ename), t, meta)
        files[f"scatter_{i}"] = sname
        files[f"ellipse_{i}"] = ename
    return _manifest(out_dir, "fig3",
                     {"n": net.n, "t_values": [float(t) for t in t_values],
                      "seed": seed}, files)


def fig4_bundle(out_dir: str, net: SortingNetwork, particles, G: int, seed: int) -> dict:
    """Rotated half-time paths Z_j on a grid over [0, 1/2]."""
    os.makedirs(out_dir, exist_ok=True)
    grid = np.linspace(0.0, 0.5, G + 1)
    rows = []
    for j in particles:
        zp = stats.z_functions(net, int(j), grid)
        rows.extend(
            (int(j), float(t), float(z.real), float(z.imag))
            for t, z in zip(zp.times, zp.values)
        )
    meta = _meta(seed=seed, n=net.n, G=G)
    stats.write_stat_csv(os.path.join(out_dir, "zpaths.csv"), "zpaths",
                         rows, ["particle", "t", "re", "im"], meta)
    return _manifest(out_dir, "fig4",
                     {"n": net.n, "G": G, "seed": seed,
                      "particles": [int(p) for p in particles]},
                     {"zpaths": "zpaths.csv"})
