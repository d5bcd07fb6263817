"""Turn a figure bundle directory into an image file.

A bundle is a directory holding ``bundle.json`` plus CSV files.  The
manifest names the figure type (fig1..fig4) and maps logical names to
CSV files.  Every CSV starts with a '# key=value ...' comment line,
then a header row, then data rows.  Rendering is a pure function of
those files: nothing is resampled or recomputed here.
"""

from __future__ import annotations

import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SUPPORTED_VERSION = "figbundle v1"


class BundleError(Exception):
    """A bundle is malformed or unreadable."""


class SchemaVersionError(BundleError):
    """The bundle declares a format version this renderer does not speak."""


class EmptyDataError(BundleError):
    """A CSV in the bundle has a header but no data rows."""


def load_manifest(bundle_dir: str) -> dict:
    path = os.path.join(bundle_dir, "bundle.json")
    try:
        with open(path) as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise BundleError(f"cannot read bundle manifest {path}: {e}") from e
    version = manifest.get("format_version")
    if version != SUPPORTED_VERSION:
        raise SchemaVersionError(
            f"bundle declares {version!r}, this renderer supports "
            f"{SUPPORTED_VERSION!r}"
        )
    for key in ("figure", "files"):
        if key not in manifest:
            raise BundleError(f"manifest missing required key {key!r}")
    return manifest


def read_csv(bundle_dir: str, name: str) -> np.ndarray:
    """Read one bundle CSV (comment line + header + rows) as a float array."""
    path = os.path.join(bundle_dir, name)
    data = np.genfromtxt(path, delimiter=",", comments="#", skip_header=1,
                         ndmin=2)
    # skip_header applies after comment stripping, so it eats the column
    # header row; what is left must be data.
    if data.size == 0 or np.isnan(data).all():
        raise EmptyDataError(f"{path} contains no data rows")
    return data


def _render_scatter_panel(ax, scatter: np.ndarray, ellipse: np.ndarray) -> None:
    ax.scatter(scatter[:, 0], scatter[:, 1], s=4, color="black", zorder=2)
    ax.plot(ellipse[:, 0], ellipse[:, 1], color="red", lw=1, zorder=3)
    ax.plot(ellipse[:, 0], ellipse[:, 2], color="red", lw=1, zorder=3)
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_aspect("equal")


def render_fig1(bundle_dir: str, manifest: dict, out_path: str) -> None:
    scatter = read_csv(bundle_dir, manifest["files"]["scatter"])
    ellipse = read_csv(bundle_dir, manifest["files"]["ellipse"])
    fig, ax = plt.subplots(figsize=(5, 5))
    _render_scatter_panel(ax, scatter, ellipse)
    params = manifest.get("params", {})
    ax.set_title(f"n={params.get('n')}, t={params.get('t')}")
    ax.set_xlabel("x")
    ax.set_ylabel("z")
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_fig2(bundle_dir: str, manifest: dict, out_path: str) -> None:
    rows = read_csv(bundle_dir, manifest["files"]["trajectories"])
    fig, ax = plt.subplots(figsize=(7, 4))
    for p in np.unique(rows[:, 0]):
        sel = rows[rows[:, 0] == p]
        order = np.argsort(sel[:, 1])
        ax.plot(sel[order, 1], sel[order, 2], lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("scaled position")
    ax.set_ylim(-1.05, 1.05)
    params = manifest.get("params", {})
    ax.set_title(f"trajectories, n={params.get('n')}")
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_fig3(bundle_dir: str, manifest: dict, out_path: str) -> None:
    files = manifest["files"]
    indices = sorted(
        int(k.split("_")[1]) for k in files if k.startswith("scatter_")
    )
    if not indices:
        raise BundleError("fig3 bundle holds no scatter panels")
    ncols = min(4, len(indices))
    nrows = -(-len(indices) // ncols)
    fig, axes = plt.subplots(nrows, ncols,
                             figsize=(3 * ncols, 3 * nrows), squeeze=False)
    t_values = manifest.get("params", {}).get("t_values", [])
    for ax in axes.flat:
        ax.set_axis_off()
    for i in indices:
        ax = axes.flat[i]
        ax.set_axis_on()
        scatter = read_csv(bundle_dir, files[f"scatter_{i}"])
        ellipse = read_csv(bundle_dir, files[f"ellipse_{i}"])
        _render_scatter_panel(ax, scatter, ellipse)
        if i < len(t_values):
            ax.set_title(f"t={t_values[i]}", fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_fig4(bundle_dir: str, manifest: dict, out_path: str) -> None:
    rows = read_csv(bundle_dir, manifest["files"]["zpaths"])
    fig, ax = plt.subplots(figsize=(5, 5))
    for p in np.unique(rows[:, 0]):
        sel = rows[rows[:, 0] == p]
        order = np.argsort(sel[:, 1])
        ax.plot(sel[order, 2], sel[order, 3], lw=0.8)
    lim = 1.55
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.set_xlabel("Re Z")
    ax.set_ylabel("Im Z")
    params = manifest.get("params", {})
    ax.set_title(f"half-time Z paths, n={params.get('n')}")
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)


_RENDERERS = {
    "fig1": render_fig1,
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
}


def render_figure(bundle_dir: str, out_path: str) -> str:
    """Render a bundle directory to an image; returns the output path."""
    manifest = load_manifest(bundle_dir)
    figure = manifest["figure"]
    try:
        renderer = _RENDERERS[figure]
    except KeyError:
        raise BundleError(f"unknown figure type {figure!r}") from None
    renderer(bundle_dir, manifest, out_path)
    return out_path
