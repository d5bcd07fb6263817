"""Global-scaling diagnostics for sampled sorting networks.

Everything here consumes a :class:`SortingNetwork` or a
:class:`TrajectoryGrid` and emits plain numbers: empirical time-t
permutation measures and their ellipse-support check, Holder and
state-dependent Lipschitz ratios of scaled trajectories, edge sine-curve
deviations, LIS profiles of swap prefixes, least-squares sine fits, and
the exploratory rotated half-time paths Z_j.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .core import SortingNetwork, TrajectoryGrid, positions_at

DEFAULT_GRID = 200  # default G for trajectory diagnostics; scans are O(G^2)


# ---------------------------------------------------------------------------
# Empirical measures and their elliptical support.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmpiricalMeasure2D:
    """Point cloud {(sigma_G(i,0), sigma_G(i,t)) : i = 1..n} at a fixed t."""

    n: int
    t: float
    points: np.ndarray = field(repr=False)  # shape (n, 2)


def eta_t(net: SortingNetwork, t: float) -> EmpiricalMeasure2D:
    """The time-t permutation measure, using swap index floor(N*t)."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    n, N = net.n, net.N
    pos = positions_at(net.seq, [int(math.floor(N * t))])[0]
    x = 2.0 * np.arange(1, n + 1) / n - 1.0
    z = 2.0 * pos / n - 1.0
    return EmpiricalMeasure2D(n=n, t=t, points=np.column_stack([x, z]))


@dataclass(frozen=True)
class ArchEllipse:
    """Support of the time-t Archimedean measure.

    Membership: |x| <= 1 and (z - x cos(pi t))^2 <= (1 - x^2) sin^2(pi t).
    At t = 1/2 this is the unit disk; at t in {0, 1} it degenerates to the
    diagonal z = +-x.
    """

    t: float

    def outside(self, x: np.ndarray, z: np.ndarray, margin: float = 0.0) -> np.ndarray:
        # linear (distance) margin; degenerates gracefully to the segment
        # predicate |z - x cos(pi t)| > margin as sin(pi t) -> 0
        c, s = math.cos(math.pi * self.t), math.sin(math.pi * self.t)
        half = abs(s) * np.sqrt(np.clip(1.0 - x ** 2, 0.0, None))
        bad = np.abs(z - x * c) > half + margin
        return bad | (np.abs(x) > 1.0 + margin)

    def boundary(self, npts: int = 400) -> np.ndarray:
        """Polyline (x, z_low, z_high) of the ellipse boundary."""
        c, s = math.cos(math.pi * self.t), math.sin(math.pi * self.t)
        x = np.linspace(-1.0, 1.0, npts)
        half = abs(s) * np.sqrt(np.clip(1.0 - x ** 2, 0.0, None))
        return np.column_stack([x, x * c - half, x * c + half])


def ellipse_outside_fraction(m: EmpiricalMeasure2D, margin: float) -> float:
    """Fraction of points of the measure outside the t-ellipse (+margin)."""
    if margin < 0:
        raise ValueError("margin must be >= 0")
    ell = ArchEllipse(m.t)
    x, z = m.points[:, 0], m.points[:, 1]
    return float(np.mean(ell.outside(x, z, margin)))


# ---------------------------------------------------------------------------
# LIS profile of swap prefixes.
# ---------------------------------------------------------------------------

def lis_prefix_profile(net: SortingNetwork, t_values) -> np.ndarray:
    """L_n(t)/n for each requested t, via incremental patience sorting.

    L_n(t) is the longest strictly increasing subsequence of the first
    ceil(N*t) letters; one pass over the word, O(N log n) total.
    """
    t_values = np.asarray(t_values, dtype=float)
    if len(t_values) and (t_values.min() < 0 or t_values.max() > 1):
        raise ValueError("t values must lie in [0, 1]")
    order = np.argsort(t_values, kind="stable")
    cuts = np.ceil(net.N * t_values[order]).astype(np.int64)
    out = np.empty(len(t_values))
    tails: list[int] = []
    word = net.word
    j = 0
    for ci, cut in zip(order, cuts):
        while j < cut:
            x = int(word[j])
            i = bisect_left(tails, x)
            if i == len(tails):
                tails.append(x)
            else:
                tails[i] = x
            j += 1
        out[ci] = len(tails) / net.n
    return out


def lis_dp(seq) -> int:
    """Quadratic DP LIS (strictly increasing) -- independent oracle."""
    seq = list(seq)
    best = [1] * len(seq) if seq else []
    for i in range(len(seq)):
        for k in range(i):
            if seq[k] < seq[i] and best[k] + 1 > best[i]:
                best[i] = best[k] + 1
    return max(best, default=0)


# ---------------------------------------------------------------------------
# Trajectory regularity: Holder and state-dependent Lipschitz checks.
# ---------------------------------------------------------------------------

def _paths(traj: TrajectoryGrid, x) -> np.ndarray:
    """(G+1, m) matrix of scaled paths; x is a particle, a list, or None=all."""
    if x is None:
        return traj.positions
    if np.isscalar(x):
        return traj.positions[:, [int(x) - 1]]
    return traj.positions[:, np.asarray(x, dtype=int) - 1]


def holder_max(traj: TrajectoryGrid, x=None) -> float:
    """max over grid pairs s != t of |Y(t) - Y(s)| / sqrt(|t - s|).

    Limit trajectories satisfy this with constant sqrt(8); finite n adds
    slack.  x=None scans all particles.
    """
    Y = _paths(traj, x)
    G = traj.G
    worst = 0.0
    for d in range(1, G + 1):
        num = np.abs(Y[d:] - Y[:-d]).max()
        worst = max(worst, num / math.sqrt(d / G))
    return float(worst)


def lipschitz_excess(traj: TrajectoryGrid, x=None) -> np.ndarray:
    """Worst excess of |Y(q) - Y(p)| over pi (q-p) sqrt(1 - m^2) per particle.

    m is the minimum of |Y| over grid points of [p, q] (inner approximation
    of the interval infimum; the acceptance slack absorbs grid error).
    A path obeying the speed bound pi*sqrt(1 - y^2) has excess <= 0.
    """
    Y = _paths(traj, x)
    G = traj.G
    absY = np.abs(Y)
    run_min = absY.copy()
    worst = np.full(Y.shape[1], -np.inf)
    for d in range(1, G + 1):
        run_min = np.minimum(run_min[:-1], absY[d:])
        bound = math.pi * (d / G) * np.sqrt(1.0 - run_min ** 2)
        excess = (np.abs(Y[d:] - Y[:-d]) - bound).max(axis=0)
        np.maximum(worst, excess, out=worst)
    return worst


def lipschitz_violation(traj: TrajectoryGrid, x, eps: float = 0.0) -> float:
    """Worst excess for one particle, minus the allowance eps."""
    return float(lipschitz_excess(traj, x)[0] - eps)


# ---------------------------------------------------------------------------
# Edge sine curves.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeSineDeviation:
    particle: int
    eps: float   # distance of the start from the nearest edge
    dev: float   # sup-norm distance to the matching sine curve +-cos(pi t)


def edge_sine_deviation(traj: TrajectoryGrid, x: int, band: float = 1.0):
    """Deviation of an edge particle from its sine curve, or None.

    For a particle starting within ``band`` of the top edge, eps = 1 - Y(0)
    and dev = sup_t |Y(t) - cos(pi t)|; bottom-edge particles compare with
    -cos(pi t).  Particles outside the band are skipped (returns None).
    The limit law forces dev <= sqrt(2 eps).
    """
    Y = traj.particle(x)
    y0 = Y[0]
    ref = np.cos(math.pi * traj.times)
    if y0 >= 0:
        eps = 1.0 - y0
        dev = float(np.abs(Y - ref).max())
    else:
        eps = 1.0 + y0
        dev = float(np.abs(Y + ref).max())
    if eps > band:
        return None
    return EdgeSineDeviation(particle=x, eps=float(eps), dev=dev)


# ---------------------------------------------------------------------------
# Sine fitting (exploratory diagnostics; no acceptance target).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SineFit:
    amplitude: float
    phase: float      # in (-pi, pi]; 0 by convention for the zero signal
    residual: float   # sup-norm of the fit error on the grid


def sine_fit(traj: TrajectoryGrid, x: int) -> SineFit:
    """Least squares Y ~ a sin(pi t) + b cos(pi t) = A sin(pi t + Theta)."""
    Y = traj.particle(x)
    t = traj.times
    basis = np.column_stack([np.sin(math.pi * t), np.cos(math.pi * t)])
    (a, b), *_ = np.linalg.lstsq(basis, Y, rcond=None)
    amp = math.hypot(a, b)
    phase = math.atan2(b, a) if amp > 0 else 0.0
    if phase <= -math.pi:
        phase += 2 * math.pi
    residual = float(np.abs(basis @ np.array([a, b]) - Y).max())
    return SineFit(amplitude=float(amp), phase=float(phase), residual=residual)


# ---------------------------------------------------------------------------
# Rotated half-time paths (exploratory, Figure-4 style).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZPath:
    particle: int
    times: np.ndarray = field(repr=False)    # grid in [0, 1/2]
    values: np.ndarray = field(repr=False)   # complex path
    scaled_dispersion: float                 # n * Var over the grid


def z_functions(net: SortingNetwork, j: int, grid) -> ZPath:
    """Z_j(t) = e^{i pi t} [sigma_G(j, t) + i sigma_G(j, t + 1/2)], t in [0, 1/2]."""
    grid = np.asarray(grid, dtype=float)
    if len(grid) == 0 or grid.min() < 0 or grid.max() > 0.5:
        raise ValueError("grid must be nonempty and within [0, 1/2]")
    n, N = net.n, net.N
    snaps_a = np.floor(N * grid).astype(np.int64)
    snaps_b = np.floor(N * (grid + 0.5)).astype(np.int64)
    order = np.argsort(np.concatenate([snaps_a, snaps_b]), kind="stable")
    snaps = np.concatenate([snaps_a, snaps_b])[order]
    pos = positions_at(net.seq, snaps)[:, j - 1]
    scaled = 2.0 * pos / n - 1.0
    unsort = np.empty_like(order)
    unsort[order] = np.arange(len(order))
    ya = scaled[unsort[: len(grid)]]
    yb = scaled[unsort[len(grid):]]
    z = np.exp(1j * math.pi * grid) * (ya + 1j * yb)
    disp = float(net.n * np.mean(np.abs(z - z.mean()) ** 2))
    return ZPath(particle=j, times=grid, values=z, scaled_dispersion=disp)


# ---------------------------------------------------------------------------
# Batch aggregation / CSV emission.
# ---------------------------------------------------------------------------

def summarize(values) -> dict:
    v = np.asarray(values, dtype=float)
    return {
        "count": int(v.size),
        "mean": float(v.mean()),
        "max": float(v.max()),
        "q50": float(np.quantile(v, 0.5)),
        "q90": float(np.quantile(v, 0.9)),
        "q99": float(np.quantile(v, 0.99)),
    }


def write_stat_csv(f, name: str, rows, columns, meta: str) -> None:
    """One CSV per statistic: '# <meta>' comment line, header, rows."""
    own = isinstance(f, str)
    fh = open(f, "w") if own else f
    try:
        fh.write(f"# {meta}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.10g}" if isinstance(v, float) else str(v) for v in row))
            fh.write("\n")
    finally:
        if own:
            fh.close()
