"""Finite-window approximations to the local limit of sorting networks.

A window tracks the particles that start within ``w`` positions of a bulk
center ``k``.  Local time is the global swap index scaled by
``sqrt(1 - alpha^2) / n`` where ``alpha = 2k/n - 1``, so windows at
different depths become comparable (the semicircle rescale).  From the
relabeled step paths we estimate per-particle swap counts Q, per-location
swap counts W, average speeds, the pooled speed distribution, its mean
pairwise gap, and line-crossing rates.

Event times are kept as exact integer swap indices; the irrational time
scale is applied only when reporting, so event ordering never suffers
float drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .core import SortingNetwork

SPEED_BIN_WIDTH = 0.25


class WindowError(ValueError):
    """Window touches the boundary or a query leaves its validity range."""


@njit(cache=True)
def _window_events(n, word, cutoff, k, lo, hi):
    """Simulate the first ``cutoff`` swaps, recording events of tracked particles.

    Tracked particles are those with initial position offset (from k) in
    [lo, hi].  Returns (ev_index, ev_label, ev_newpos, final_offsets) where
    ev_index is the 1-based swap index of each event, ev_label the particle
    offset label, ev_newpos its position offset after the swap, and
    final_offsets the position offset of each tracked particle at cutoff.
    """
    arr = np.arange(1, n + 1, dtype=np.int32)   # position -> particle
    pos = np.arange(1, n + 1, dtype=np.int32)   # particle -> position
    label = np.full(n + 1, -(10 ** 9), dtype=np.int64)  # particle -> offset label
    m = hi - lo + 1
    for x in range(lo, hi + 1):
        label[k + x] = x
    cap = 2 * cutoff
    ev_index = np.empty(cap, dtype=np.int64)
    ev_label = np.empty(cap, dtype=np.int64)
    ev_newpos = np.empty(cap, dtype=np.int64)
    ne = 0
    for j in range(cutoff):
        p = word[j]
        a = arr[p - 1]
        b = arr[p]
        arr[p - 1] = b
        arr[p] = a
        pos[a - 1] = p + 1
        pos[b - 1] = p
        la = label[a]
        if la > -(10 ** 9):
            ev_index[ne] = j + 1
            ev_label[ne] = la
            ev_newpos[ne] = p + 1 - k
            ne += 1
        lb = label[b]
        if lb > -(10 ** 9):
            ev_index[ne] = j + 1
            ev_label[ne] = lb
            ev_newpos[ne] = p - k
            ne += 1
    final = np.empty(m, dtype=np.int64)
    for x in range(lo, hi + 1):
        final[x - lo] = pos[k + x - 1] - k
    return ev_index[:ne], ev_label[:ne], ev_newpos[:ne], final


@dataclass(frozen=True)
class LocalWindow:
    """Relabeled step paths of the particles near a bulk center."""

    n: int
    k: int
    w: int
    horizon: float                       # local-time horizon T
    alpha: float
    scale: float                         # global swaps per unit local time
    cutoff: int                          # floor(T * scale)
    events: dict = field(repr=False)     # label -> (indices, new positions)
    word: np.ndarray = field(repr=False)

    @property
    def labels(self) -> range:
        return range(-self.w, self.w + 1)

    def _check_t(self, t: float) -> int:
        if not 0 <= t <= self.horizon + 1e-12:
            raise WindowError(f"t={t} outside the window horizon {self.horizon}")
        return int(math.floor(t * self.scale))

    def position(self, x: int, t: float) -> int:
        """U(x, t): position offset of the particle labeled x at local time t."""
        idx, newpos = self.events[x]
        cut = self._check_t(t)
        i = np.searchsorted(idx, cut, side="right")
        return int(newpos[i - 1]) if i else x

    def event_times(self, x: int) -> np.ndarray:
        """Local jump times of particle x (floats, reporting only)."""
        return self.events[x][0] / self.scale


def guard_width(T: float, alpha: float) -> int:
    """Boundary margin so tracked particles cannot feel the edge within T."""
    return math.ceil(T * (math.pi + 1.0) / math.sqrt(1.0 - alpha * alpha))


def extract_window(net: SortingNetwork, k: int, w: int, T: float) -> LocalWindow:
    """Track particles starting at positions k-w .. k+w up to local time T."""
    n = net.n
    alpha = 2.0 * k / n - 1.0
    root = math.sqrt(max(0.0, 1.0 - alpha * alpha))
    if root == 0.0:
        raise WindowError("center must be strictly inside (0, n)")
    if T > (n - 1) / (2.0 * root) + 1e-12:
        raise WindowError(f"horizon {T} exceeds the constancy cutoff {(n - 1) / (2 * root):.3g}")
    g = guard_width(T, alpha)
    if k - (w + g) < 1 or k + (w + g) > n:
        raise WindowError(
            f"window [{k - w}, {k + w}] with guard {g} touches the boundary of [1, {n}]"
        )
    scale = n / root
    cutoff = int(math.floor(T * scale))
    ev_index, ev_label, ev_newpos, final = _window_events(
        n, net.word, cutoff, k, -w, w
    )
    events = {}
    for x in range(-w, w + 1):
        sel = ev_label == x
        events[x] = (ev_index[sel], ev_newpos[sel])
    return LocalWindow(
        n=n, k=k, w=w, horizon=T, alpha=alpha, scale=scale, cutoff=cutoff,
        events=events, word=net.word,
    )


def swap_count_q(win: LocalWindow, x: int, t: float) -> int:
    """Q(x, t): number of jumps of particle x in [0, t]."""
    idx, _ = win.events[x]
    cut = win._check_t(t)
    return int(np.searchsorted(idx, cut, side="right"))


def swap_count_w(win: LocalWindow, i: int, t: float) -> int:
    """W(i, t): number of swaps at location i (between offsets i and i+1)."""
    if not -win.w <= i < win.w:
        raise WindowError(f"location {i} not strictly inside the window")
    cut = win._check_t(t)
    return int(np.count_nonzero(win.word[:cut] == win.k + i))


@dataclass(frozen=True)
class SpeedSample:
    x: int
    t: float
    speed: float


def speed_estimates(win: LocalWindow, t_list) -> list[SpeedSample]:
    """S(x, t) = (U(x, t) - U(x, 0)) / t for every tracked particle and t."""
    out = []
    for t in t_list:
        if not 0 < t <= win.horizon + 1e-12:
            raise WindowError(f"speed time {t} outside (0, T]")
        for x in win.labels:
            out.append(SpeedSample(x=x, t=t, speed=(win.position(x, t) - x) / t))
    return out


@dataclass
class EmpiricalSpeedDist:
    """Pooled speed samples across windows/networks."""

    speeds: np.ndarray

    def __post_init__(self):
        self.speeds = np.asarray(self.speeds, dtype=float)

    @classmethod
    def from_samples(cls, samples) -> "EmpiricalSpeedDist":
        return cls(np.array([s.speed for s in samples]))

    def histogram(self, bins=50, lo=-5.0, hi=5.0):
        h, edges = np.histogram(self.speeds, bins=bins, range=(lo, hi))
        return h / max(1, self.speeds.size), edges

    def abs_integral(self, s: float) -> float:
        """integral |y - s| d(mu-hat)(y) under the pooled empirical measure."""
        return float(np.mean(np.abs(self.speeds - s)))


def mean_abs_speed_gap(dist: EmpiricalSpeedDist) -> float:
    """U-statistic mean of |s_i - s_j| over unordered pairs.

    Computed from the sorted sample in O(m log m): the pair sum equals
    sum_j s_(j) (2j - m + 1) over 0-based sorted order.
    """
    s = np.sort(dist.speeds)
    m = s.size
    if m < 2:
        raise ValueError("need at least 2 pooled samples")
    coef = 2.0 * np.arange(m) - (m - 1)
    return float((coef * s).sum() / (m * (m - 1) / 2.0))


def swap_rate_vs_speed(windows, t: float, dist: EmpiricalSpeedDist | None = None,
                       bin_width: float = SPEED_BIN_WIDTH) -> list[dict]:
    """Per-speed-bin comparison of Q(x,t)/t against integral |y - s| d(mu-hat).

    Pools all particles of the given windows; empty bins are skipped.
    Each row carries a normal-approximation CI half-width for the bin mean.
    """
    speeds, rates = [], []
    for win in windows:
        for x in win.labels:
            speeds.append((win.position(x, t) - x) / t)
            rates.append(swap_count_q(win, x, t) / t)
    speeds = np.asarray(speeds)
    rates = np.asarray(rates)
    if dist is None:
        dist = EmpiricalSpeedDist(speeds)
    lo = math.floor(speeds.min() / bin_width)
    hi = math.floor(speeds.max() / bin_width)
    rows = []
    for b in range(lo, hi + 1):
        sel = (speeds >= b * bin_width) & (speeds < (b + 1) * bin_width)
        if not sel.any():
            rows.append({"bin_center": (b + 0.5) * bin_width, "count": 0,
                         "mean_rate": None, "integral": None, "ci": None})
            continue
        center = (b + 0.5) * bin_width
        mean_rate = float(rates[sel].mean())
        ci = 1.96 * float(rates[sel].std(ddof=1)) / math.sqrt(sel.sum()) if sel.sum() > 1 else float("inf")
        rows.append({
            "bin_center": center,
            "count": int(sel.sum()),
            "mean_rate": mean_rate,
            "integral": dist.abs_integral(center),
            "ci": ci,
        })
    return rows


def line_crossings(win: LocalWindow, c: float, d: float, t: float) -> tuple[int, int]:
    """Net up/down crossings of the line L(s) = c*s + d by tracked particles.

    Up: U(x, 0) <= L(0) and U(x, t) > L(t); down is symmetric.  The line
    must stay inside the window over [0, t].
    """
    for s in (0.0, t):
        if abs(c * s + d) > win.w:
            raise WindowError("line exits the window over [0, t]")
    l0, lt = d, c * t + d
    up = down = 0
    for x in win.labels:
        u0, ut = x, win.position(x, t)
        if u0 <= l0 and ut > lt:
            up += 1
        elif u0 > l0 and ut <= lt:
            down += 1
    return up, down


def window_event_log_rows(win: LocalWindow, window_id: str):
    """Rows for the event-log CSV, with exact integer local-time numerators.

    Local time of an event is index / scale; the scale (= n / sqrt(1-alpha^2),
    irrational in general) is reported once per window in the metadata, so
    rows stay exact: (window_id, particle, local_time_num, local_time_den,
    new_position) with num = swap index and den = the window scale.
    """
    for x in win.labels:
        idx, newpos = win.events[x]
        for i, p in zip(idx, newpos):
            yield (window_id, int(x), int(i), win.scale, int(p))
