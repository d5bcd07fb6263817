"""Verification suites: Monte Carlo checks of the quantitative laws.

Each suite samples networks at desk scale, computes a statistic whose
limit value is known exactly, and returns a machine-readable verdict:
a list of checks ``{statistic, value, target, tolerance, kind, pass}``.
``kind`` is how the verdict is decided: "abs" (|value - target| <= tol),
"upper" (value <= target + tol) or "lower" (value >= target - tol).
Tolerances are fixed desk-scale allowances around exact limit laws.

The CLI ``verify`` command and the acceptance test suite both run these.
"""

from __future__ import annotations

import math
import time

import numpy as np
from scipy import stats as sps

from . import local, stats
from .core import (SortingNetwork, enumerate_all, global_trajectories,
                   is_sorting_network)
from .eg import eg_insert, eg_inverse
from .rng import Stream
from .sampler import sample_batch, sample_uniform, sample_words
from .tableau import StaircaseShape, hook_walk_sample

SUITES = (
    "uniformity", "holder", "lipschitz", "ellipse", "lis",
    "edge-sine", "local-rates", "speed-support",
)

SQRT8 = math.sqrt(8.0)
EIGHT_OVER_PI = 8.0 / math.pi
FOUR_OVER_PI = 4.0 / math.pi


def _check(statistic, value, target, tolerance, kind="abs"):
    if kind == "abs":
        ok = abs(value - target) <= tolerance
    elif kind == "upper":
        ok = value <= target + tolerance
    elif kind == "lower":
        ok = value >= target - tolerance
    else:
        raise ValueError(kind)
    return {
        "statistic": statistic,
        "value": float(value),
        "target": float(target),
        "tolerance": float(tolerance),
        "kind": kind,
        "pass": bool(ok),
    }


def _report(suite, seed, params, checks, t0):
    return {
        "suite": suite,
        "seed": seed,
        "params": params,
        "elapsed_s": round(time.time() - t0, 3),
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def ensemble(n: int, count: int, seed: int, workers: int = 1) -> list[SortingNetwork]:
    return sample_batch(n, count, seed, workers=workers)


# ---------------------------------------------------------------------------

def suite_uniformity(seed: int = 41, n: int = 4, samples: int = 32_000,
                     samples3: int = 10_000, workers: int = 1):
    """Chi-square uniformity over the enumerated network set; 3-sigma at n=3."""
    t0 = time.time()
    nets = enumerate_all(n)
    index = {net.word.tobytes(): i for i, net in enumerate(nets)}
    counts = np.zeros(len(nets), dtype=np.int64)
    for row in sample_words(n, samples, seed):
        counts[index[row.tobytes()]] += 1
    pval = float(sps.chisquare(counts).pvalue)
    checks = [_check(f"chi_square_pvalue_n{n}", pval, 0.001, 0.0, kind="lower")]

    # n=3: both networks within 3 sigma of probability 1/2
    words3 = sample_words(3, samples3, seed + 1)
    c121 = int(np.count_nonzero(words3[:, 0] == 1))
    sigma = math.sqrt(samples3 * 0.25)
    checks.append(
        _check("n3_count_121", c121, samples3 / 2, 3 * sigma, kind="abs")
    )
    return _report("uniformity", seed, {"n": n, "samples": samples, "samples3": samples3},
                   checks, t0)


def suite_holder(seed: int = 42, n: int = 500, count: int = 20, G: int = 100,
                 workers: int = 1, nets=None):
    """Max grid Holder-1/2 ratio over all particles <= sqrt(8) + 0.5."""
    t0 = time.time()
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    worst = max(stats.holder_max(global_trajectories(net, G)) for net in nets)
    checks = [_check("max_holder_ratio", worst, SQRT8, 0.5, kind="upper")]
    return _report("holder", seed, {"n": n, "count": count, "G": G}, checks, t0)


def suite_lipschitz(seed: int = 42, n: int = 500, count: int = 20, G: int = 100,
                    workers: int = 1, nets=None):
    """Mean (over particles) worst excess of the pi*sqrt(1-m^2) bound <= 0.15."""
    t0 = time.time()
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    means = [
        float(stats.lipschitz_excess(global_trajectories(net, G)).mean())
        for net in nets
    ]
    checks = [_check("mean_worst_lipschitz_excess", float(np.mean(means)), 0.0,
                     0.15, kind="upper")]
    return _report("lipschitz", seed, {"n": n, "count": count, "G": G}, checks, t0)


def suite_ellipse(seed: int = 42, n: int = 500, count: int = 20,
                  t_values=(0.2, 0.5, 0.8), margin: float = 0.05,
                  workers: int = 1, nets=None):
    """Average fraction of eta_t points outside the t-ellipse (+margin) <= 1%."""
    t0 = time.time()
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    checks = []
    for t in t_values:
        fracs = [stats.ellipse_outside_fraction(stats.eta_t(net, t), margin)
                 for net in nets]
        checks.append(_check(f"ellipse_outside_fraction_t{t}", float(np.mean(fracs)),
                             0.0, 0.01, kind="upper"))
    return _report("ellipse", seed, {"n": n, "count": count, "margin": margin,
                                     "t_values": list(t_values)}, checks, t0)


def suite_lis(seed: int = 42, n: int = 500, count: int = 20,
              t_values=(0.25, 0.5, 1.0), workers: int = 1, nets=None):
    """|L_n(t)/n - sqrt(t(2-t))| <= 0.05 for every network and t."""
    t0 = time.time()
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    profiles = np.array([stats.lis_prefix_profile(net, t_values) for net in nets])
    checks = []
    for i, t in enumerate(t_values):
        target = math.sqrt(t * (2.0 - t))
        dev = float(np.abs(profiles[:, i] - target).max())
        checks.append(_check(f"lis_profile_max_dev_t{t}", dev, 0.0, 0.05,
                             kind="upper"))
    return _report("lis", seed, {"n": n, "count": count, "t_values": list(t_values)},
                   checks, t0)


def suite_edge_sine(seed: int = 43, n: int = 1000, count: int = 5, G: int = 200,
                    band: float = 0.05, workers: int = 1, nets=None):
    """dev <= sqrt(2 eps) + 0.1 for >= 95% of particles starting in the band."""
    t0 = time.time()
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    good = total = 0
    for net in nets:
        traj = global_trajectories(net, G)
        for x in range(1, n + 1):
            res = stats.edge_sine_deviation(traj, x, band=band)
            if res is None:
                continue
            total += 1
            if res.dev <= math.sqrt(2.0 * res.eps) + 0.1:
                good += 1
    frac = good / total if total else 0.0
    checks = [_check("edge_sine_within_bound_fraction", frac, 0.95, 0.0,
                     kind="lower")]
    return _report("edge-sine", seed, {"n": n, "count": count, "G": G, "band": band,
                                       "particles": total}, checks, t0)


def suite_local_rates(seed: int = 44, n: int = 600, count: int = 200,
                      t: float = 1.0, w: int = 20, workers: int = 1, nets=None):
    """Mean swap counts at a bulk center: Q -> 8t/pi per particle, W -> 4t/pi."""
    t0 = time.time()
    k = n // 2
    q_vals, w_vals = [], []
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    for net in nets:
        win = local.extract_window(net, k=k, w=w, T=t)
        for x in win.labels:
            q_vals.append(local.swap_count_q(win, x, t))
        w_vals.append(local.swap_count_w(win, 0, t))
    q_mean = float(np.mean(q_vals))
    w_mean = float(np.mean(w_vals))
    checks = [
        _check("mean_Q_per_particle", q_mean, EIGHT_OVER_PI * t,
               0.05 * EIGHT_OVER_PI * t, kind="abs"),
        _check("mean_W_at_center", w_mean, FOUR_OVER_PI * t,
               0.05 * FOUR_OVER_PI * t, kind="abs"),
    ]
    return _report("local-rates", seed, {"n": n, "count": count, "t": t, "w": w,
                                         "k": k}, checks, t0)


def pooled_speeds(nets, t: float, centers, w: int):
    """Extract the windows and the pooled speed distribution they induce."""
    windows, samples = [], []
    for net in nets:
        for k in centers:
            win = local.extract_window(net, k=k, w=w, T=t)
            windows.append(win)
            samples.extend(local.speed_estimates(win, [t]))
    return local.EmpiricalSpeedDist.from_samples(samples), windows


def suite_speed_support(seed: int = 45, n: int = 2000, count: int = 4,
                        t: float = 20.0, w: int = 250, centers=None,
                        min_bin: int = 50, workers: int = 1, nets=None):
    """Pooled speeds: support within [-pi, pi] (+0.5), symmetry, mean |X - X'|,
    and binwise agreement of the swap rate Q/t with integral |y - s| d(mu-hat)."""
    t0 = time.time()
    if centers is None:
        centers = (int(0.3 * n), n // 2, int(0.7 * n))
    nets = nets if nets is not None else ensemble(n, count, seed, workers)
    dist, windows = pooled_speeds(nets, t, centers, w)
    s = dist.speeds
    in_range = np.mean(np.abs(s) <= math.pi + 0.5)
    ks = sps.ks_2samp(s, -s)
    gap = local.mean_abs_speed_gap(dist)
    rows = local.swap_rate_vs_speed(windows, t, dist)
    rel_devs = [
        abs(r["mean_rate"] - r["integral"]) / r["integral"]
        for r in rows
        if r["count"] >= min_bin and r["integral"]
    ]
    checks = [
        _check("speed_support_fraction", float(in_range), 0.99, 0.0, kind="lower"),
        _check("speed_symmetry_ks_pvalue", float(ks.pvalue), 0.001, 0.0,
               kind="lower"),
        _check("mean_abs_speed_gap", gap, EIGHT_OVER_PI, 0.10 * EIGHT_OVER_PI,
               kind="abs"),
        _check("swap_rate_binwise_max_rel_dev", float(max(rel_devs)), 0.0, 0.15,
               kind="upper"),
    ]
    return _report("speed-support", seed,
                   {"n": n, "count": count, "t": t, "w": w,
                    "centers": list(centers), "pooled": int(s.size),
                    "rate_bins": len(rel_devs)}, checks, t0)


def trend_local_rates(seed: int = 46, ns=(200, 600, 2000), counts=(60, 30, 5),
                      t: float = 1.0, w: int = 20, workers: int = 1):
    """Bulk swap-rate errors shrink (within CIs) as n grows.

    For each n, |mean Q - 8t/pi| over per-network means; the error at the
    next n must not exceed the previous one by more than the combined
    normal-approximation CI slack.
    """
    t0 = time.time()
    errs, ses = [], []
    for n, count in zip(ns, counts):
        per_net = []
        for net in ensemble(n, count, seed + n, workers):
            win = local.extract_window(net, k=n // 2, w=w, T=t)
            per_net.append(float(np.mean(
                [local.swap_count_q(win, x, t) for x in win.labels]
            )))
        per_net = np.asarray(per_net)
        errs.append(abs(float(per_net.mean()) - EIGHT_OVER_PI * t))
        ses.append(float(per_net.std(ddof=1)) / math.sqrt(len(per_net)))
    checks = []
    for i in range(1, len(ns)):
        slack = 1.96 * (ses[i - 1] + ses[i])
        checks.append(_check(
            f"q_error_trend_n{ns[i - 1]}_to_n{ns[i]}",
            errs[i], errs[i - 1], slack, kind="upper",
        ))
    return _report("local-rate-trend", seed,
                   {"ns": list(ns), "counts": list(counts), "t": t, "w": w,
                    "errors": errs, "std_errors": ses}, checks, t0)


# ---------------------------------------------------------------------------

def check_exactness(seed: int = 40, big_ns=(10, 50, 200, 600, 2000),
                    random_roundtrips: int = 1000):
    """Exactness audit: every sample is a network; EG round trips hold.

    Exhaustive round trip for n <= 5; ``random_roundtrips`` random tableaux
    at n in {10, 50}; one sampled network per n in big_ns validated.
    """
    t0 = time.time()
    checks = []
    from .tableau import enumerate_syt
    bad = 0
    for n in (2, 3, 4, 5):
        for q in enumerate_syt(StaircaseShape(n)):
            w = eg_inverse(q)
            if not is_sorting_network(w) or eg_insert(w)[1] != q:
                bad += 1
    checks.append(_check("exhaustive_roundtrip_failures_n_le_5", bad, 0, 0))
    for n in (10, 50):
        bad = 0
        for i in range(random_roundtrips):
            q = hook_walk_sample(StaircaseShape(n), Stream(seed, i))
            w = eg_inverse(q)
            if not is_sorting_network(w) or eg_insert(w)[1] != q:
                bad += 1
        checks.append(_check(f"random_roundtrip_failures_n{n}", bad, 0, 0))
    bad = 0
    for n in big_ns:
        net = sample_uniform(n, Stream(seed, n))
        if not is_sorting_network(net.seq):
            bad += 1
    checks.append(_check("sampled_network_validation_failures", bad, 0, 0))
    return _report("exactness", seed, {"big_ns": list(big_ns),
                                       "random_roundtrips": random_roundtrips},
                   checks, t0)


SUITE_FUNCS = {
    "uniformity": suite_uniformity,
    "holder": suite_holder,
    "lipschitz": suite_lipschitz,
    "ellipse": suite_ellipse,
    "lis": suite_lis,
    "edge-sine": suite_edge_sine,
    "local-rates": suite_local_rates,
    "speed-support": suite_speed_support,
}
