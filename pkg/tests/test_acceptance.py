"""Acceptance gate: one test per quantitative criterion, fixed seeds.

Each test prints a single ``ACCEPT PASS|FAIL`` line (visible under
``pytest -s``) stating the measured value, target and tolerance, then
asserts the verdict.  Expensive ensembles are computed once per session:
the 20-network n=500 ensemble is shared by the Holder, Lipschitz, ellipse
and LIS criteria, and the n=2000 pooled-speed run is shared by the
support and pairwise-gap criteria.
"""

import sys
import time

import pytest

from sortnetlab import verify


def _emit(name: str, report: dict) -> None:
    detail = "; ".join(
        f"{c['statistic']}={c['value']:.6g} "
        f"(target {c['target']:.6g}, tol {c['tolerance']:.6g}, {c['kind']})"
        for c in report["checks"]
    )
    verdict = "PASS" if report["pass"] else "FAIL"
    print(f"ACCEPT {verdict} {name}: {detail} [{report['elapsed_s']}s]",
          file=sys.stderr, flush=True)
    assert report["pass"], f"{name}: {detail}"


@pytest.fixture(scope="session")
def ensemble500():
    return verify.ensemble(500, 20, seed=42)


@pytest.fixture(scope="session")
def speed_report():
    return verify.suite_speed_support(seed=45)


def test_exactness_sampling_and_roundtrips():
    # warm the compiled kernels first: the 2-minute budget is for the
    # audit itself, not one-time JIT compilation of a cold cache
    from sortnetlab.core import is_sorting_network
    from sortnetlab.rng import Stream
    from sortnetlab.sampler import sample_uniform, sample_words

    is_sorting_network(sample_uniform(10, Stream(0)).seq)
    sample_words(3, 1, seed=0)
    t0 = time.time()
    report = verify.check_exactness(seed=40)
    _emit("exactness", report)
    elapsed = time.time() - t0
    assert elapsed < 120.0, f"exactness audit took {elapsed:.1f}s (budget 120s)"


def test_uniformity_chi_square_and_3sigma():
    _emit("uniformity", verify.suite_uniformity(seed=41))


def test_local_swap_rates():
    _emit("local-rates", verify.suite_local_rates(seed=44))


def _subset(report, statistics):
    sub = {
        **report,
        "checks": [c for c in report["checks"] if c["statistic"] in statistics],
    }
    sub["pass"] = all(c["pass"] for c in sub["checks"])
    return sub


def test_speed_support_and_symmetry(speed_report):
    _emit("speed-support", _subset(speed_report, {
        "speed_support_fraction", "speed_symmetry_ks_pvalue"}))


def test_pairwise_speed_gap(speed_report):
    _emit("speed-gap", _subset(speed_report, {"mean_abs_speed_gap"}))


def test_swap_rate_vs_speed_binwise(speed_report):
    _emit("swap-rate-binwise", _subset(speed_report,
                                       {"swap_rate_binwise_max_rel_dev"}))


def test_lis_profile(ensemble500):
    _emit("lis", verify.suite_lis(seed=42, nets=ensemble500))


def test_ellipse_support(ensemble500):
    _emit("ellipse", verify.suite_ellipse(seed=42, nets=ensemble500))


def test_holder_half_bound(ensemble500):
    _emit("holder", verify.suite_holder(seed=42, nets=ensemble500))


def test_lipschitz_excess(ensemble500):
    _emit("lipschitz", verify.suite_lipschitz(seed=42, nets=ensemble500))


def test_edge_sine_trajectories():
    _emit("edge-sine", verify.suite_edge_sine(seed=43))


def test_local_rate_trend_across_n():
    # the limit law itself is out of reach; check the error shrinks with n
    _emit("local-rate-trend", verify.trend_local_rates(seed=46))
