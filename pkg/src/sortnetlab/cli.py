"""Command-line orchestration: sampling, verification suites, figure data.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 IO error.
All randomness flows from --seed; when absent, an entropy seed is drawn
and printed.  Environment overrides: SORTNETLAB_OUT_DIR, SORTNETLAB_WORKERS.
An optional JSON config (--config) may set flag defaults; flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, figdata, verify
from .rng import Stream, entropy_seed
from .sampler import sample_uniform, write_batch

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _resolve_seed(args) -> int:
    if args.seed is None:
        seed = entropy_seed()
        print(f"seed={seed} (drawn from entropy; pass --seed to reproduce)")
        return seed
    return args.seed


def _out_dir(args) -> str:
    return args.out or os.environ.get("SORTNETLAB_OUT_DIR", ".")


def cmd_sample(args) -> int:
    seed = _resolve_seed(args)
    out = _out_dir(args)
    try:
        manifest = write_batch(out, n=args.n, count=args.count, seed=seed)
    except OSError as e:
        print(f"IO error writing to {out}: {e}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps({
        "out_dir": out, "n": manifest.n, "count": manifest.count,
        "seed": manifest.seed, "files": len(manifest.files),
        "version": __version__,
    }))
    return EXIT_PASS


def cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    fn = verify.SUITE_FUNCS[args.suite]
    kwargs = {"seed": seed, "workers": args.workers}
    if args.n is not None:
        kwargs["n"] = args.n
    if args.samples is not None and args.suite == "uniformity":
        kwargs["samples"] = args.samples
    if args.count is not None and args.suite != "uniformity":
        kwargs["count"] = args.count
    report = fn(**kwargs)
    report["version"] = __version__
    print(json.dumps(report, indent=2))
    return EXIT_PASS if report["pass"] else EXIT_CHECK_FAILURE


def cmd_figures(args) -> int:
    seed = _resolve_seed(args)
    out = _out_dir(args)
    net = sample_uniform(args.n, Stream(seed))
    try:
        if args.fig == "fig1":
            manifest = figdata.fig1_bundle(out, net, t=args.t, seed=seed)
        elif args.fig == "fig2":
            particles = args.particles or [
                int(p) for p in np.linspace(1, args.n, 10).round()
            ]
            manifest = figdata.fig2_bundle(out, net, particles, G=args.grid, seed=seed)
        elif args.fig == "fig3":
            t_values = args.t_list or [round(0.1 * i, 1) for i in range(11)]
            manifest = figdata.fig3_bundle(out, net, t_values, seed=seed)
        else:  # fig4
            particles = args.particles or [
                int(p) for p in np.linspace(1, args.n, 20).round()
            ]
            manifest = figdata.fig4_bundle(out, net, particles, G=args.grid, seed=seed)
    except OSError as e:
        print(f"IO error writing to {out}: {e}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps({"out_dir": out, "figure": manifest["figure"],
                      "files": manifest["files"], "version": __version__}))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sortnetlab",
        description="Monte Carlo laboratory for uniform random sorting networks",
    )
    ap.add_argument("--config", help="JSON file with flag defaults (flags win)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument(
            "--workers", type=int,
            default=int(os.environ.get("SORTNETLAB_WORKERS", "1")),
        )

    p = sub.add_parser("sample", help="write a batch of uniform networks")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("--suite", required=True, choices=verify.SUITES)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--count", type=int, default=None, help="number of networks")
    p.add_argument("--samples", type=int, default=None, help="uniformity draws")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="emit CSV bundles for figure scripts")
    common(p)
    p.add_argument("--fig", required=True, choices=["fig1", "fig2", "fig3", "fig4"])
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--t-list", type=float, nargs="*", default=None)
    p.add_argument("--particles", type=int, nargs="*", default=None)
    p.add_argument("--grid", type=int, default=200)
    p.set_defaults(func=cmd_figures)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv):
    """Pre-scan --config and fold its values in as parser defaults."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    with open(argv[i + 1]) as fh:
        cfg = json.load(fh)
    ap.set_defaults(**cfg)
    # Subparser defaults shadow parser-level ones, so push them down too.
    for action in ap._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                sp.set_defaults(**cfg)
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        argv = _apply_config(ap, argv)
    except (OSError, json.JSONDecodeError) as e:
        print(f"bad config: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
