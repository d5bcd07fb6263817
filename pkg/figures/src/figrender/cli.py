"""Command line: figrender <bundle_dir> --out image.png"""

from __future__ import annotations

import argparse
import sys

from .render import BundleError, SchemaVersionError, render_figure


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="figrender",
        description="render a sortnetlab figure bundle to an image",
    )
    ap.add_argument("bundle_dir", help="directory containing bundle.json")
    ap.add_argument("--out", required=True, help="output image path (.png/.svg)")
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        path = render_figure(args.bundle_dir, args.out)
    except SchemaVersionError as e:
        print(f"schema version error: {e}", file=sys.stderr)
        return 2
    except BundleError as e:
        print(f"bundle error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"IO error: {e}", file=sys.stderr)
        return 3
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
