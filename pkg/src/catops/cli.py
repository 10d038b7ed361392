"""Command-line front end.

    catops compute -c config.json            evaluate one configured sweep
    catops figure fig2a -o out/              write figure preset CSV(s)
    catops verify                            closed-form vs oracle grid

Exit codes: 0 ok, 2 config error, 3 numerical/convergence error,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import CatopsError, ConfigError
from . import backend

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ORACLE = 4


def _build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="worker processes for sweep points (default: all cores)",
    )
    parser = argparse.ArgumentParser(
        prog="catops",
        description="Nonclassicality diagnostics of superposed-operation cat states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", parents=[shared],
                               help="run a JSON-configured computation")
    p_compute.add_argument("-c", "--config", required=True, help="path to config JSON")
    p_compute.add_argument(
        "-o", "--output", default=None,
        help="output CSV path (overrides the config's output field)",
    )

    p_figure = sub.add_parser("figure", parents=[shared],
                              help="write dataset CSVs for figure presets")
    p_figure.add_argument(
        "names", nargs="+",
        help="panel (fig2a), group (fig2), or 'all'",
    )
    p_figure.add_argument("-o", "--out-dir", default="figures_csv")

    sub.add_parser("verify", parents=[shared],
                   help="run the closed-form vs oracle equivalence grid")
    return parser


def _cmd_compute(args) -> int:
    from .sweep import OracleMismatch, parse_config, run_compute

    try:
        with open(args.config) as fh:
            doc = json.load(fh)
    except OSError as exc:
        print(f"config error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"config error: {args.config} line {exc.lineno} col {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(doc)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_path = args.output or cfg.output
    try:
        if out_path:
            with open(out_path, "w", newline="") as fh:
                run_compute(cfg, fh, threads=args.threads)
            print(f"wrote {out_path}")
        else:
            run_compute(cfg, sys.stdout, threads=args.threads)
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CatopsError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_figure(args) -> int:
    from .figures import run_figure

    try:
        for name in args.names:
            t0 = time.time()
            paths = run_figure(name, args.out_dir, threads=args.threads)
            names = ", ".join(p.name for p in paths)
            print(f"{name}: wrote {names} ({time.time() - t0:.1f}s)")
    except KeyError as exc:
        print(f"config error: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG
    except CatopsError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_verify(_args) -> int:
    from .crosscheck import run_equivalence_grid

    print(f"kernel backend: {backend.active_backend()}")
    t0 = time.time()

    def progress(done, total):
        if done % 30 == 0 or done == total:
            print(f"  {done}/{total} parameter points", flush=True)

    report = run_equivalence_grid(progress=progress)
    for line in report.lines():
        print(line)
    print(f"elapsed: {time.time() - t0:.1f}s")
    if not report.ok:
        for name, desc, closed, oracle, rel in report.failures[:20]:
            print(f"MISMATCH {name} at {desc}: closed={closed!r} oracle={oracle!r} "
                  f"rel={rel:.3e}", file=sys.stderr)
        print(f"{len(report.failures)} mismatches", file=sys.stderr)
        return EXIT_ORACLE
    print("all closed forms match the oracle")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.threads < 1:
        print("config error: --threads must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    handler = {
        "compute": _cmd_compute,
        "figure": _cmd_figure,
        "verify": _cmd_verify,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
