"""Command-line interface: one subcommand per verification suite.

Exit status is 0 exactly when every check of the requested suite
passes.  `--report` writes the machine-readable payload; `--csv-dir`
additionally exports geodesic traces for the suites that produce them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import geodesics as G
from .sphere import random_horizontal, random_point
from .suites import Config, ConfigError, build_payload, config_from_file, run_suite


def _add_common(sub):
    sub.add_argument("--config", help="flat key = value config file")
    sub.add_argument("--report", help="write the JSON payload to this path")
    sub.add_argument("--csv-dir", help="directory for geodesic trace CSV exports")
    sub.add_argument("--seed", type=int, help="random seed")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crsphere",
        description="verification suites for pseudohermitian geometry on the spheres",
    )
    sub = parser.add_subparsers(dest="suite", required=True)

    p = sub.add_parser("spectrum", help="sublaplacian spectrum fragments")
    p.add_argument("--n", type=int)
    p.add_argument("--degree", type=int)
    _add_common(p)

    p = sub.add_parser("bochner", help="pointwise Bochner-type identity sweep")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--tol", type=float)
    _add_common(p)

    p = sub.add_parser("lemmas", help="divergence, integrated and commutation lemmas")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--tol", type=float)
    _add_common(p)

    p = sub.add_parser("geodesics", help="geodesic integrators and distance checks")
    p.add_argument("--n", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--step-size", dest="step_size", type=float)
    _add_common(p)

    p = sub.add_parser("bound", help="curvature floor and eigenvalue bound")
    p.add_argument("--n", type=int)
    p.add_argument("--degree-max", dest="degree_max", type=int)
    _add_common(p)

    p = sub.add_parser("s3", help="equality-case phenomenology on S^3")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _add_common(p)

    return parser


_OVERRIDE_KEYS = (
    "n", "degree", "degree_max", "trials", "tol", "steps", "step_size",
    "a", "b", "seed",
)


def _config_from_args(args):
    overrides = {}
    for key in _OVERRIDE_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    if args.config:
        config = config_from_file(args.config, overrides)
    else:
        config = Config(**overrides)
    config.suite = args.suite
    return config


def _export_traces(config, csv_dir):
    os.makedirs(csv_dir, exist_ok=True)
    rng = np.random.default_rng(config.seed)
    n = config.n if config.suite != "s3" else 1
    if config.suite == "s3":
        x0 = G.s3_max_point(config.a, config.b)
        from .sphere import horizontal_frame

        v = horizontal_frame(x0).vectors[0]
        start, b = x0, 0.0
    else:
        start = random_point(rng, n)
        v = random_horizontal(rng, start)
        b = 1.0
    conn = G.integrate_connection_geodesic(
        G.GeodesicState(start, v, b), config.steps * config.step_size, config.step_size
    )
    conn.to_csv(os.path.join(csv_dir, "connection_geodesic.csv"))
    hj = G.integrate_hj_geodesic(
        G.cotangent_lift(start, v, b), config.steps * config.step_size, config.step_size
    )
    hj.to_csv(os.path.join(csv_dir, "hamilton_jacobi_geodesic.csv"))
    return ["connection_geodesic.csv", "hamilton_jacobi_geodesic.csv"]


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        config.validate()
    except (ConfigError, TypeError, ValueError) as exc:
        parser.error(str(exc))

    start = time.perf_counter()
    report = run_suite(config)
    elapsed = time.perf_counter() - start

    for check in report.checks:
        status = "PASS" if check.status else "FAIL"
        residual = "" if check.residual is None else "  residual=%.3e" % check.residual
        print("[%s] %s: %s%s" % (status, check.id, check.description, residual))
    print(
        "suite %s: %s (%d checks, %.2fs)"
        % (report.name, "pass" if report.passed else "FAIL", len(report.checks), elapsed)
    )

    if args.csv_dir and config.suite in ("geodesics", "s3"):
        written = _export_traces(config, args.csv_dir)
        print("wrote traces: %s" % ", ".join(written))

    if args.report:
        payload = build_payload([report], config, elapsed)
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
        print("wrote report: %s" % args.report)

    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
