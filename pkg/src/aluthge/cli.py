"""Command-line interface.

Subcommands: radius, transform, check, verify, report.  The JSON payload is
the only thing written to stdout; human-readable progress goes to stderr,
so the tool composes in pipelines.  Exit codes: 0 success, 1 verification
failures present, 2 bad flags, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import CATALOG, check
from .harness import (
    ExperimentConfig,
    run,
    summary_json_bytes,
    write_slack_csv,
    write_summary,
)
from .linalg import InvalidInputError
from .matjson import dumps_matrix, read_matrix
from .pairs import parse_gauge_spec, parse_pair_spec
from .radii import (
    numerical_radius_ellipse2x2,
    numerical_radius_sampling,
    numerical_radius_sweep,
)
from .report import Tolerances
from .transforms import aluthge_general

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3


def _emit(obj, out_path=None) -> None:
    text = json.dumps(obj, indent=2, allow_nan=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _cmd_radius(args) -> int:
    a = read_matrix(args.input)
    if args.method == "sweep":
        est = numerical_radius_sweep(a, grid=args.grid, refine_tol=args.refine_tol)
    elif args.method == "ellipse":
        est = numerical_radius_ellipse2x2(a)
    else:
        est = numerical_radius_sampling(a, samples=args.samples, seed=args.seed)
    _emit(est.to_json_dict(), args.out)
    return EXIT_OK


def _cmd_transform(args) -> int:
    a = read_matrix(args.input)
    pair = parse_pair_spec(args.pair)
    result = aluthge_general(a, pair)
    text = dumps_matrix(result.transformed) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_CHECK_INPUT_FLAGS = ("a", "b", "c", "d", "x", "y", "s", "t_mat")


def _collect_check_inputs(args, entry):
    """Map CLI matrix flags onto an id's input schema."""
    loaded = {
        name: read_matrix(getattr(args, name))
        for name in _CHECK_INPUT_FLAGS
        if getattr(args, name) is not None
    }
    if entry.id == "spectral_sum":
        order = ("x", "y", "s", "t_mat")
        missing = [f"--{n.replace('_', '-')}" for n in order if n not in loaded]
        if missing:
            raise InvalidInputError(f"{entry.id} needs flags {missing}")
        return [loaded[n] for n in order]
    mats = []
    for name in ("a", "b", "c", "d")[: entry.matrices]:
        if name not in loaded:
            raise InvalidInputError(f"{entry.id} needs --{name}")
        mats.append(loaded[name])
    vecs = []
    for name in ("x", "y")[: entry.vectors]:
        if name not in loaded:
            raise InvalidInputError(f"{entry.id} needs --{name}")
        vecs.append(loaded[name])
    return mats + vecs


def _cmd_check(args) -> int:
    if args.id not in CATALOG:
        raise InvalidInputError(f"unknown inequality id '{args.id}'")
    entry = CATALOG[args.id]
    inputs = _collect_check_inputs(args, entry)
    params = {}
    if args.t is not None:
        params["t"] = args.t
    if args.r is not None:
        params["r"] = args.r
    if args.pair is not None:
        params["pair"] = parse_pair_spec(args.pair)
    if args.gauge is not None:
        params["gauge"] = parse_gauge_spec(args.gauge)
    report = check(args.id, inputs, params or None, variant=args.variant)
    _emit(report.to_json_dict(), args.out)
    return EXIT_OK if report.passed else EXIT_FAILURES


def _cmd_verify(args) -> int:
    if args.config:
        with open(args.config, "r", encoding="ascii") as fh:
            config_obj = json.load(fh)
    else:
        config_obj = {}
    if args.seed is not None:
        config_obj["seed"] = args.seed
    seed = config_obj.pop("seed", None)
    if seed is not None:
        config_obj["base_seed"] = int(seed)
    config = ExperimentConfig.from_dict(config_obj)
    _log(
        f"verify: {len(config.ensembles)} ensembles x {len(config.dims)} dims x "
        f"{config.trials_per_cell} trials, variant={config.variant}"
    )
    summary = run(config, workers=args.workers)
    _log(f"verify: {summary.total_trials} trials in {summary.wall_time_seconds:.1f}s, "
         f"{summary.failure_count} failures")
    if args.out:
        write_summary(args.out, summary)
    else:
        sys.stdout.write(summary_json_bytes(summary).decode("ascii"))
    if args.csv:
        write_slack_csv(args.csv, summary)
    return EXIT_FAILURES if summary.corrected_failures() else EXIT_OK


def _cmd_report(args) -> int:
    with open(args.input, "r", encoding="ascii") as fh:
        summary = json.load(fh)
    per_id = summary.get("per_id", {})
    rows = [
        {"id": id, **stats}
        for id, stats in sorted(per_id.items())
        if stats.get("min_slack") is not None
    ]
    rows.sort(key=lambda r: (r["min_slack"], r["id"]))
    top = rows[: args.top_slack]
    _emit(
        {
            "total_trials": summary.get("total_trials"),
            "failure_count": len(summary.get("failures", [])),
            "top_slack": top,
        },
        args.out,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aluthge",
        description="Generalized Aluthge transforms and numerical radius "
        "inequality verification on dense complex matrices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("radius", help="numerical radius of a matrix JSON file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("sweep", "ellipse", "sampling"), default="sweep")
    p.add_argument("--grid", type=int, default=Tolerances().grid)
    p.add_argument("--refine-tol", dest="refine_tol", type=float, default=Tolerances().refine_tol)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_radius)

    p = sub.add_parser("transform", help="apply a generalized Aluthge transform")
    p.add_argument("--input", required=True)
    p.add_argument("--pair", required=True, help='e.g. "power:0.5", "rational", "exp"')
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_transform)

    p = sub.add_parser("check", help="run one inequality/identity check")
    p.add_argument("--id", required=True, help=", ".join(sorted(CATALOG)))
    p.add_argument("--variant", choices=("corrected", "as_stated"), default="corrected")
    for flag in ("--a", "--b", "--c", "--d", "--x", "--y", "--s"):
        p.add_argument(flag)
    p.add_argument("--t-mat", dest="t_mat", help="fourth matrix of spectral_sum")
    p.add_argument("--t", type=float, help="pair exponent in [0, 1]")
    p.add_argument("--r", type=float, help="gauge power >= 1")
    p.add_argument("--pair", help='function pair spec, e.g. "power:0.5"')
    p.add_argument("--gauge", help='gauge spec, e.g. "gauge:power:2"')
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("verify", help="run a randomized verification experiment")
    p.add_argument("--config", help="JSON file mirroring ExperimentConfig")
    p.add_argument("--seed", type=int, help="override the base seed")
    p.add_argument("--out", help="summary JSON path (default: stdout)")
    p.add_argument("--csv", help="per-id slack quantile CSV path")
    p.add_argument("--workers", type=int, help="process count (default: all cores)")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("report", help="summarize a verify output file")
    p.add_argument("--input", required=True)
    p.add_argument("--top-slack", dest="top_slack", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InvalidInputError as exc:
        _log(f"error: {exc}")
        return EXIT_BAD_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        _log(f"error: {exc}")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
