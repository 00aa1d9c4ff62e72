"""Command-line front end.

Subcommands: `region` (export the region geometry as JSON or a CSV
boundary polyline), `check` (membership verdict for one pair), `minimize`
(weighted-sum or minimax optimum, optionally verified against the grid
oracle) and `schedule` (synthesize the achieving transmission schedule).

Exit codes: 0 success/member, 1 non-member or infeasible pair, 2 invalid
input, 3 oracle verification failed.  All JSON output carries a
schema_version field and numbers rounded to 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .constrained import constrained_contains
from .ctregion import (
    boundary_polyline,
    build_region,
    classify_case,
    ct_query,
    ct_slacks,
    outer_bound,
)
from .oracle import GridSpec, default_grid, oracle_minimax, oracle_weighted_min
from .optimize import minimax, minimize_weighted_sum
from .schedule import synthesize, validate
from .types import (
    ChannelConfig,
    CompletionTimePair,
    InfeasibleError,
    TrafficLoad,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NON_MEMBER = 1
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3

_DEFAULTS: dict[str, Any] = {
    "db": False,
    "tol": 1e-9,
    "grid": 2001,
    "bbox_scale": 4.0,
}
_REQUIRED = ("p1", "p2", "tau1", "tau2")


def r12(x: float) -> float:
    """Round to 12 significant digits for stable serialized output."""
    return float(f"{float(x):.12g}")


class _CliError(Exception):
    """Invalid scenario or arguments; message names the offending field."""


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _resolve_settings(args)
        cfg, load = _scenario(settings)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.handler(args, settings, cfg, load)
    except InfeasibleError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_NON_MEMBER
    except ValueError as err:
        # e.g. an ill-conditioned d1/d2 ratio rejected by the domain types
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    sys.exit(main())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macct",
        description=(
            "Completion-time regions, optimal trade-offs and schedules for "
            "the two-user Gaussian multi-access channel."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH", help="JSON file with key = flag name")
    common.add_argument("--p1", type=float, help="receive power of user 1 (linear SNR)")
    common.add_argument("--p2", type=float, help="receive power of user 2 (linear SNR)")
    common.add_argument("--db", action="store_true", default=None,
                        help="interpret --p1/--p2 as dB")
    common.add_argument("--tau1", type=float, help="bit load of user 1 per source unit")
    common.add_argument("--tau2", type=float, help="bit load of user 2 per source unit")
    common.add_argument("--tol", type=float, help="membership tolerance (default 1e-9)")

    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser("region", parents=[common], help="export the region geometry")
    fmt = region.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV boundary polyline")
    region.add_argument("--bbox-scale", type=float, dest="bbox_scale",
                        help="ray truncation box, in units of the minimax value (default 4)")
    region.set_defaults(handler=_cmd_region)

    check = sub.add_parser("check", parents=[common], help="membership verdict for one pair")
    check.add_argument("d1", type=float)
    check.add_argument("d2", type=float)
    check.set_defaults(handler=_cmd_check)

    minimize = sub.add_parser("minimize", parents=[common], help="optimal completion times")
    target = minimize.add_mutually_exclusive_group(required=True)
    target.add_argument("--weight", type=float, help="weight w of d1 in w*d1 + (1-w)*d2")
    target.add_argument("--minimax", action="store_true", help="minimize max(d1, d2)")
    minimize.add_argument("--verify", action="store_true",
                          help="also run the grid oracle and report its bracket")
    minimize.add_argument("--grid", type=int, help="oracle resolution per axis (default 2001)")
    minimize.set_defaults(handler=_cmd_minimize)

    schedule = sub.add_parser("schedule", parents=[common],
                              help="synthesize a schedule achieving a pair")
    schedule.add_argument("d1", type=float)
    schedule.add_argument("d2", type=float)
    schedule.set_defaults(handler=_cmd_schedule)
    return parser


def _resolve_settings(args: argparse.Namespace) -> dict[str, Any]:
    """Merge defaults, scenario file and explicit flags (flags win)."""
    settings = dict(_DEFAULTS)
    if args.scenario:
        try:
            with open(args.scenario, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise _CliError(f"scenario file {args.scenario}: {err}") from err
        if not isinstance(file_values, dict):
            raise _CliError(f"scenario file {args.scenario}: expected a JSON object")
        for key, value in file_values.items():
            name = key.replace("-", "_")
            if name not in (*_REQUIRED, *_DEFAULTS):
                raise _CliError(f"scenario field {key!r} is not a recognized setting")
            settings[name] = value
    for name in (*_REQUIRED, *_DEFAULTS):
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    missing = [name for name in _REQUIRED if name not in settings]
    if missing:
        raise _CliError(f"missing required setting(s): {', '.join(missing)}")
    return settings


def _scenario(settings: dict[str, Any]) -> tuple[ChannelConfig, TrafficLoad]:
    p1, p2 = settings["p1"], settings["p2"]
    if settings["db"]:
        p1, p2 = 10.0 ** (p1 / 10.0), 10.0 ** (p2 / 10.0)
    try:
        cfg = ChannelConfig(p1, p2)
    except (TypeError, ValueError) as err:
        raise _CliError(f"channel powers: {err}") from err
    try:
        load = TrafficLoad(settings["tau1"], settings["tau2"])
    except (TypeError, ValueError) as err:
        raise _CliError(f"traffic load: {err}") from err
    tol = settings["tol"]
    if not isinstance(tol, (int, float)) or not 0.0 <= tol < 1.0:
        raise _CliError(f"tol: must be a small nonnegative number, got {tol!r}")
    return cfg, load


def _scenario_doc(settings: dict[str, Any], cfg: ChannelConfig, load: TrafficLoad) -> dict:
    return {
        "p1": r12(cfg.p1),
        "p2": r12(cfg.p2),
        "tau1": r12(load.tau1),
        "tau2": r12(load.tau2),
        "tol": r12(settings["tol"]),
    }


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _cmd_region(args, settings, cfg: ChannelConfig, load: TrafficLoad) -> int:
    desc = build_region(cfg, load)
    value, point = minimax(cfg, load)
    scale = settings["bbox_scale"]
    if not isinstance(scale, (int, float)) or scale <= 1.0:
        print("error: bbox-scale: must be a number > 1", file=sys.stderr)
        return EXIT_INVALID
    box = scale * value
    polyline = boundary_polyline(cfg, load, box, box)
    if args.csv:
        print("d1,d2")
        for x, y in polyline:
            print(f"{r12(x):.12g},{r12(y):.12g}")
        return EXIT_OK
    bound = outer_bound(cfg, load)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "region",
        "scenario": _scenario_doc(settings, cfg, load),
        "case": desc.case.value,
        "pieces": [
            {
                "sub_region": name,
                "halfplanes": [
                    {"a": r12(hp.a), "b": r12(hp.b), "c": r12(hp.c)}
                    for hp in piece.halfplanes
                ],
                "vertices": [
                    {"label": label, "d1": r12(x), "d2": r12(y)}
                    for label, (x, y) in piece.vertices
                ],
            }
            for name, piece in desc.pieces
        ],
        "outer_bound": {
            "d1_min": r12(bound.halfplanes[0].c),
            "d2_min": r12(bound.halfplanes[1].c),
        },
        "minimax": {"value": r12(value), "d1": r12(point.d1), "d2": r12(point.d2)},
        "bounding_box": {"d1_max": r12(box), "d2_max": r12(box)},
        "boundary_polyline": [[r12(x), r12(y)] for x, y in polyline],
    }
    _emit(doc)
    return EXIT_OK


def _parse_pair(args) -> CompletionTimePair:
    try:
        return CompletionTimePair(args.d1, args.d2)
    except ValueError as err:
        raise _CliError(f"completion-time pair: {err}") from err


def _cmd_check(args, settings, cfg: ChannelConfig, load: TrafficLoad) -> int:
    try:
        d = _parse_pair(args)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    tol = settings["tol"]
    query = ct_query(load, d)
    member = constrained_contains(cfg, query, tol)
    slacks = ct_slacks(cfg, load, d)
    binding = min(slacks, key=slacks.get)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "scenario": _scenario_doc(settings, cfg, load),
        "point": {"d1": r12(d.d1), "d2": r12(d.d2)},
        "member": member,
        "constrained_rates": {
            "r1": r12(query.rates.r1),
            "r2": r12(query.rates.r2),
            "c": r12(query.c),
        },
        "slacks": {name: r12(s) for name, s in slacks.items()},
        "binding": binding,
    }
    _emit(doc)
    return EXIT_OK if member else EXIT_NON_MEMBER


def _cmd_minimize(args, settings, cfg: ChannelConfig, load: TrafficLoad) -> int:
    case = classify_case(cfg, load)
    if args.minimax:
        value, point = minimax(cfg, load)
        doc_core = {
            "mode": "minimax",
            "value": r12(value),
            "point": {"d1": r12(point.d1), "d2": r12(point.d2)},
            "cell": f"Case {case.value}, Cbar",
            "tie": False,
        }
    else:
        try:
            solution = minimize_weighted_sum(cfg, load, args.weight)
        except ValueError as err:
            print(f"error: weight: {err}", file=sys.stderr)
            return EXIT_INVALID
        value = solution.optimal_value
        doc_core = {
            "mode": "weighted_sum",
            "weight": r12(args.weight),
            "value": r12(value),
            "point": {
                "d1": r12(solution.optimizer_point.d1),
                "d2": r12(solution.optimizer_point.d2),
            },
            "cell": f"Case {case.value}, D{solution.branch}({solution.rate_point_label})",
            "tie": solution.tie,
        }
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "minimize",
        "scenario": _scenario_doc(settings, cfg, load),
        **doc_core,
    }
    exit_code = EXIT_OK
    if args.verify:
        resolution = settings["grid"]
        if not isinstance(resolution, int) or resolution < 16:
            print("error: grid: must be an integer >= 16", file=sys.stderr)
            return EXIT_INVALID
        spec = default_grid(cfg, load, resolution)
        report = (
            oracle_minimax(cfg, load, spec)
            if args.minimax
            else oracle_weighted_min(cfg, load, args.weight, spec)
        )
        # The closed form may undercut the grid by at most the gap bound and
        # exceed it only by membership-tolerance dust.
        bracket_ok = (
            report.optimum_value - report.certified_gap_bound - 1e-12
            <= value
            <= report.optimum_value + 1e-9
        )
        doc["verification"] = {
            "resolution": resolution,
            "bounds": {
                "d1": [r12(spec.d1_bounds[0]), r12(spec.d1_bounds[1])],
                "d2": [r12(spec.d2_bounds[0]), r12(spec.d2_bounds[1])],
            },
            "oracle_value": r12(report.optimum_value),
            "oracle_point": {
                "d1": r12(report.optimizer.d1),
                "d2": r12(report.optimizer.d2),
            },
            "grid_step": r12(report.grid_step),
            "gap_bound": r12(report.certified_gap_bound),
            "bracket_ok": bracket_ok,
        }
        if not bracket_ok:
            exit_code = EXIT_VERIFY_FAILED
    _emit(doc)
    return exit_code


def _cmd_schedule(args, settings, cfg: ChannelConfig, load: TrafficLoad) -> int:
    try:
        d = _parse_pair(args)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    schedule = synthesize(cfg, load, d, settings["tol"])  # raises InfeasibleError
    report = validate(cfg, load, schedule, settings["tol"])
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "schedule",
        "scenario": _scenario_doc(settings, cfg, load),
        "phases": [
            {
                "duration": r12(p.duration),
                "r1": r12(p.rates.r1),
                "r2": r12(p.rates.r2),
                "active": sorted(p.active_users),
            }
            for p in schedule.phases
        ],
        "achieved": {"d1": r12(schedule.achieved.d1), "d2": r12(schedule.achieved.d2)},
        "validation": "pass" if report.ok else "fail",
    }
    if not report.ok:
        doc["violations"] = list(report.violations)
    _emit(doc)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED
