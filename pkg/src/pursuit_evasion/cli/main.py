from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandera as pa

from pursuit_evasion.analysis.export import OutputRecord, validate_table, write_table
from pursuit_evasion.analysis.maps import (
    MapConfig,
    horizon_sweep,
    horizon_values,
    region_map,
    survival_map,
)
from pursuit_evasion.analysis.verification import verify_instance
from pursuit_evasion.config import DEFAULT_GRID, GridSettings, OutputPaths
from pursuit_evasion.exceptions import EvasionError
from pursuit_evasion.game.constrained import (
    optional_critical_time,
    sample_solution,
    solution_summary,
    solve,
)
from pursuit_evasion.game.kinematics import reflect_state
from pursuit_evasion.game.nash import equilibrium
from pursuit_evasion.game.schema import GameSpec, RelState
from pursuit_evasion.logging_config import get_logger, setup_logging
from pursuit_evasion.schemas import TrajectorySamplesSchema

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFICATION_FAILED = 3


class UsageError(ValueError):
    """Invalid command-line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def parse_point(text: str) -> Tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from exc


def parse_bounds(text: str) -> Tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected 'x0,x1,y0,y1', got {text!r}")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'x0,x1,y0,y1', got {text!r}") from exc
    return x0, x1, y0, y1


def parse_resolution(text: str) -> Tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'WxH', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'WxH', got {text!r}") from exc


def _common_options() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level for messages on stderr (default: WARNING).",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Thread pool size for raster and sweep commands (default: 1).",
    )
    common.add_argument(
        "--out",
        type=Path,
        default=None,
        help="Write the CSV table to this path instead of stdout.",
    )
    common.add_argument(
        "--save",
        action="store_true",
        help="Write the CSV table under reports/figure_data/ when --out is not given.",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pursuit-evasion",
        description="Optimal evasion from a constant-velocity pursuer with a capture circle.",
    )
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    solve_p = sub.add_parser(
        "solve", parents=[common], help="Optimal trajectory for one instance."
    )
    solve_p.add_argument(
        "--x0",
        type=parse_point,
        required=True,
        help="Start 'x,y'; negative values work as --x0 -1,1 or --x0=-1,1.",
    )
    solve_p.add_argument("--mu", type=float, required=True, help="Speed ratio in (0, 1).")
    solve_p.add_argument("--T", type=float, required=True, help="Horizon.")
    solve_p.add_argument(
        "--samples",
        type=int,
        default=1000,
        help="Trajectory samples for --out (default: 1000).",
    )
    solve_p.set_defaults(handler=cmd_solve)

    sweep_p = sub.add_parser(
        "sweep-T", parents=[common], help="Final locations over horizons."
    )
    sweep_p.add_argument("--x0", type=parse_point, required=True)
    sweep_p.add_argument("--mu", type=float, required=True)
    sweep_p.add_argument("--Tmin", type=float, required=True)
    sweep_p.add_argument("--Tmax", type=float, required=True)
    sweep_p.add_argument("--steps", type=int, required=True)
    sweep_p.set_defaults(handler=cmd_sweep_T)

    region_p = sub.add_parser("region-map", parents=[common], help="Regime raster.")
    region_p.add_argument("--mu", type=float, required=True)
    region_p.add_argument("--T", type=float, required=True)
    region_p.add_argument("--bounds", type=parse_bounds, default=DEFAULT_GRID.bounds)
    region_p.add_argument(
        "--res", type=parse_resolution, default=(DEFAULT_GRID.width, DEFAULT_GRID.height)
    )
    region_p.set_defaults(handler=cmd_region_map)

    survival_p = sub.add_parser(
        "survival-map", parents=[common], help="Survival-time raster."
    )
    survival_p.add_argument("--mu", type=float, required=True)
    survival_p.add_argument("--bounds", type=parse_bounds, default=DEFAULT_GRID.bounds)
    survival_p.add_argument(
        "--res", type=parse_resolution, default=(DEFAULT_GRID.width, DEFAULT_GRID.height)
    )
    survival_p.set_defaults(handler=cmd_survival_map)

    nash_p = sub.add_parser(
        "nash", parents=[common], help="Equilibrium heading and horizon."
    )
    nash_p.add_argument("--x0", type=parse_point, required=True)
    nash_p.add_argument("--mu", type=float, required=True)
    nash_p.set_defaults(handler=cmd_nash)

    verify_p = sub.add_parser(
        "verify", parents=[common], help="Analytic value against oracle sweeps."
    )
    verify_p.add_argument("--x0", type=parse_point, required=True)
    verify_p.add_argument("--mu", type=float, required=True)
    verify_p.add_argument("--T", type=float, required=True)
    verify_p.add_argument(
        "--grid", type=int, default=None, help="Policies in the oracle sweep."
    )
    verify_p.set_defaults(handler=cmd_verify)
    return parser


_POINT_OPTIONS = ("--x0", "--bounds")


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """Attach values such as '-1,1' to their option so argparse keeps them."""
    joined: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in _POINT_OPTIONS:
            value = next(tokens, None)
            numeric = value is not None and value[:1] == "-" and value[1:2] in tuple("0123456789.")
            if numeric:
                joined.append(f"{token}={value}")
                continue
            joined.append(token)
            if value is not None:
                joined.append(value)
            continue
        joined.append(token)
    return joined


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    if argv is not None:
        argv = _join_negative_values(argv)
    return build_parser().parse_args(argv)


def _start_state(args: argparse.Namespace) -> Tuple[RelState, bool]:
    state, reflected = reflect_state(RelState(*args.x0))
    if reflected:
        logger.info("Input y < 0 reflected to (%.6g, %.6g)", state.x, state.y)
    return state, reflected


def _emit_json(args: argparse.Namespace, payload: dict) -> None:
    record = OutputRecord(command=args.echo, payload=payload)
    sys.stdout.write(record.to_json() + "\n")


def _emit_table(args: argparse.Namespace, df) -> None:
    path = args.out
    if path is None and args.save:
        path = OutputPaths().table_path(args.command)
    text = write_table(df, path)
    if path is None:
        sys.stdout.write(text)


def _grid_from_args(args: argparse.Namespace) -> MapConfig:
    width, height = args.res
    return MapConfig(
        grid=GridSettings(bounds=tuple(args.bounds), width=width, height=height),
        workers=args.workers,
    )


def cmd_solve(args: argparse.Namespace) -> int:
    state, reflected = _start_state(args)
    spec = GameSpec(state, args.mu, args.T)
    solution = solve(spec)

    payload = solution_summary(solution)
    payload["input"] = {"x0": list(state.as_tuple()), "mu": args.mu, "T": args.T}
    payload["reflected"] = reflected
    payload["critical_time"] = optional_critical_time(state, args.mu)
    _emit_json(args, payload)

    if args.out is not None or args.save:
        samples = sample_solution(solution, args.mu, args.samples)
        validate_table(samples, TrajectorySamplesSchema)
        # stdout already carries the JSON record
        path = args.out if args.out is not None else OutputPaths().table_path(args.command)
        write_table(samples, path)
    return EXIT_OK


def cmd_sweep_T(args: argparse.Namespace) -> int:
    state, _ = _start_state(args)
    horizons = horizon_values(args.Tmin, args.Tmax, args.steps)
    df = horizon_sweep(state, args.mu, horizons, workers=args.workers)
    _emit_table(args, df)
    return EXIT_OK


def cmd_region_map(args: argparse.Namespace) -> int:
    df = region_map(args.mu, args.T, _grid_from_args(args))
    _emit_table(args, df)
    return EXIT_OK


def cmd_survival_map(args: argparse.Namespace) -> int:
    df = survival_map(args.mu, _grid_from_args(args))
    _emit_table(args, df)
    return EXIT_OK


def cmd_nash(args: argparse.Namespace) -> int:
    state, reflected = _start_state(args)
    pair = equilibrium(state, args.mu)
    _emit_json(
        args,
        {
            "psi_ne": pair.psi_ne,
            "t_ne": pair.t_ne,
            "value": pair.value,
            "reflected": reflected,
        },
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    state, reflected = _start_state(args)
    report = verify_instance(GameSpec(state, args.mu, args.T), grid=args.grid)
    payload = report.to_dict()
    payload["reflected"] = reflected
    _emit_json(args, payload)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _emit_error(exc: BaseException) -> None:
    body = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    sys.stderr.write(json.dumps(body, sort_keys=True) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        args.echo = " ".join(argv)
        setup_logging(args.log_level)
        if args.workers < 1:
            raise UsageError(f"--workers must be at least 1, got {args.workers}")
        return args.handler(args)
    except (UsageError, EvasionError, pa.errors.SchemaErrors) as exc:
        _emit_error(exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
