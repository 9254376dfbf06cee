# aerolos/cli.py
"""
Command-line front end. Results go to standard output as CSV with a fixed
header; diagnostics go to standard error.

Exit codes: 0 success, 1 usage error, 2 validation or geometry error,
3 numerical nonconvergence.
"""

import argparse
import csv
import logging
import math
import sys
from typing import Callable, List, Optional, Sequence, TextIO

import numpy as np
from pydantic import ValidationError

from aerolos.blockage_engine import geometry
from aerolos.blockage_engine.analytic import connectivity_lower_bound, sweep_altitude
from aerolos.blockage_engine.errors import AerolosError, describe_error
from aerolos.blockage_engine.models import BuildingSegment
from aerolos.blockage_engine.montecarlo import estimate_connectivity
from aerolos.blockage_engine.orchestrator import SweepOrchestrator
from aerolos.blockage_engine.scenario import Scenario
from aerolos.config.logging_setup import configure_logging
from aerolos.config.scenario_file import default_scenario, parse_config
from aerolos.config.settings import settings

logger = logging.getLogger(__name__)

SHADOW_HEADER = ["h_a", "d_s", "d_l", "theta", "s_b", "s_b_lower", "s_b_upper",
                 "s_gain", "s_gain_lower", "s_gain_upper"]
SIMULATE_HEADER = ["p_c_hat", "standard_error", "n_realizations", "seed"]
BOUND_HEADER = ["p_c_lower", "raw_value", "mean_blocked_area", "clipped"]
ALTITUDE_BOUND_HEADER = ["h_a", "p_c_lower", "is_best", "error"]
SWEEP_COLUMNS = ["p_c_hat", "standard_error", "p_c_lower", "error"]
OPTIMIZE_HEADER = ["d_l", "h_a_closed_form", "h_a_grid", "gain_lower_per_radian", "gain_lower"]


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> List[float]:
    """`START:STOP:STEP` (STOP included) or a comma-separated list of values."""
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if not step > 0.0 or stop < start:
                raise ValueError
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [float(v) for v in np.round(start + step * np.arange(count), 12)]
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid '{text}', expected START:STOP:STEP or v1,v2,...") from None
    if not values:
        raise argparse.ArgumentTypeError("grid is empty")
    return values


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.{settings.float_digits}g}"


class CsvEmitter:
    def __init__(self, stream: TextIO, header: Sequence[str]):
        self._writer = csv.writer(stream, lineterminator="\n")
        self._writer.writerow(header)

    def row(self, *values) -> None:
        self._writer.writerow([_format(v) for v in values])


# --- Commands ---

def cmd_shadow(scenario: Scenario, args: argparse.Namespace, out: TextIO) -> int:
    building = BuildingSegment(center=(args.dx, 0.0), length=args.length, orientation=args.omega)
    emitter = CsvEmitter(out, SHADOW_HEADER)
    altitudes = args.grid or [scenario.heights.aap_altitude]
    for altitude in altitudes:
        current = scenario.with_value("h_a", altitude) if args.grid else scenario
        heights, radius = current.heights, current.effective_radius
        angles = geometry.blockage_angles(building, heights, radius)
        s_b = geometry.shadow_area_exact(building, heights, radius)
        s_b_lower, s_b_upper = geometry.shadow_area_bounds(building, heights, radius)
        if heights.aap_above_rooftop:
            gain = geometry.coverage_gain_exact(building, heights, radius)
            gain_lower, gain_upper = geometry.coverage_gain_bounds(building, heights, radius)
        else:
            gain = gain_lower = gain_upper = 0.0
        emitter.row(altitude, angles.d_s, angles.d_l, angles.theta, s_b, s_b_lower, s_b_upper,
                    gain, gain_lower, gain_upper)
    return 0


def cmd_simulate(scenario: Scenario, args: argparse.Namespace, out: TextIO) -> int:
    estimate = estimate_connectivity(scenario, threads=args.threads)
    CsvEmitter(out, SIMULATE_HEADER).row(
        estimate.p_c_hat, estimate.standard_error, estimate.n_realizations, estimate.seed
    )
    return 0


def cmd_bound(scenario: Scenario, args: argparse.Namespace, out: TextIO) -> int:
    if args.grid:
        sweep = sweep_altitude(scenario, args.grid, threads=args.threads)
        emitter = CsvEmitter(out, ALTITUDE_BOUND_HEADER)
        for point in sweep.points:
            is_best = point.p_c_lower is not None and point.aap_altitude == sweep.best_altitude
            emitter.row(point.aap_altitude, point.p_c_lower, is_best, point.error)
        return 0 if sweep.best_altitude is not None else 2
    bound = connectivity_lower_bound(scenario)
    CsvEmitter(out, BOUND_HEADER).row(bound.p_c_lower, bound.raw_value, bound.mean_blocked_area, bound.clipped)
    return 0


def cmd_sweep(scenario: Scenario, args: argparse.Namespace, out: TextIO) -> int:
    rows = SweepOrchestrator(scenario, args.var, threads=args.threads).run(args.grid)
    emitter = CsvEmitter(out, [args.var, *SWEEP_COLUMNS])
    for row in rows:
        emitter.row(row.value, row.p_c_hat, row.standard_error, row.p_c_lower, row.error)
    return 0 if any(row.error is None for row in rows) else 2


def cmd_optimize_altitude(scenario: Scenario, args: argparse.Namespace, out: TextIO) -> int:
    heights, r_max = scenario.heights, scenario.max_range
    footprint = (args.dx, args.length, args.omega)
    theta = args.theta
    if any(v is not None for v in footprint):
        if None in footprint or args.dl is not None or theta is not None:
            logger.error("give either --dl [--theta] or all of --dx, --length and --omega")
            return 1
        building = BuildingSegment(center=(args.dx, 0.0), length=args.length, orientation=args.omega)
        angles = geometry.blockage_angles(building, heights, scenario.effective_radius)
        d_l, theta = angles.d_l, angles.theta
    elif args.dl is None:
        logger.error("one of --dl or --dx/--length/--omega is required")
        return 1
    else:
        d_l = args.dl

    closed_form = geometry.optimal_altitude(d_l, heights)
    grid_best = geometry.grid_search_altitude(d_l, heights, r_max, settings.altitude_grid_step)
    per_radian = float(geometry.gain_lower_profile(
        d_l, np.array([closed_form]), heights.building_height, heights.user_height, r_max
    )[0])
    if not geometry.has_interior_optimum(d_l, heights, r_max):
        logger.warning("(Omega_H d_L)^2 >= Lambda_H^2 at H_a*; the closed form is not the maximizer here")
    gain = per_radian * theta if theta is not None else None
    CsvEmitter(out, OPTIMIZE_HEADER).row(d_l, closed_form, grid_best, per_radian, gain)
    return 0


# --- Parser ---

def _common_options() -> argparse.ArgumentParser:
    common = UsageErrorParser(add_help=False)
    common.add_argument("--config", help="Scenario file (key = value lines). Defaults apply when omitted.")
    common.add_argument("--seed", type=int, help="Overrides the scenario seed.")
    common.add_argument("--threads", type=int, default=settings.threads, help="Worker threads.")
    common.add_argument("--log-level", type=str.upper, default=settings.log_level.upper(),
                        choices=("DEBUG", "INFO", "WARNING", "ERROR"), help="Diagnostics level on stderr.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = UsageErrorParser(
        prog="aerolos", description="Building-blockage shadows and connectivity for one aerial access point."
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=UsageErrorParser)

    shadow = commands.add_parser("shadow", parents=[common], help="Shadow geometry of one building.")
    shadow.add_argument("--dx", type=float, required=True, help="Center distance d_x from o, m.")
    shadow.add_argument("--length", type=float, required=True, help="Building length, m.")
    shadow.add_argument("--omega", type=float, required=True, help="Orientation in (0, pi], rad.")
    shadow.add_argument("--grid", type=parse_grid, help="H_a values, one row each.")
    shadow.set_defaults(handler=cmd_shadow)

    simulate = commands.add_parser("simulate", parents=[common], help="Monte Carlo connectivity.")
    simulate.add_argument("--realizations", type=int)
    simulate.add_argument("--users", type=int, dest="users_per_realization")
    simulate.set_defaults(handler=cmd_simulate)

    bound = commands.add_parser("bound", parents=[common], help="Analytic lower bound on connectivity.")
    bound.add_argument("--grid", type=parse_grid, help="H_a values; reports the bound per altitude and the best one.")
    bound.set_defaults(handler=cmd_bound)

    sweep = commands.add_parser("sweep", parents=[common], help="Paired Monte Carlo and bound over a grid.")
    sweep.add_argument("--var", choices=("lambda_b", "h_a", "h_b"), required=True)
    sweep.add_argument("--grid", type=parse_grid, required=True)
    sweep.add_argument("--realizations", type=int)
    sweep.add_argument("--users", type=int, dest="users_per_realization")
    sweep.set_defaults(handler=cmd_sweep)

    optimize = commands.add_parser("optimize-altitude", parents=[common], help="Gain-maximizing AAP altitude.")
    optimize.add_argument("--dl", type=float, help="Far-end distance d_L, m.")
    optimize.add_argument("--theta", type=float, help="Angular width theta, rad; without it gain_lower is blank.")
    optimize.add_argument("--dx", type=float, help="Building center distance; with --length and --omega replaces --dl.")
    optimize.add_argument("--length", type=float, help="Building length, m.")
    optimize.add_argument("--omega", type=float, help="Building orientation, rad.")
    optimize.set_defaults(handler=cmd_optimize_altitude)
    return parser


def load_scenario(args: argparse.Namespace) -> Scenario:
    scenario = parse_config(args.config) if args.config else default_scenario()
    return scenario.with_monte_carlo(
        seed=args.seed,
        realizations=getattr(args, "realizations", None),
        users_per_realization=getattr(args, "users_per_realization", None),
    )


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    out = out or sys.stdout
    handler: Callable[[Scenario, argparse.Namespace, TextIO], int] = args.handler
    if args.threads < 1:
        logger.error("--threads must be at least 1")
        return 1
    try:
        return handler(load_scenario(args), args, out)
    except AerolosError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except ValidationError as exc:
        logger.error("invalid input: %s", describe_error(exc))
        return 2
    except OSError as exc:
        logger.error("cannot read input: %s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
