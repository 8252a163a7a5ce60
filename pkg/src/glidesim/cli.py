"""Command-line interface.

Subcommands: ``simulate`` (run a scenario, write trajectory CSV and summary
JSON), ``valve`` (snap thresholds, optionally a depth/volume sweep CSV),
``range`` (closed-form range and power figures), ``optimize`` (grid or simplex
search over a design space), and ``verify`` (grade a run against the bundled
reference figures).

Exit codes: 0 success, 2 configuration/usage error, 3 infeasible scenario.
All file output is deterministic; floats are printed with 9 significant
digits, CSV lines end with LF.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import analysis, claims, optimize
from .config import ConfigError, load_scenario
from .mission import MissionSummary, ScenarioError, TrajectoryLog, run_mission
from .physics import PhysicalConstants
from .pneumatics import ValveModel, snap_back_threshold, snap_through_threshold

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

_FLOAT_FMT = ".9g"

TRAJECTORY_HEADER = (
    "t_s",
    "depth_m",
    "x_m",
    "mode",
    "bladder_fill_m3",
    "cartridge_mol",
    "p_hydro_kpa",
    "event",
)

#: Sweep volumes standing in for the three kinked-tube chamber add-ons, m^3.
VALVE_SWEEP_VOLUMES = (5.0e-5, 1.0e-4, 1.5e-4)


def _fmt(value: float) -> str:
    return format(value, _FLOAT_FMT)


def write_trajectory_csv(path: str, log: TrajectoryLog) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_HEADER)
        for row in log.rows:
            writer.writerow(
                [
                    _fmt(row.t),
                    _fmt(row.depth),
                    _fmt(row.x),
                    row.mode,
                    _fmt(row.bladder_fill),
                    _fmt(row.cartridge_mol),
                    _fmt(row.p_hydro_kpa),
                    row.event,
                ]
            )


def summary_to_json_dict(summary: MissionSummary) -> dict:
    power, efficiency = analysis.power_and_efficiency(
        summary.energy_used, summary.total_time, summary.total_range
    )
    return {
        "cycles": summary.cycles_completed,
        "range_m": summary.total_range,
        "time_s": summary.total_time,
        "max_depth_m": summary.max_depth,
        "energy_j": summary.energy_used,
        "power_w": power,
        "efficiency_mw_per_m": efficiency,
    }


def write_summary_json(path: str, summary: MissionSummary) -> None:
    with open(path, "w", newline="") as fh:
        json.dump(summary_to_json_dict(summary), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_simulate(args) -> int:
    design, scenario = load_scenario(args.config)
    if args.dt is not None:
        from dataclasses import replace

        scenario = replace(scenario, dt=args.dt)
    log, summary = run_mission(design, scenario)
    write_trajectory_csv(args.out, log)
    if args.summary:
        write_summary_json(args.summary, summary)
    print(
        f"cycles={summary.cycles_completed} range={summary.total_range:.2f} m "
        f"time={summary.total_time:.1f} s max_depth={summary.max_depth:.2f} m "
        f"({summary.termination_reason})"
    )
    return EXIT_OK


def _valve_from_args(args) -> ValveModel:
    return ValveModel(additional_sealed_volume=args.v_add)


def _cmd_valve(args) -> int:
    constants = PhysicalConstants()
    if args.sweep:
        depths = []
        d = 0.0
        while d <= args.max_depth + 1e-9:
            depths.append(round(d, 9))
            d += args.depth_step
        volumes = args.volumes or list(VALVE_SWEEP_VOLUMES)
        rows = []
        for depth in depths:
            for v_add in volumes:
                valve = ValveModel(additional_sealed_volume=v_add)
                rows.append(
                    (
                        depth,
                        v_add,
                        snap_through_threshold(valve, depth, constants),
                        snap_back_threshold(valve, depth, constants),
                    )
                )
        out = open(args.out, "w", newline="") if args.out else sys.stdout
        try:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["depth_m", "v_add_m3", "snap_through_pa", "snap_back_pa"])
            for depth, v_add, p_st, p_sb in rows:
                writer.writerow([_fmt(depth), _fmt(v_add), _fmt(p_st), _fmt(p_sb)])
        finally:
            if args.out:
                out.close()
        return EXIT_OK
    valve = _valve_from_args(args)
    p_st = snap_through_threshold(valve, args.depth, constants)
    p_sb = snap_back_threshold(valve, args.depth, constants)
    print(f"snap_through_pa={_fmt(p_st)}")
    print(f"snap_back_pa={_fmt(p_sb)}")
    return EXIT_OK


def _cmd_range(args) -> int:
    model = analysis.RangeModelInput(
        p_cartridge=args.p_cartridge,
        v_cartridge=args.v_cartridge,
        p_swim_bladder=args.p_bladder,
        v_swim_bladder=args.v_bladder,
        depth=args.depth,
    )
    total = analysis.closed_form_range(model)
    print(f"range_m={_fmt(total)}")
    if args.energy is not None and args.time is not None:
        power, efficiency = analysis.power_and_efficiency(args.energy, args.time, total)
        print(f"power_w={_fmt(power)}")
        print(f"efficiency_mw_per_m={_fmt(efficiency)}")
    return EXIT_OK


def _load_space(path: str) -> tuple[optimize.DesignSpace, dict[str, float] | None]:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("<space>", f"cannot read design space: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("<space>", "design space must be a JSON object")
    start = raw.pop("start", None)
    bounds = {}
    for name, value in raw.items():
        if name not in optimize.PARAM_ORDER:
            raise ConfigError(name, "unknown design space parameter")
        if (
            not isinstance(value, list)
            or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
        ):
            raise ConfigError(name, "bounds must be a [lower, upper] pair of numbers")
        bounds[name] = (float(value[0]), float(value[1]))
    try:
        space = optimize.DesignSpace(**bounds)
    except ValueError as exc:
        raise ConfigError("<space>", str(exc)) from exc
    if start is not None:
        if not isinstance(start, dict):
            raise ConfigError("start", "start must be a JSON object")
        start = {k: float(v) for k, v in start.items()}
    return space, start


def _cmd_optimize(args) -> int:
    design, scenario = load_scenario(args.config)
    space, start = _load_space(args.space)
    if args.method == "grid":
        results = optimize.grid_search(
            space,
            args.resolution,
            design,
            scenario,
            max_evaluations=args.max_evaluations,
            workers=args.workers,
        )
    else:
        if start is None:
            start = {n: 0.5 * sum(space.bounds(n)) for n in space.names}
        best = optimize.nelder_mead(
            space, start, design, scenario, max_iters=args.max_iters
        )
        results = [best]
    optimize.write_results_csv(args.out, results)
    top = results[0]
    if top.feasible:
        print(f"best objective={_fmt(top.objective)} params={top.params}")
    else:
        print(f"no feasible candidate ({top.failure_reason})")
    return EXIT_OK


def _cmd_verify(args) -> int:
    design, scenario = load_scenario(args.config)
    _, summary = run_mission(design, scenario)
    checks = claims.verify_claims(summary)
    print(claims.format_report(checks))
    return EXIT_OK if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glidesim",
        description="Simulate and optimize a fluidically controlled buoyancy glider.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a scenario and write trajectory/summary")
    p_sim.add_argument("--config", required=True, help="scenario JSON path or bundled name")
    p_sim.add_argument("--out", required=True, help="trajectory CSV output path")
    p_sim.add_argument("--summary", help="summary JSON output path")
    p_sim.add_argument("--dt", type=float, help="override the integration step, seconds")
    p_sim.add_argument(
        "--seedless",
        action="store_true",
        help="no effect; runs are always deterministic (kept for compatibility)",
    )
    p_sim.set_defaults(func=_cmd_simulate)

    p_valve = sub.add_parser("valve", help="bistable valve threshold characterization")
    p_valve.add_argument("--depth", type=float, default=0.0, help="depth in meters")
    p_valve.add_argument(
        "--v-add", type=float, default=0.0, help="additional sealed volume, m^3"
    )
    p_valve.add_argument("--sweep", action="store_true", help="emit a depth x volume CSV")
    p_valve.add_argument("--max-depth", type=float, default=4.0)
    p_valve.add_argument("--depth-step", type=float, default=0.5)
    p_valve.add_argument(
        "--volumes",
        type=lambda s: [float(v) for v in s.split(",")],
        help="comma-separated sweep volumes, m^3",
    )
    p_valve.add_argument("--out", help="sweep CSV output path (default stdout)")
    p_valve.set_defaults(func=_cmd_valve)

    p_range = sub.add_parser("range", help="closed-form range and power figures")
    p_range.add_argument("--p-cartridge", type=float, required=True, help="Pa")
    p_range.add_argument("--v-cartridge", type=float, required=True, help="m^3")
    p_range.add_argument("--p-bladder", type=float, default=0.0, help="Pa gauge")
    p_range.add_argument("--v-bladder", type=float, required=True, help="m^3")
    p_range.add_argument("--depth", type=float, required=True, help="m")
    p_range.add_argument("--energy", type=float, help="J, enables power output")
    p_range.add_argument("--time", type=float, help="s, enables power output")
    p_range.set_defaults(func=_cmd_range)

    p_opt = sub.add_parser("optimize", help="search a design space")
    p_opt.add_argument("--config", required=True)
    p_opt.add_argument("--space", required=True, help="design space JSON path")
    p_opt.add_argument("--method", choices=("grid", "nelder-mead"), default="grid")
    p_opt.add_argument("--out", required=True, help="ranked results CSV path")
    p_opt.add_argument("--resolution", type=int, default=3)
    p_opt.add_argument("--max-evaluations", type=int, default=4096)
    p_opt.add_argument("--max-iters", type=int, default=200)
    p_opt.add_argument(
        "--workers",
        type=int,
        help="evaluation workers (default: GLIDESIM_THREADS or 1)",
    )
    p_opt.set_defaults(func=_cmd_optimize)

    p_verify = sub.add_parser("verify", help="check a run against the reference figures")
    p_verify.add_argument("--config", default="paper_default")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
