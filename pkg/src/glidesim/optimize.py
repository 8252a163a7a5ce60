"""Design-space exploration driven by the mission simulator.

Candidates are points in a box of glider and controller parameters.  Each one
is scored by running a full mission; configurations that cannot cycle are kept
in the results as infeasible rather than aborting the search.  Evaluations are
pure, so they may run on a worker pool; results are merged by candidate index
and are therefore identical for any worker count.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace, fields

import numpy as np

from .dynamics import DragModel, GlideGeometry
from .mission import Scenario, ScenarioError, run_mission
from .physics import GliderDesign, net_force
from .pneumatics import Regulator
from .analysis import power_and_efficiency

#: Canonical parameter order for vectors, grids, and tie-breaking.
PARAM_ORDER = (
    "bladder_capacity",
    "deflated_net_force",
    "p_high",
    "p_low",
    "regulator_setpoint",
    "theta",
    "phi",
    "drag_area",
)

WORKERS_ENV_VAR = "GLIDESIM_THREADS"


@dataclass(frozen=True)
class DesignSpace:
    """Per-parameter (lower, upper) bounds; unset parameters are not searched."""

    bladder_capacity: tuple[float, float] | None = None  # m^3
    deflated_net_force: tuple[float, float] | None = None  # N
    p_high: tuple[float, float] | None = None  # Pa gauge
    p_low: tuple[float, float] | None = None  # Pa gauge
    regulator_setpoint: tuple[float, float] | None = None  # Pa gauge
    theta: tuple[float, float] | None = None  # rad
    phi: tuple[float, float] | None = None  # rad
    drag_area: tuple[float, float] | None = None  # m^2

    def __post_init__(self) -> None:
        for f in fields(self):
            bound = getattr(self, f.name)
            if bound is None:
                continue
            lo, hi = bound
            if not lo < hi:
                raise ValueError(f"{f.name}: lower bound must be below upper bound")
        if self.p_high is not None and self.p_low is not None:
            if not self.p_low[1] < self.p_high[0]:
                raise ValueError(
                    "p_low upper bound must stay below p_high lower bound"
                )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n in PARAM_ORDER if getattr(self, n) is not None)

    def bounds(self, name: str) -> tuple[float, float]:
        bound = getattr(self, name)
        if bound is None:
            raise KeyError(f"{name} is not part of this design space")
        return bound

    def contains(self, candidate: dict[str, float]) -> bool:
        for name, value in candidate.items():
            lo, hi = self.bounds(name)
            if not lo <= value <= hi:
                return False
        return True

    def clip(self, candidate: dict[str, float]) -> dict[str, float]:
        out = {}
        for name, value in candidate.items():
            lo, hi = self.bounds(name)
            out[name] = min(max(value, lo), hi)
        return out


@dataclass(frozen=True)
class EvaluatedCandidate:
    params: dict[str, float]
    objective: float | None
    feasible: bool
    failure_reason: str | None = None

    def __post_init__(self) -> None:
        if self.feasible == (self.objective is None):
            raise ValueError("feasible candidates carry an objective, infeasible a reason")
        if not self.feasible and not self.failure_reason:
            raise ValueError("infeasible candidates must carry a failure reason")

    def score(self) -> float:
        """Ranking score, higher is better; infeasible sinks to the bottom."""
        return -math.inf if self.objective is None else self.objective


def apply_candidate(
    design: GliderDesign, scenario: Scenario, params: dict[str, float]
) -> tuple[GliderDesign, Scenario]:
    """Overlay candidate parameters onto a base design and scenario."""
    constants = scenario.constants
    if "bladder_capacity" in params or "deflated_net_force" in params:
        capacity = params.get("bladder_capacity", design.bladder_capacity)
        if "deflated_net_force" in params:
            deflated = params["deflated_net_force"]
        else:
            deflated = net_force(design, 0.0, constants).f_net
        design = GliderDesign.from_deflated_net_force(
            design.hull_volume, capacity, deflated, constants
        )
        scenario = replace(scenario, bladder=replace(scenario.bladder, capacity=capacity))
    ctrl = scenario.controller
    if "p_high" in params or "p_low" in params:
        ctrl = replace(
            ctrl,
            p_high=params.get("p_high", ctrl.p_high),
            p_low=params.get("p_low", ctrl.p_low),
        )
        scenario = replace(scenario, controller=ctrl)
    if "regulator_setpoint" in params:
        scenario = replace(scenario, regulator=Regulator(params["regulator_setpoint"]))
    if "theta" in params or "phi" in params:
        glide = GlideGeometry(
            theta=params.get("theta", scenario.glide.theta),
            phi=params.get("phi", scenario.glide.phi),
        )
        scenario = replace(scenario, glide=glide)
    if "drag_area" in params:
        scenario = replace(
            scenario, drag=DragModel(params["drag_area"], scenario.drag.rho)
        )
    return design, scenario


def evaluate(
    candidate: dict[str, float],
    design: GliderDesign,
    scenario: Scenario,
    space: DesignSpace | None = None,
) -> EvaluatedCandidate:
    """Score one candidate by simulation.

    Objective follows ``scenario.objective``: total range in meters
    (maximized) or power per distance in mW/m (minimized, stored negated so
    ranking always maximizes the score).
    """
    if space is not None and not space.contains(candidate):
        raise ValueError("candidate lies outside the design space bounds")
    try:
        cand_design, cand_scenario = apply_candidate(design, scenario, candidate)
        _, summary = run_mission(cand_design, cand_scenario)
    except (ScenarioError, ValueError) as exc:
        reason = exc.invariant if isinstance(exc, ScenarioError) else str(exc)
        return EvaluatedCandidate(dict(candidate), None, False, reason)
    if summary.cycles_completed == 0:
        return EvaluatedCandidate(dict(candidate), None, False, "zero cycles")
    if scenario.objective == "range":
        objective = summary.total_range
    else:
        _, mw_per_m = power_and_efficiency(
            summary.energy_used, summary.total_time, summary.total_range
        )
        objective = -mw_per_m
    return EvaluatedCandidate(dict(candidate), objective, True)


def resolve_workers(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV_VAR, "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _evaluate_many(
    candidates: list[dict[str, float]],
    design: GliderDesign,
    scenario: Scenario,
    workers: int | None,
) -> list[EvaluatedCandidate]:
    n_workers = resolve_workers(workers)
    if n_workers == 1 or len(candidates) <= 1:
        return [evaluate(c, design, scenario) for c in candidates]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        # map preserves submission order, so the merge is index-deterministic.
        return list(pool.map(lambda c: evaluate(c, design, scenario), candidates))


def _rank(evaluated: list[EvaluatedCandidate]) -> list[EvaluatedCandidate]:
    def key(item: EvaluatedCandidate):
        params = tuple(item.params.get(n, 0.0) for n in PARAM_ORDER)
        return (-item.score(), params)

    return sorted(evaluated, key=key)


def grid_search(
    space: DesignSpace,
    resolution: int,
    design: GliderDesign,
    scenario: Scenario,
    max_evaluations: int = 4096,
    workers: int | None = None,
) -> list[EvaluatedCandidate]:
    """Exhaustive scan of a regular grid, ranked best first.

    ``resolution`` points per searched dimension, bounds inclusive.  Ties are
    broken by parameter values in canonical order, so the ranking does not
    depend on evaluation order or worker count.
    """
    names = space.names
    if names and resolution < 2:
        raise ValueError("resolution must be at least 2 per swept dimension")
    total = resolution ** len(names)
    if total > max_evaluations:
        raise ValueError(
            f"grid of {total} candidates exceeds the budget of {max_evaluations}"
        )
    if not names:
        # Degenerate one-point grid: just the base configuration.
        candidates: list[dict[str, float]] = [{}]
    else:
        axes = [np.linspace(*space.bounds(n), resolution) for n in names]
        candidates = []
        index = [0] * len(names)
        for flat in range(total):
            rem = flat
            for k in range(len(names) - 1, -1, -1):
                index[k] = rem % resolution
                rem //= resolution
            candidates.append(
                {n: float(axes[k][index[k]]) for k, n in enumerate(names)}
            )
    evaluated = _evaluate_many(candidates, design, scenario, workers)
    return _rank(evaluated)


def nelder_mead(
    space: DesignSpace,
    start: dict[str, float],
    design: GliderDesign | None = None,
    scenario: Scenario | None = None,
    max_iters: int = 200,
    tolerance: float = 1e-9,
    objective_fn=None,
    initial_step: float = 0.10,
) -> EvaluatedCandidate:
    """Simplex search (reflect 1, expand 2, contract 0.5, shrink 0.5) in the box.

    Maximizes the candidate score; box constraints are enforced by projecting
    trial points onto the bounds.  Stops when the simplex objective spread
    drops below ``tolerance`` or after ``max_iters`` iterations.  The result
    is never worse than the start.  ``objective_fn`` (params -> score) swaps
    in a test objective in place of the simulator.
    """
    names = space.names
    if not names:
        raise ValueError("design space has no searchable parameters")

    if objective_fn is None:
        if design is None or scenario is None:
            raise ValueError("need a design and scenario unless objective_fn is given")

        def objective_fn(params: dict[str, float]) -> float:
            return evaluate(params, design, scenario).score()

    def project(vec: np.ndarray) -> dict[str, float]:
        return space.clip({n: float(v) for n, v in zip(names, vec)})

    def score_of(vec: np.ndarray) -> float:
        return objective_fn(project(vec))

    x0 = np.array([start[n] for n in names], dtype=float)
    if not space.contains({n: start[n] for n in names}):
        raise ValueError("start point lies outside the design space")
    f0 = score_of(x0)
    if f0 == -math.inf:
        raise ValueError("start point is infeasible")

    # Initial simplex: perturb each coordinate by a fraction of its bound range.
    simplex = [x0]
    values = [f0]
    for k, name in enumerate(names):
        lo, hi = space.bounds(name)
        step = initial_step * (hi - lo)
        vertex = x0.copy()
        vertex[k] = min(vertex[k] + step, hi)
        if vertex[k] == x0[k]:
            vertex[k] = max(x0[k] - step, lo)
        simplex.append(vertex)
        values.append(score_of(vertex))

    for _ in range(max_iters):
        order = sorted(range(len(simplex)), key=lambda i: -values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        finite = [v for v in values if v != -math.inf]
        if finite and len(finite) == len(values) and max(values) - min(values) < tolerance:
            break
        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]

        reflected = centroid + 1.0 * (centroid - worst)
        f_r = score_of(reflected)
        if f_r > values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_e = score_of(expanded)
            if f_e > f_r:
                simplex[-1], values[-1] = expanded, f_e
            else:
                simplex[-1], values[-1] = reflected, f_r
            continue
        if f_r > values[-2]:
            simplex[-1], values[-1] = reflected, f_r
            continue
        contracted = centroid + 0.5 * (worst - centroid)
        f_c = score_of(contracted)
        if f_c > values[-1]:
            simplex[-1], values[-1] = contracted, f_c
            continue
        best = simplex[0]
        for i in range(1, len(simplex)):
            simplex[i] = best + 0.5 * (simplex[i] - best)
            values[i] = score_of(simplex[i])

    best_index = max(range(len(simplex)), key=lambda i: values[i])
    best_params = project(simplex[best_index])
    best_value = values[best_index]
    if best_value == -math.inf:
        return EvaluatedCandidate(best_params, None, False, "no feasible point found")
    return EvaluatedCandidate(best_params, best_value, True)


def write_results_csv(path: str, evaluated: list[EvaluatedCandidate]) -> None:
    """Ranked-results CSV: rank, parameters in canonical order, objective, feasibility."""
    names = sorted(
        {n for item in evaluated for n in item.params}, key=PARAM_ORDER.index
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", *names, "objective", "feasible", "reason"])
        for rank, item in enumerate(evaluated, start=1):
            row = [str(rank)]
            row.extend(format(item.params[n], ".9g") for n in names)
            row.append("" if item.objective is None else format(item.objective, ".9g"))
            row.append("true" if item.feasible else "false")
            row.append(item.failure_reason or "")
            writer.writerow(row)
