"""Closed-loop mission simulation.

Wires the pressure-threshold controller, the pneumatic circuit, and the glide
kinematics into a deterministic fixed-step loop.  Each step: read hydrostatic
pressure, step the controller, move gas per the controller mode, evaluate the
force balance, and integrate the kinematics.  Threshold crossings are located
by bisection inside the step (to 1 ms) and logged as exact event rows on top
of the regular dt-resolution rows.

A run ends when the cartridge can no longer complete a full inflation at the
moment one is requested, or when the time limit is reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from . import controller as ctl
from .controller import ControllerState, Mode
from .dynamics import DragModel, GlideGeometry, KinematicState, step_kinematics
from .physics import (
    GliderDesign,
    PhysicalConstants,
    depth_for_pressure,
    hydrostatic_pressure,
    net_force,
)
from .pneumatics import (
    Cartridge,
    Regulator,
    SwimBladder,
    full_fill_moles,
    inflate_step,
    vent_step,
)

#: Relative tolerance for the per-step gas ledger check.
GAS_LEDGER_RTOL = 1e-12

#: Bisection tolerance for locating threshold crossings, seconds.
EVENT_TIME_TOLERANCE = 1e-3

_TIME_EPS = 1e-12


class ScenarioError(Exception):
    """A configuration that cannot produce a meaningful mission.

    ``invariant`` names the failed feasibility condition.
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


@dataclass(frozen=True)
class Scenario:
    """Everything a mission needs besides the glider design itself."""

    constants: PhysicalConstants
    controller: ControllerState
    bladder: SwimBladder
    cartridge: Cartridge
    regulator: Regulator
    glide: GlideGeometry
    drag: DragModel
    inflate_coefficient: float  # m^3/(s Pa)
    vent_coefficient: float  # m^3/(s Pa)
    dt: float = 0.05
    max_time: float = 1800.0
    instantaneous_pneumatics: bool = False
    gas_accounting: str = "absolute"
    effective_mass: float | None = None  # kg; default 1.5x glider mass
    speed_epsilon: float = 0.05  # kg/s, regularizes the speed relaxation rate
    objective: str = "range"

    def __post_init__(self) -> None:
        if self.dt <= 0.0:
            raise ValueError("dt must be strictly positive")
        if self.max_time <= 0.0:
            raise ValueError("max_time must be strictly positive")
        if self.inflate_coefficient < 0.0 or self.vent_coefficient < 0.0:
            raise ValueError("flow coefficients must be non-negative")
        if self.gas_accounting not in ("absolute", "gauge"):
            raise ValueError("gas_accounting must be 'absolute' or 'gauge'")
        if self.objective not in ("range", "efficiency"):
            raise ValueError("objective must be 'range' or 'efficiency'")
        if self.effective_mass is not None and self.effective_mass <= 0.0:
            raise ValueError("effective_mass must be strictly positive")
        if self.speed_epsilon <= 0.0:
            raise ValueError("speed_epsilon must be strictly positive")


@dataclass
class TrajectoryRow:
    t: float  # s
    depth: float  # m
    x: float  # m
    mode: str
    bladder_fill: float  # m^3
    cartridge_mol: float  # mol
    p_hydro_kpa: float  # kPa gauge
    event: str = ""


@dataclass
class TrajectoryLog:
    rows: list[TrajectoryRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


@dataclass(frozen=True)
class MissionSummary:
    cycles_completed: int
    total_range: float  # m
    total_time: float  # s
    max_depth: float  # m
    gas_used: float  # mol drawn from the cartridge
    energy_used: float  # J, cartridge energy prorated by gas drawn
    termination_reason: str


@dataclass(frozen=True)
class CycleEvent:
    kind: str  # SNAP_THROUGH, SNAP_BACK, APEX, NADIR
    t: float
    depth: float


def check_feasibility(design: GliderDesign, scenario: Scenario) -> None:
    """Raise :class:`ScenarioError` for configurations that cannot cycle."""
    constants = scenario.constants
    deflated = net_force(design, 0.0, constants).f_net
    if deflated >= 0.0:
        raise ScenarioError(
            "never dives",
            f"deflated net force {deflated:.6g} N is non-negative; the vehicle floats",
        )
    inflated = net_force(design, design.bladder_capacity, constants).f_net
    if inflated <= 0.0:
        raise ScenarioError(
            "never ascends",
            f"fully inflated net force {inflated:.6g} N is non-positive; the vehicle sinks",
        )
    if scenario.controller.p_low < 0.0:
        raise ScenarioError(
            "never deflates",
            f"lower threshold {scenario.controller.p_low:.6g} Pa is below surface pressure",
        )
    if not scenario.instantaneous_pneumatics:
        trigger_depth = depth_for_pressure(scenario.controller.p_high, constants)
        back = (
            hydrostatic_pressure(trigger_depth, constants)
            + scenario.bladder.inflation_differential
        )
        if scenario.regulator.setpoint <= back:
            raise ScenarioError(
                "cannot inflate at trigger depth",
                f"regulator setpoint {scenario.regulator.setpoint:.6g} Pa does not exceed "
                f"the {back:.6g} Pa back pressure at the {trigger_depth:.3g} m trigger depth",
            )


class _MissionRun:
    """Mutable state for one mission; kept out of the public surface."""

    def __init__(self, design: GliderDesign, scenario: Scenario, observer=None):
        self.design = design
        self.scenario = scenario
        self.constants = scenario.constants
        self.observer = observer
        self.t = 0.0
        self.kin = KinematicState()
        self.ctrl = scenario.controller
        self.bladder = scenario.bladder
        self.cartridge = scenario.cartridge
        self.vented = 0.0
        self.max_depth = self.kin.depth
        self.log = TrajectoryLog()
        self.termination: str | None = None
        self.start_moles = scenario.cartridge.gas_remaining
        self.ledger_total = (
            scenario.cartridge.gas_remaining + scenario.bladder.gas_moles
        )
        mass = scenario.effective_mass
        self.effective_mass = mass if mass is not None else 1.5 * design.mass

    # -- bookkeeping -------------------------------------------------

    def f_net(self) -> float:
        return net_force(self.design, self.bladder.fill_volume, self.constants).f_net

    def p_hydro(self, depth: float | None = None) -> float:
        d = self.kin.depth if depth is None else depth
        return hydrostatic_pressure(d, self.constants)

    def check_ledger(self) -> None:
        total = self.cartridge.gas_remaining + self.bladder.gas_moles + self.vented
        tol = GAS_LEDGER_RTOL * max(self.ledger_total, 1e-15)
        if abs(total - self.ledger_total) > tol:
            raise RuntimeError(
                f"gas ledger violated at t={self.t}: {total!r} != {self.ledger_total!r}"
            )

    def emit(self, event: str = "") -> None:
        row = TrajectoryRow(
            t=self.t,
            depth=self.kin.depth,
            x=self.kin.x,
            mode=self.ctrl.mode.value,
            bladder_fill=self.bladder.fill_volume,
            cartridge_mol=self.cartridge.gas_remaining,
            p_hydro_kpa=self.p_hydro() / 1000.0,
            event=event,
        )
        rows = self.log.rows
        if rows and abs(rows[-1].t - row.t) <= _TIME_EPS:
            # Same instant (event landed on a grid point): merge instead of
            # duplicating, keeping t strictly increasing.
            if rows[-1].event and event:
                row.event = rows[-1].event + ";" + event
            elif rows[-1].event:
                row.event = rows[-1].event
            row.t = rows[-1].t
            rows[-1] = row
        else:
            rows.append(row)
        if self.observer is not None:
            self.observer(self)

    # -- physics substeps --------------------------------------------

    def _advance(self, h: float):
        """Pure trial step of length h from the current state; no commit."""
        bladder, cartridge, vented = self.bladder, self.cartridge, self.vented
        if not self.scenario.instantaneous_pneumatics:
            if self.ctrl.mode is Mode.INFLATING:
                bladder, cartridge = inflate_step(
                    bladder,
                    self.scenario.regulator,
                    cartridge,
                    self.kin.depth,
                    h,
                    self.scenario.inflate_coefficient,
                    self.constants,
                    self.scenario.gas_accounting,
                )
            else:
                bladder, dn = vent_step(
                    bladder,
                    self.kin.depth,
                    h,
                    self.scenario.vent_coefficient,
                    self.constants,
                    self.scenario.gas_accounting,
                    cartridge.temperature,
                )
                vented = vented + dn
        f = net_force(self.design, bladder.fill_volume, self.constants).f_net
        kin = step_kinematics(
            self.kin,
            self.ctrl.mode,
            f,
            self.scenario.glide,
            self.scenario.drag,
            h,
            self.effective_mass,
            self.scenario.speed_epsilon,
        )
        return kin, bladder, cartridge, vented

    def _crossed(self, depth: float) -> bool:
        p = self.p_hydro(depth)
        if self.ctrl.mode is Mode.DEFLATING:
            return p >= self.ctrl.p_high
        return p <= self.ctrl.p_low

    def _commit(self, state) -> None:
        self.kin, self.bladder, self.cartridge, self.vented = state
        self.max_depth = max(self.max_depth, self.kin.depth)
        self.check_ledger()

    def apply_controller(self) -> bool:
        """Process at most one pending transition; True if the run must stop."""
        new = ctl.step(self.ctrl, self.p_hydro())
        if new.mode is self.ctrl.mode:
            return False
        if new.mode is Mode.INFLATING:
            needed = full_fill_moles(
                self.bladder,
                self.kin.depth,
                self.constants,
                self.scenario.gas_accounting,
                self.cartridge.temperature,
            )
            if self.cartridge.gas_remaining < needed:
                self.termination = "cartridge exhausted: cannot complete an inflation"
                return True
        self.ctrl = new
        event = "SNAP_THROUGH" if new.mode is Mode.INFLATING else "SNAP_BACK"
        if self.scenario.instantaneous_pneumatics:
            self._jump_fill(new.mode)
        self.emit(event)
        return False

    def _jump_fill(self, mode: Mode) -> None:
        """Instantaneous fill/vent used by the closed-form parity mode."""
        if mode is Mode.INFLATING:
            dn = full_fill_moles(
                self.bladder,
                self.kin.depth,
                self.constants,
                self.scenario.gas_accounting,
                self.cartridge.temperature,
            )
            self.bladder = replace(
                self.bladder,
                fill_volume=self.bladder.capacity,
                gas_moles=self.bladder.gas_moles + dn,
            )
            self.cartridge = replace(
                self.cartridge, gas_remaining=self.cartridge.gas_remaining - dn
            )
        else:
            self.vented += self.bladder.gas_moles
            self.bladder = replace(self.bladder, fill_volume=0.0, gas_moles=0.0)
        self.max_depth = max(self.max_depth, self.kin.depth)
        self.check_ledger()

    def _stalled(self) -> bool:
        """Inflation requested but the supply cannot beat the back pressure."""
        if self.scenario.instantaneous_pneumatics or self.ctrl.mode is not Mode.INFLATING:
            return False
        if self.bladder.fill_volume >= self.bladder.capacity:
            return False
        back = self.p_hydro() + self.bladder.inflation_differential
        return (
            self.scenario.regulator.setpoint <= back
            and self.f_net() <= 0.0
        )

    # -- main loop ----------------------------------------------------

    def integrate_until(self, t_target: float) -> None:
        while self.t < t_target - _TIME_EPS and self.termination is None:
            if self.apply_controller():
                return
            h = t_target - self.t
            trial = self._advance(h)
            if self._crossed(trial[0].depth):
                h = self._first_crossing(h)
                trial = self._advance(h)
            self._commit(trial)
            self.t += h
            if self._crossed(self.kin.depth):
                # Land the transition exactly at the crossing sample.
                if self.apply_controller():
                    return

    def _first_crossing(self, h_max: float) -> float:
        lo, hi = 0.0, h_max
        while hi - lo > EVENT_TIME_TOLERANCE:
            mid = 0.5 * (lo + hi)
            trial = self._advance(mid)
            if self._crossed(trial[0].depth):
                hi = mid
            else:
                lo = mid
        return hi

    def run(self) -> tuple[TrajectoryLog, MissionSummary]:
        self.emit()
        grid_index = 0
        dt = self.scenario.dt
        while self.termination is None:
            if self.t >= self.scenario.max_time - _TIME_EPS:
                self.termination = "time limit reached"
                break
            grid_index += 1
            t_target = min(grid_index * dt, self.scenario.max_time)
            self.integrate_until(t_target)
            if self.termination is None:
                self.emit()
                if self._stalled():
                    self.termination = (
                        "stalled: supply cannot overcome back pressure at depth"
                    )
        self.emit()
        return self.log, self.summary()

    def summary(self) -> MissionSummary:
        gas_used = self.start_moles - self.cartridge.gas_remaining
        if self.cartridge.initial_moles > 0.0:
            energy = self.cartridge.energy_full * gas_used / self.cartridge.initial_moles
        else:
            energy = 0.0
        return MissionSummary(
            cycles_completed=self.ctrl.transition_count // 2,
            total_range=self.kin.x,
            total_time=self.t,
            max_depth=self.max_depth,
            gas_used=gas_used,
            energy_used=energy,
            termination_reason=self.termination or "",
        )


def run_mission(
    design: GliderDesign, scenario: Scenario, observer=None
) -> tuple[TrajectoryLog, MissionSummary]:
    """Run a mission to completion.

    Deterministic: identical inputs produce identical logs.  ``observer``, if
    given, is called with the internal run state at every logged row (used by
    tests to audit the gas ledger).
    """
    check_feasibility(design, scenario)
    return _MissionRun(design, scenario, observer).run()


def detect_cycle_events(log: TrajectoryLog) -> list[CycleEvent]:
    """Extract snap transitions and per-leg depth extremes from a log.

    NADIR is the deepest sample between a SNAP_THROUGH and the following
    SNAP_BACK (or the end of the log); APEX is the shallowest sample after a
    SNAP_BACK, analogously.  A log with no transitions yields no events.
    """
    rows = log.rows
    if not rows:
        raise ValueError("empty trajectory log")

    snaps: list[tuple[int, str]] = []
    for i, row in enumerate(rows):
        if not row.event:
            continue
        for name in row.event.split(";"):
            if name in ("SNAP_THROUGH", "SNAP_BACK"):
                snaps.append((i, name))

    events: list[CycleEvent] = []
    for k, (i, name) in enumerate(snaps):
        row = rows[i]
        events.append(CycleEvent(kind=name, t=row.t, depth=row.depth))
        j_end = snaps[k + 1][0] if k + 1 < len(snaps) else len(rows) - 1
        segment = rows[i : j_end + 1]
        if not segment:
            continue
        if name == "SNAP_THROUGH":
            extreme = max(segment, key=lambda r: r.depth)
            events.append(CycleEvent(kind="NADIR", t=extreme.t, depth=extreme.depth))
        else:
            extreme = min(segment, key=lambda r: r.depth)
            events.append(CycleEvent(kind="APEX", t=extreme.t, depth=extreme.depth))
    events.sort(key=lambda e: e.t)
    return events


def calibrate_drag_area(
    design: GliderDesign,
    scenario: Scenario,
    target_cycle_time: float = 90.0,
    bounds: tuple[float, float] = (1e-3, 1.0),
    tolerance: float = 0.25,
    max_iterations: int = 48,
) -> float:
    """Drag area that makes the mean dive-climb cycle last ``target_cycle_time``.

    Mean cycle time is measured to the last completed cycle (final SNAP_BACK).
    Larger drag area slows the vehicle and lengthens cycles, so the target is
    bracketed and solved by bisection.
    """

    def mean_cycle_time(c_d_a: float) -> float:
        trial = replace(scenario, drag=replace(scenario.drag, c_d_a=c_d_a))
        log, summary = run_mission(design, trial)
        backs = [
            e for e in detect_cycle_events(log) if e.kind == "SNAP_BACK"
        ]
        if not backs:
            raise ScenarioError(
                "zero cycles", f"no completed cycle with drag area {c_d_a:.6g}"
            )
        return backs[-1].t / len(backs)

    lo, hi = bounds
    f_lo = mean_cycle_time(lo) - target_cycle_time
    f_hi = mean_cycle_time(hi) - target_cycle_time
    if f_lo > 0.0 or f_hi < 0.0:
        raise ValueError("target cycle time is not bracketed by the drag area bounds")
    for _ in range(max_iterations):
        mid = math.sqrt(lo * hi)  # geometric mid suits the wide positive range
        err = mean_cycle_time(mid) - target_cycle_time
        if abs(err) < tolerance:
            return mid
        if err < 0.0:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)
