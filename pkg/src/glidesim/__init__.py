"""glidesim: deterministic simulator and design-space optimizer for a
fluidically controlled buoyancy glider."""

from .physics import (
    ForceBalance,
    GliderDesign,
    PhysicalConstants,
    bladder_buoyancy_force,
    hydrostatic_pressure,
    net_force,
)
from .pneumatics import (
    Cartridge,
    Regulator,
    SwimBladder,
    ValveModel,
    cartridge_energy,
    inflate_step,
    snap_back_threshold,
    snap_through_threshold,
    vent_step,
)
from .controller import ControllerState, Mode, step, thresholds_from_valve
from .dynamics import DragModel, GlideGeometry, KinematicState, step_kinematics, terminal_speed
from .mission import (
    MissionSummary,
    Scenario,
    ScenarioError,
    TrajectoryLog,
    detect_cycle_events,
    run_mission,
)
from .analysis import (
    EfficiencyRecord,
    RangeModelInput,
    closed_form_range,
    comparison_table,
    power_and_efficiency,
)
from .geometry import WingParams, displaced_volume, export_stl, naca_half_thickness
from .optimize import DesignSpace, EvaluatedCandidate, evaluate, grid_search, nelder_mead
from .claims import REFERENCE_CLAIMS, ReferenceClaims, verify_claims
from .config import ConfigError, load_scenario

__version__ = "0.1.0"

__all__ = [
    "ForceBalance",
    "GliderDesign",
    "PhysicalConstants",
    "bladder_buoyancy_force",
    "hydrostatic_pressure",
    "net_force",
    "Cartridge",
    "Regulator",
    "SwimBladder",
    "ValveModel",
    "cartridge_energy",
    "inflate_step",
    "snap_back_threshold",
    "snap_through_threshold",
    "vent_step",
    "ControllerState",
    "Mode",
    "step",
    "thresholds_from_valve",
    "DragModel",
    "GlideGeometry",
    "KinematicState",
    "step_kinematics",
    "terminal_speed",
    "MissionSummary",
    "Scenario",
    "ScenarioError",
    "TrajectoryLog",
    "detect_cycle_events",
    "run_mission",
    "EfficiencyRecord",
    "RangeModelInput",
    "closed_form_range",
    "comparison_table",
    "power_and_efficiency",
    "WingParams",
    "displaced_volume",
    "export_stl",
    "naca_half_thickness",
    "DesignSpace",
    "EvaluatedCandidate",
    "evaluate",
    "grid_search",
    "nelder_mead",
    "REFERENCE_CLAIMS",
    "ReferenceClaims",
    "verify_claims",
    "ConfigError",
    "load_scenario",
]
