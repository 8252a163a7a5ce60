"""Two-state pressure-threshold controller realized by the bistable valve.

The controller reads the gauge hydrostatic pressure and switches between
inflating and deflating the bladder: it arms inflation when the pressure rises
to the upper threshold and returns to deflation when it falls to the lower
one.  Comparisons are inclusive (>= at the top, <= at the bottom) so behavior
at exact threshold values is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .physics import PhysicalConstants, depth_for_pressure, hydrostatic_pressure
from .pneumatics import ValveModel, snap_back_threshold, snap_through_threshold


class Mode(enum.Enum):
    INFLATING = "INFLATING"
    DEFLATING = "DEFLATING"


@dataclass(frozen=True)
class ControllerState:
    mode: Mode
    p_high: float  # Pa gauge, switch to INFLATING at or above
    p_low: float  # Pa gauge, switch to DEFLATING at or below
    transition_count: int = 0

    def __post_init__(self) -> None:
        if not self.p_high > self.p_low:
            raise ValueError("p_high must exceed p_low (non-empty hysteresis band)")
        if self.transition_count < 0:
            raise ValueError("transition_count must be non-negative")


def step(state: ControllerState, p_hydro: float) -> ControllerState:
    """Advance the controller one observation.  Total and pure; at most one flip."""
    if state.mode is Mode.DEFLATING and p_hydro >= state.p_high:
        return replace(
            state, mode=Mode.INFLATING, transition_count=state.transition_count + 1
        )
    if state.mode is Mode.INFLATING and p_hydro <= state.p_low:
        return replace(
            state, mode=Mode.DEFLATING, transition_count=state.transition_count + 1
        )
    return state


def thresholds_from_valve(
    valve: ValveModel,
    constants: PhysicalConstants,
    tolerance: float = 1.0,
    max_iterations: int = 100,
) -> tuple[float, float]:
    """Controller thresholds implied by the valve in free flight.

    In flight there is no externally applied pressure, so the valve flips at
    the depth where the hydrostatic pressure alone meets the threshold.  That
    depth satisfies a fixed point: the total pressure to flip, evaluated at
    the depth corresponding to the current pressure iterate.  Iterated to
    ``tolerance`` Pa; raises if it fails to settle within ``max_iterations``.
    """

    def solve(threshold_fn, start: float) -> float:
        p = start
        for _ in range(max_iterations):
            depth = max(0.0, depth_for_pressure(p, constants))
            p_next = threshold_fn(valve, depth, constants) + hydrostatic_pressure(
                depth, constants
            )
            if abs(p_next - p) < tolerance:
                return p_next
            p = p_next
        raise ValueError(
            "threshold fixed point did not converge; check the valve configuration"
        )

    p_high = solve(snap_through_threshold, valve.p_snap_through)
    p_low = solve(snap_back_threshold, valve.p_snap_back)
    return p_high, p_low
