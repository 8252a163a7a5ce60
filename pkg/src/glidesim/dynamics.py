"""Longitudinal glide kinematics.

Quasi-steady point-mass model: the vehicle moves along a straight glide path
set by the descent or ascent angle, at a speed that relaxes toward the
terminal speed of the current net force.  The relaxation rate comes from the
quadratic-drag time constant tau = m_eff / (rho * CdA * v + eps), where the
small ``eps`` keeps the rate finite at rest.  Integration is fixed-step RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .controller import Mode


@dataclass(frozen=True)
class GlideGeometry:
    """Glide path angles from the horizontal, in radians."""

    theta: float  # descent angle, below horizontal
    phi: float  # ascent angle, above horizontal

    def __post_init__(self) -> None:
        for name in ("theta", "phi"):
            angle = getattr(self, name)
            if not 0.0 < angle < math.pi / 2.0:
                raise ValueError(f"{name} must lie strictly between 0 and pi/2")


@dataclass(frozen=True)
class DragModel:
    """Lumped quadratic drag: force = 0.5 * rho * c_d_a * v^2."""

    c_d_a: float  # m^2, drag coefficient times reference area
    rho: float  # kg/m^3

    def __post_init__(self) -> None:
        if self.c_d_a <= 0.0:
            raise ValueError("c_d_a must be strictly positive")
        if self.rho <= 0.0:
            raise ValueError("rho must be strictly positive")


@dataclass(frozen=True)
class KinematicState:
    depth: float = 0.0  # m, positive down, 0 at the surface
    x: float = 0.0  # m, horizontal distance traveled
    v_along_path: float = 0.0  # m/s, speed along the glide path

    def __post_init__(self) -> None:
        if self.depth < 0.0:
            raise ValueError("depth must be non-negative")
        if self.v_along_path < 0.0:
            raise ValueError("v_along_path must be non-negative")


def terminal_speed(f_net: float, drag: DragModel) -> float:
    """Steady glide speed where drag balances the net force magnitude."""
    return math.sqrt(2.0 * abs(f_net) / (drag.rho * drag.c_d_a))


def step_kinematics(
    state: KinematicState,
    mode: Mode,
    f_net: float,
    geometry: GlideGeometry,
    drag: DragModel,
    dt: float,
    effective_mass: float,
    speed_epsilon: float = 0.05,
) -> KinematicState:
    """One RK4 step of length ``dt``.

    The path direction follows the sign of the net force (sinking descends at
    -theta, rising ascends at +phi); the controller mode only breaks the
    f_net == 0 tie.  A vehicle at the surface with non-negative net force is
    parked: depth and x hold, speed resets.
    """
    if dt <= 0.0:
        raise ValueError("dt must be strictly positive")
    if effective_mass <= 0.0:
        raise ValueError("effective_mass must be strictly positive")

    if f_net > 0.0 or (f_net == 0.0 and mode is Mode.INFLATING):
        angle = geometry.phi
        depth_sign = -1.0  # ascending: depth decreases
    else:
        angle = geometry.theta
        depth_sign = 1.0

    if state.depth == 0.0 and depth_sign < 0.0:
        return KinematicState(depth=0.0, x=state.x, v_along_path=0.0)

    v_term = terminal_speed(f_net, drag)
    sin_a = math.sin(angle)
    cos_a = math.cos(angle)
    rho_cda = drag.rho * drag.c_d_a

    def rates(v: float) -> tuple[float, float, float]:
        dv = (v_term - v) * (rho_cda * v + speed_epsilon) / effective_mass
        return depth_sign * v * sin_a, v * cos_a, dv

    v0 = state.v_along_path
    k1 = rates(v0)
    k2 = rates(v0 + 0.5 * dt * k1[2])
    k3 = rates(v0 + 0.5 * dt * k2[2])
    k4 = rates(v0 + dt * k3[2])

    depth = state.depth + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    x = state.x + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    v = v0 + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])

    return KinematicState(depth=max(0.0, depth), x=x, v_along_path=max(0.0, v))
