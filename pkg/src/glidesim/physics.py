"""Buoyancy and hydrostatic force balance for a variable-buoyancy glider.

Sign conventions used throughout the package:

* forces are positive upward (positive net force makes the glider rise),
* depth is positive downward, with 0 at the free surface,
* pressures are gauge (relative to atmosphere) unless a name says absolute.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """Ambient water and atmosphere properties.

    Defaults describe a fresh-water pool at standard gravity with the usual
    10 kPa of hydrostatic pressure per meter of depth.
    """

    rho_water: float = 1000.0  # kg/m^3
    g: float = 9.81  # m/s^2
    hydrostatic_gradient: float = 10_000.0  # Pa/m
    p_atm: float = 101_325.0  # Pa, absolute

    def __post_init__(self) -> None:
        for name in ("rho_water", "g", "hydrostatic_gradient", "p_atm"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class GliderDesign:
    """Static mass/volume properties that fix the trim of the vehicle."""

    mass: float  # kg, total vehicle mass
    hull_volume: float  # m^3, displaced volume with the bladder empty
    bladder_capacity: float  # m^3, maximum bladder displacement

    def __post_init__(self) -> None:
        if self.mass <= 0.0:
            raise ValueError("mass must be strictly positive")
        if self.hull_volume <= 0.0:
            raise ValueError("hull_volume must be strictly positive")
        if self.bladder_capacity < 0.0:
            raise ValueError("bladder_capacity must be non-negative")

    @classmethod
    def from_deflated_net_force(
        cls,
        hull_volume: float,
        bladder_capacity: float,
        deflated_net_force: float,
        constants: PhysicalConstants,
    ) -> "GliderDesign":
        """Back out the mass that yields a given net force with the bladder empty.

        A slightly negative ``deflated_net_force`` realizes the usual trim where
        the vehicle sinks by default and the bladder provides the lift.
        """
        mass = (constants.rho_water * hull_volume * constants.g - deflated_net_force) / constants.g
        if mass <= 0.0:
            raise ValueError("requested deflated net force implies non-positive mass")
        return cls(mass=mass, hull_volume=hull_volume, bladder_capacity=bladder_capacity)


@dataclass(frozen=True)
class ForceBalance:
    """Decomposition of the vertical force on the vehicle, in newtons (up positive)."""

    f_buoyancy_glider: float
    f_gravity_glider: float
    f_buoyancy_bladder: float
    f_net: float

    def __post_init__(self) -> None:
        expected = (self.f_buoyancy_glider - self.f_gravity_glider) + self.f_buoyancy_bladder
        if self.f_net != expected:
            raise ValueError(
                "inconsistent force balance: f_net must equal "
                "(f_buoyancy_glider - f_gravity_glider) + f_buoyancy_bladder"
            )


def hydrostatic_pressure(depth: float, constants: PhysicalConstants) -> float:
    """Gauge pressure (Pa) at ``depth`` meters below the surface."""
    if depth < 0.0:
        raise ValueError("depth must be non-negative")
    return constants.hydrostatic_gradient * depth


def depth_for_pressure(p_gauge: float, constants: PhysicalConstants) -> float:
    """Depth (m) at which the gauge hydrostatic pressure equals ``p_gauge``."""
    return p_gauge / constants.hydrostatic_gradient


def bladder_buoyancy_force(displaced_volume: float, constants: PhysicalConstants) -> float:
    """Buoyant force (N) of a bladder displacing ``displaced_volume`` m^3 of water."""
    if displaced_volume < 0.0:
        raise ValueError("displaced_volume must be non-negative")
    return displaced_volume * constants.rho_water * constants.g


def net_force(
    design: GliderDesign, bladder_volume: float, constants: PhysicalConstants
) -> ForceBalance:
    """Full vertical force balance at a given bladder fill volume."""
    if not 0.0 <= bladder_volume <= design.bladder_capacity:
        raise ValueError(
            f"bladder_volume {bladder_volume!r} outside [0, {design.bladder_capacity!r}]"
        )
    f_buoy = design.hull_volume * constants.rho_water * constants.g
    f_grav = design.mass * constants.g
    f_bladder = bladder_buoyancy_force(bladder_volume, constants)
    return ForceBalance(
        f_buoyancy_glider=f_buoy,
        f_gravity_glider=f_grav,
        f_buoyancy_bladder=f_bladder,
        f_net=(f_buoy - f_grav) + f_bladder,
    )
