"""Pneumatic circuit: bistable valve, regulator, swim bladder, and gas cartridge.

The bistable valve is the hysteresis element of the controller.  One of its
chambers is sealed at atmospheric pressure; flipping the membrane compresses
that trapped gas, so the pressure at which the membrane snaps depends on the
sealed volume (Boyle's law) and on depth.  The model here treats everything
as isothermal ideal gas.

Gas is tracked in moles.  Two accounting conventions are supported:

* ``"absolute"`` (default) charges the cartridge the true ideal-gas cost of a
  fill, i.e. at the absolute pressure of the gas entering the bladder;
* ``"gauge"`` charges only the gauge pressure.  This reproduces the simple
  closed-form range model (see :mod:`glidesim.analysis`), which budgets each
  fill at the gauge supply pressure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .physics import PhysicalConstants, hydrostatic_pressure

GAS_CONSTANT = 8.314462618  # J/(mol K)

#: Gas accounting conventions for fill/vent bookkeeping.
ACCOUNTING_MODES = ("absolute", "gauge")


class ModelSingularityError(ValueError):
    """Raised when the membrane displacement is not smaller than the sealed volume."""


def membrane_swept_volume(opening_radius: float, opening_angle_deg: float) -> float:
    """Gas volume swept by the membrane between its two stable states.

    Each stable state is approximated as a spherical cap over the circular
    opening, meeting the base plane at the opening angle; the swept volume is
    the lens between the two mirror-image caps (twice one cap volume).
    """
    if opening_radius <= 0.0:
        raise ValueError("opening_radius must be positive")
    if not 0.0 < opening_angle_deg < 180.0:
        raise ValueError("opening_angle_deg must lie in (0, 180)")
    alpha = math.radians(opening_angle_deg)
    sphere_radius = opening_radius / math.sin(alpha)
    cap_height = sphere_radius * (1.0 - math.cos(alpha))
    cap_volume = math.pi * cap_height * cap_height * (3.0 * sphere_radius - cap_height) / 3.0
    return 2.0 * cap_volume


# Default membrane: 3 mm thick, 87.5 degree opening over a 15 mm radius seat.
DEFAULT_MEMBRANE_SWEPT_VOLUME = membrane_swept_volume(0.015, 87.5)


@dataclass(frozen=True)
class ValveModel:
    """Bistable valve with a sealed back chamber.

    ``p_snap_through`` and ``p_snap_back`` are the intrinsic membrane flip
    pressures (differential across the membrane).  The sealed chamber volume
    plus any add-on tubing volume set how much the trapped gas pushes back
    when the membrane moves, which shifts the observed thresholds.
    """

    p_snap_through: float = 10_000.0  # Pa gauge, differential to flip forward
    p_snap_back: float = 1_000.0  # Pa gauge, differential below which it returns
    membrane_displacement_volume: float = DEFAULT_MEMBRANE_SWEPT_VOLUME  # m^3
    sealed_chamber_volume: float = 5.0e-5  # m^3, base chamber
    additional_sealed_volume: float = 0.0  # m^3, kinked-tube add-on
    membrane_thickness: float = 3.0e-3  # m
    opening_angle: float = 87.5  # degrees

    def __post_init__(self) -> None:
        if not self.p_snap_through > self.p_snap_back >= 0.0:
            raise ValueError("require p_snap_through > p_snap_back >= 0 (hysteresis band)")
        for name in (
            "membrane_displacement_volume",
            "sealed_chamber_volume",
            "additional_sealed_volume",
        ):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")
        if self.membrane_displacement_volume > self.total_sealed_volume:
            raise ValueError("membrane displacement cannot exceed the sealed volume")

    @property
    def total_sealed_volume(self) -> float:
        return self.sealed_chamber_volume + self.additional_sealed_volume


def sealed_backpressure(valve: ValveModel, displaced_volume: float, p_atm: float) -> float:
    """Gauge pressure of the sealed chamber after the membrane displaces into it.

    Positive ``displaced_volume`` compresses the trapped gas; negative values
    expand it.  Isothermal, sealed at ``p_atm``.
    """
    v_s = valve.total_sealed_volume
    if displaced_volume >= v_s:
        raise ModelSingularityError(
            "membrane displacement reaches the sealed volume; back-pressure diverges"
        )
    return p_atm * v_s / (v_s - displaced_volume) - p_atm


def _bisect_increasing(f, lo: float, hi: float, rel_tol: float) -> float:
    """Root of an increasing function by bracket growth + bisection."""
    flo, fhi = f(lo), f(hi)
    # Grow the bracket until it straddles the root.
    span = hi - lo
    while flo > 0.0:
        hi, fhi = lo, flo
        lo -= span
        span *= 2.0
        flo = f(lo)
    while fhi < 0.0:
        lo, flo = hi, fhi
        hi += span
        span *= 2.0
        fhi = f(hi)
    while hi - lo > rel_tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _threshold(
    valve: ValveModel,
    depth: float,
    constants: PhysicalConstants,
    flip_pressure: float,
    displacement: float,
) -> float:
    if depth < 0.0:
        raise ValueError("depth must be non-negative")
    p_hydro = hydrostatic_pressure(depth, constants)
    back = sealed_backpressure(valve, displacement, constants.p_atm)

    def residual(p_applied: float) -> float:
        return (p_applied + p_hydro - back) - flip_pressure

    return _bisect_increasing(residual, -1.0e6, 1.0e6, rel_tol=1e-9)


def snap_through_threshold(
    valve: ValveModel, depth: float, constants: PhysicalConstants
) -> float:
    """Applied gauge pressure, beyond hydrostatic, that flips the membrane forward.

    Flipping compresses the sealed chamber by the membrane displacement, so the
    observed threshold exceeds the intrinsic snap-through pressure and falls
    with depth (the hydrostatic head does part of the work).
    """
    return _threshold(
        valve, depth, constants, valve.p_snap_through, valve.membrane_displacement_volume
    )


def snap_back_threshold(valve: ValveModel, depth: float, constants: PhysicalConstants) -> float:
    """Applied gauge pressure, beyond hydrostatic, at which the membrane returns."""
    return _threshold(
        valve, depth, constants, valve.p_snap_back, -valve.membrane_displacement_volume
    )


@dataclass(frozen=True)
class SwimBladder:
    """Inflatable displacement chamber.

    ``inflation_differential`` is the extra pressure needed to inflate the
    elastomer at the surface (zero for a slack bladder).  ``gas_moles`` tracks
    the ledgered gas content so conservation can be checked exactly.
    """

    capacity: float  # m^3
    fill_volume: float = 0.0  # m^3
    inflation_differential: float = 0.0  # Pa gauge
    gas_moles: float = 0.0  # mol

    def __post_init__(self) -> None:
        if self.capacity < 0.0:
            raise ValueError("capacity must be non-negative")
        if not 0.0 <= self.fill_volume <= self.capacity:
            raise ValueError("fill_volume must lie in [0, capacity]")
        if self.inflation_differential < 0.0:
            raise ValueError("inflation_differential must be non-negative")
        if self.gas_moles < 0.0:
            raise ValueError("gas_moles must be non-negative")


@dataclass(frozen=True)
class Regulator:
    """Pressure regulator holding a fixed gauge setpoint on its output."""

    setpoint: float  # Pa gauge

    def __post_init__(self) -> None:
        if self.setpoint <= 0.0:
            raise ValueError("setpoint must be strictly positive")


@dataclass(frozen=True)
class Cartridge:
    """Compressed-gas cartridge, tracked in moles of ideal gas."""

    p_cartridge: float  # Pa absolute
    v_cartridge: float  # m^3
    gas_remaining: float  # mol
    temperature: float = 293.15  # K
    energy_full: float = 3820.0  # J, usable energy of a fresh cartridge
    initial_moles: float = 0.0  # mol, content when fresh

    def __post_init__(self) -> None:
        if self.p_cartridge < 0.0 or self.v_cartridge < 0.0:
            raise ValueError("cartridge pressure and volume must be non-negative")
        if self.gas_remaining < 0.0:
            raise ValueError("gas_remaining must be non-negative")
        if self.temperature <= 0.0:
            raise ValueError("temperature must be strictly positive")
        if self.energy_full < 0.0:
            raise ValueError("energy_full must be non-negative")

    @classmethod
    def fresh(
        cls,
        p_cartridge: float,
        v_cartridge: float,
        temperature: float = 293.15,
        energy_full: float = 3820.0,
    ) -> "Cartridge":
        moles = p_cartridge * v_cartridge / (GAS_CONSTANT * temperature)
        return cls(
            p_cartridge=p_cartridge,
            v_cartridge=v_cartridge,
            gas_remaining=moles,
            temperature=temperature,
            energy_full=energy_full,
            initial_moles=moles,
        )


def cartridge_energy(cartridge: Cartridge) -> float:
    """Usable energy (J) left in the cartridge, prorated linearly with gas content."""
    if cartridge.initial_moles <= 0.0:
        return 0.0
    return cartridge.energy_full * (cartridge.gas_remaining / cartridge.initial_moles)


def _fill_pressure(depth: float, differential: float, constants: PhysicalConstants, accounting: str) -> float:
    """Pressure at which bladder gas is booked, per the accounting convention."""
    p = hydrostatic_pressure(depth, constants) + differential
    if accounting == "absolute":
        p += constants.p_atm
    elif accounting != "gauge":
        raise ValueError(f"unknown gas accounting mode {accounting!r}")
    return p


def inflate_step(
    bladder: SwimBladder,
    regulator: Regulator,
    cartridge: Cartridge,
    depth: float,
    dt: float,
    flow_coefficient: float,
    constants: PhysicalConstants,
    accounting: str = "absolute",
) -> tuple[SwimBladder, Cartridge]:
    """Advance the fill by one laminar-flow step; returns updated (bladder, cartridge).

    Flow rate is ``flow_coefficient`` times the positive part of the driving
    pressure (regulator setpoint minus bladder back pressure).  Gas moved into
    the bladder is removed from the cartridge mole for mole; an empty cartridge
    simply stops the flow.
    """
    if dt < 0.0:
        raise ValueError("dt must be non-negative")
    back_pressure = hydrostatic_pressure(depth, constants) + bladder.inflation_differential
    driving = regulator.setpoint - back_pressure
    if driving <= 0.0 or dt == 0.0:
        return bladder, cartridge

    dv = min(flow_coefficient * driving * dt, bladder.capacity - bladder.fill_volume)
    if dv <= 0.0:
        return bladder, cartridge

    p_fill = _fill_pressure(depth, bladder.inflation_differential, constants, accounting)
    cost_per_volume = p_fill / (GAS_CONSTANT * cartridge.temperature)
    if cost_per_volume > 0.0:
        affordable = cartridge.gas_remaining / cost_per_volume
        dv = min(dv, affordable)
        if dv <= 0.0:
            return bladder, cartridge
    dn = cost_per_volume * dv

    new_bladder = replace(
        bladder,
        fill_volume=bladder.fill_volume + dv,
        gas_moles=bladder.gas_moles + dn,
    )
    new_cartridge = replace(cartridge, gas_remaining=cartridge.gas_remaining - dn)
    return new_bladder, new_cartridge


def vent_step(
    bladder: SwimBladder,
    depth: float,
    dt: float,
    flow_coefficient: float,
    constants: PhysicalConstants,
    accounting: str = "absolute",
    temperature: float = 293.15,
) -> tuple[SwimBladder, float]:
    """Release bladder gas through the one-way vent; returns (bladder, vented moles).

    Driving pressure is the bladder internal pressure (ideal gas at the current
    fill) minus ambient.  The diode never lets flow reverse, so the fill is
    non-increasing here no matter the pressures.
    """
    if dt < 0.0:
        raise ValueError("dt must be non-negative")
    if bladder.fill_volume <= 0.0 or bladder.gas_moles <= 0.0 or dt == 0.0:
        return bladder, 0.0

    p_internal = bladder.gas_moles * GAS_CONSTANT * temperature / bladder.fill_volume
    # Internal pressure from the ledgered content; ambient in the same basis.
    p_ambient = hydrostatic_pressure(depth, constants)
    if accounting == "absolute":
        p_ambient += constants.p_atm
    elif accounting != "gauge":
        raise ValueError(f"unknown gas accounting mode {accounting!r}")

    driving = p_internal - p_ambient
    if driving <= 0.0:
        return bladder, 0.0

    dv = min(flow_coefficient * driving * dt, bladder.fill_volume)
    dn = bladder.gas_moles * (dv / bladder.fill_volume)
    new_bladder = replace(
        bladder,
        fill_volume=bladder.fill_volume - dv,
        gas_moles=bladder.gas_moles - dn,
    )
    return new_bladder, dn


def full_fill_moles(
    bladder: SwimBladder,
    depth: float,
    constants: PhysicalConstants,
    accounting: str = "absolute",
    temperature: float = 293.15,
) -> float:
    """Moles needed to top the bladder up to capacity at the given depth."""
    missing = bladder.capacity - bladder.fill_volume
    p_fill = _fill_pressure(depth, bladder.inflation_differential, constants, accounting)
    return p_fill * missing / (GAS_CONSTANT * temperature)


def calibrate_inflate_coefficient(
    capacity: float,
    regulator: Regulator,
    trigger_depth: float,
    constants: PhysicalConstants,
    fill_time: float = 5.0,
    inflation_differential: float = 0.0,
) -> float:
    """Flow coefficient such that a full fill at the trigger depth takes ``fill_time``."""
    driving = regulator.setpoint - (
        hydrostatic_pressure(trigger_depth, constants) + inflation_differential
    )
    if driving <= 0.0:
        raise ValueError("regulator setpoint cannot inflate at the trigger depth")
    return capacity / (driving * fill_time)
