"""Closed-form range model, power efficiency, and the published-systems ledger.

The closed-form model budgets the cartridge as a pressure-volume product and
charges every dive cycle one bladder fill at the gauge supply pressure for the
cycling depth; range is the cycle count times the depth-per-cycle distance.
The simulator's mole-based accounting is the physically stricter alternative;
see :mod:`glidesim.pneumatics` for the two conventions.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_HYDROSTATIC_GRADIENT = 10_000.0  # Pa/m


@dataclass(frozen=True)
class RangeModelInput:
    p_cartridge: float  # Pa
    v_cartridge: float  # m^3
    p_swim_bladder: float  # Pa gauge, differential to inflate at the surface
    v_swim_bladder: float  # m^3 per fill
    depth: float  # m, cycling depth

    def __post_init__(self) -> None:
        if self.p_cartridge <= 0.0 or self.v_cartridge <= 0.0:
            raise ValueError("cartridge pressure and volume must be positive")
        if self.p_swim_bladder < 0.0:
            raise ValueError("p_swim_bladder must be non-negative")
        if self.v_swim_bladder <= 0.0:
            raise ValueError("v_swim_bladder must be positive")
        if self.depth <= 0.0:
            raise ValueError("depth must be positive")


def closed_form_range(
    model: RangeModelInput, hydrostatic_gradient: float = DEFAULT_HYDROSTATIC_GRADIENT
) -> float:
    """Total range (m) of the gauge-accounted gas budget model."""
    denominator = model.p_swim_bladder + hydrostatic_gradient * model.depth
    if denominator <= 0.0:
        raise ValueError("supply pressure denominator must be positive")
    cycles = (model.p_cartridge / denominator) * (
        model.v_cartridge / model.v_swim_bladder
    )
    return cycles * model.depth


def power_and_efficiency(
    total_energy: float, total_time: float, total_distance: float
) -> tuple[float, float]:
    """Average power (W) and power per distance (mW/m)."""
    if total_time <= 0.0:
        raise ValueError("total_time must be positive")
    if total_distance <= 0.0:
        raise ValueError("total_distance must be positive")
    if total_energy < 0.0:
        raise ValueError("total_energy must be non-negative")
    power = total_energy / total_time
    efficiency = power / total_distance * 1000.0
    return power, efficiency


@dataclass(frozen=True)
class EfficiencyRecord:
    """One published system in the comparison ledger.

    ``estimated`` flags rows whose figures were derived rather than reported.
    The efficiency unit is mW/m except where a source only provided energy per
    distance (flagged by ``efficiency_unit``); such values are not comparable.
    """

    system_name: str
    propulsion: str
    power_efficiency: float
    gliding_range: float | None  # m
    gliding_depth: float | None  # m
    deployment_time: float | None  # h
    estimated: bool
    efficiency_unit: str = "mW/m"

    def __post_init__(self) -> None:
        for name in ("power_efficiency", "gliding_range", "gliding_depth", "deployment_time"):
            value = getattr(self, name)
            if value is not None and value < 0.0:
                raise ValueError(f"{name} must be non-negative when present")


_COMPARISON_ROWS = (
    EfficiencyRecord(
        "Seaglider", "Mechanical / Electrical", 3.84e-4, 2.826e6, 1019.0, 3144.0, True
    ),
    EfficiencyRecord(
        "Slocum",
        "Hybrid gliding propulsion",
        42.8125,
        None,
        100.0,
        None,
        False,
        efficiency_unit="J/m",  # energy per distance; no deployment time published
    ),
    EfficiencyRecord("Tianjin University", "Thermal", 2.0697, 6.77e5, 1000.0, 648.0, True),
    EfficiencyRecord("Wave Glider", "Wave and Solar", 2.16e-2, 3.982e6, None, 5928.0, True),
    EfficiencyRecord(
        "Fast Moving Manta Ray", "Ionic Hydrogel and DEA", 42.10, 128.7, None, 3.25, True
    ),
    EfficiencyRecord(
        "Wireless Flatfish", "Thermoelectric Pneumatic Actuator", 3.236e5, 72.0, 10.5, 1.0, True
    ),
    EfficiencyRecord("SoFi", "Hydraulic Pump", 178.67, 296.8, 8.1, 0.66, True),
    EfficiencyRecord("Our Implementation", "Fluidic circuit", 28.0, 150.0, 4.0, 0.25, False),
)


def comparison_table() -> list[EfficiencyRecord]:
    """Reference efficiencies of published underwater systems, ours included."""
    return list(_COMPARISON_ROWS)
