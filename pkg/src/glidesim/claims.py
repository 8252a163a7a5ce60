"""Reference prototype figures and the report that checks a run against them.

The reference figures describe the physical prototype this simulator is tuned
to reproduce: a vehicle cycling between the surface and 4 m depth, covering
15 m per 90 s cycle, and completing 10 cycles (150 m, 900 s) on one 16 g gas
cartridge of 3.82 kJ.  ``verify_claims`` grades a mission summary against
them, claim by claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType

from .mission import MissionSummary


@dataclass(frozen=True)
class ReferenceClaims:
    max_depth: float = 4.0  # m
    per_cycle_range: float = 15.0  # m
    cycle_time: float = 90.0  # s
    cycles: int = 10
    total_range: float = 150.0  # m
    total_time: float = 900.0  # s
    cartridge_energy: float = 3820.0  # J
    power: float = 4.2  # W
    efficiency: float = 28.0  # mW/m
    glider_mass: float = 3.722  # kg
    hull_volume_cm3: float = 3861.12
    bladder_count: int = 3
    bladder_volume_each_cm3: float = 100.0


#: Where each figure comes from in the prototype write-up.
CLAIM_SOURCES = MappingProxyType(
    {
        "max_depth": "pool trials, reported dive depth",
        "per_cycle_range": "pool trials, distance per cycle",
        "cycle_time": "pool trials, cycle duration",
        "cycles": "pool trials, cycles per cartridge",
        "total_range": "pool trials, total range per cartridge",
        "total_time": "pool trials, total deployment time",
        "cartridge_energy": "16 g CO2 cartridge energy content",
        "power": "reported average power",
        "efficiency": "reported power per distance",
        "glider_mass": "dimension table, total weight",
        "hull_volume_cm3": "dimension table, total displaced volume",
        "bladder_count": "dimension table, balloons per bladder",
        "bladder_volume_each_cm3": "dimension table, volume per balloon",
    }
)

REFERENCE_CLAIMS = ReferenceClaims()

#: Default tolerances: relative where < 1, absolute counts for ``cycles``.
DEFAULT_TOLERANCES = MappingProxyType(
    {
        "cycles": 1.0,
        "total_range": 0.10,
        "total_time": 0.10,
        "max_depth": 0.05,
        "per_cycle_range": 0.10,
        "cycle_time": 0.10,
        "power": 0.02,
        "efficiency": 0.02,
    }
)


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    measured: float
    target: float
    tolerance: str
    passed: bool


def _rel_ok(measured: float, target: float, rel: float) -> bool:
    return math.isfinite(measured) and abs(measured - target) <= rel * abs(target)


def verify_claims(
    summary: MissionSummary,
    claims: ReferenceClaims = REFERENCE_CLAIMS,
    tolerances=DEFAULT_TOLERANCES,
) -> list[ClaimCheck]:
    """Grade a mission summary against the reference figures.

    Mission-derived claims (cycles, ranges, times, depth) are read from the
    summary.  The power and efficiency rows check the internal arithmetic of
    the reference figures themselves: energy over deployment time, and that
    power spread over the total range.
    """
    checks: list[ClaimCheck] = []

    cyc_tol = tolerances["cycles"]
    checks.append(
        ClaimCheck(
            "cycles",
            float(summary.cycles_completed),
            float(claims.cycles),
            f"+/- {cyc_tol:g}",
            abs(summary.cycles_completed - claims.cycles) <= cyc_tol,
        )
    )

    per_cycle = (
        summary.total_range / summary.cycles_completed
        if summary.cycles_completed
        else math.nan
    )
    cycle_time = (
        summary.total_time / summary.cycles_completed
        if summary.cycles_completed
        else math.nan
    )
    derived_power = claims.cartridge_energy / claims.total_time
    derived_efficiency = derived_power / claims.total_range * 1000.0

    for name, measured, target in (
        ("total_range", summary.total_range, claims.total_range),
        ("total_time", summary.total_time, claims.total_time),
        ("max_depth", summary.max_depth, claims.max_depth),
        ("per_cycle_range", per_cycle, claims.per_cycle_range),
        ("cycle_time", cycle_time, claims.cycle_time),
        ("power", derived_power, claims.power),
        ("efficiency", derived_efficiency, claims.efficiency),
    ):
        rel = tolerances[name]
        checks.append(
            ClaimCheck(name, measured, target, f"+/- {rel:.0%}", _rel_ok(measured, target, rel))
        )
    return checks


def format_report(checks: list[ClaimCheck]) -> str:
    """Fixed-width pass/fail table for terminal output."""
    lines = [
        f"{'claim':<17} {'measured':>12} {'target':>10} {'tolerance':>10} {'result':>7}",
        "-" * 60,
    ]
    for c in checks:
        lines.append(
            f"{c.name:<17} {c.measured:>12.4g} {c.target:>10.4g} "
            f"{c.tolerance:>10} {'PASS' if c.passed else 'FAIL':>7}"
        )
    return "\n".join(lines)
