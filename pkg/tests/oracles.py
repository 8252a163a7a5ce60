"""Independent brute-force oracles used by the tests.

These deliberately avoid the code paths they check: volumes are estimated by
rejection sampling over the same parametric solid, and valve thresholds are
evaluated from the closed-form isothermal compression law rather than the
solver.
"""

import numpy as np

from glidesim.geometry import WingParams, naca_half_thickness
from glidesim.physics import PhysicalConstants
from glidesim.pneumatics import ValveModel


def monte_carlo_volume(params: WingParams, n_samples: int, seed: int) -> float:
    """Stratified rejection-sampling volume of the parametric hull, m^3."""
    rng = np.random.default_rng(seed)
    t = params.thickness_ratio
    # Conservative per-chord half-thickness bound for the sampling box.
    grid = np.linspace(0.0, 1.0, 4001)
    y_max = max(naca_half_thickness(float(u), t) for u in grid) * 1.0000001

    def inside(u: np.ndarray, z_over_c: np.ndarray) -> np.ndarray:
        yt = np.array([naca_half_thickness(float(ui), t) for ui in u])
        return np.abs(z_over_c) <= yt

    # Main body: sample spanwise station, then a snug box around that section.
    span = params.half_span
    s = rng.uniform(0.0, span, n_samples)
    chords = np.array([params.chord(float(si)) for si in s])
    u = rng.uniform(0.0, 1.0, n_samples)
    z = rng.uniform(-y_max, y_max, n_samples)
    hits = inside(u, z)
    box_areas = chords * (2.0 * y_max * chords)  # chord x thickness box per station
    body = 2.0 * span * float(np.mean(box_areas * hits))

    winglets = 0.0
    if params.wingtip_height > 0.0:
        u2 = rng.uniform(0.0, 1.0, n_samples // 4)
        z2 = rng.uniform(-y_max, y_max, n_samples // 4)
        hit_fraction = float(np.mean(inside(u2, z2)))
        section_area = params.chord_tip * (2.0 * y_max * params.chord_tip) * hit_fraction
        winglets = 2.0 * section_area * params.wingtip_height
    return body + winglets


def threshold_closed_form(
    valve: ValveModel,
    depth: float,
    constants: PhysicalConstants,
    snap_back: bool = False,
) -> float:
    """Boyle's-law evaluation of the applied flip pressure, no root solving."""
    v_s = valve.total_sealed_volume
    delta = -valve.membrane_displacement_volume if snap_back else valve.membrane_displacement_volume
    back = constants.p_atm * v_s / (v_s - delta) - constants.p_atm
    flip = valve.p_snap_back if snap_back else valve.p_snap_through
    hydro = constants.hydrostatic_gradient * depth
    return flip + back - hydro
