"""Parametric blended-wing-body geometry with a constant NACA 0010 section.

The hull is described by spanwise segments: a constant-chord center body out
to l1, a linear taper from the root chord to the tip chord over l2, and a
constant-chord outer wing of length lb, optionally finished with vertical
wingtip plates.  The section everywhere is the symmetric four-digit thickness
profile scaled by the local chord.  Sweep shears sections backward without
changing their area, so displaced volume does not depend on it.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

# Symmetric four-digit thickness polynomial, closed trailing edge. The last
# coefficient is the -0.1036 variant, constructed by exact negation of the
# leading terms so the trailing-edge thickness evaluates to exactly zero.
_A0, _A1, _A2, _A3 = 0.2969, -0.1260, -0.3516, 0.2843
_A4 = -(_A0 + _A1 + _A2 + _A3)


def naca_half_thickness(x_over_c: float, thickness_ratio: float) -> float:
    """Half-thickness y_t/c of the symmetric profile at chordwise station x/c."""
    if not 0.0 <= x_over_c <= 1.0:
        raise ValueError("x_over_c must lie in [0, 1]")
    if thickness_ratio <= 0.0:
        raise ValueError("thickness_ratio must be positive")
    x = x_over_c
    return 5.0 * thickness_ratio * (
        _A0 * math.sqrt(x) + _A1 * x + _A2 * x * x + _A3 * x**3 + _A4 * x**4
    )


def section_area_coefficient(thickness_ratio: float) -> float:
    """Cross-section area of a unit-chord section: area = coefficient * chord^2.

    Uses the exact integral of the thickness polynomial.
    """
    if thickness_ratio <= 0.0:
        raise ValueError("thickness_ratio must be positive")
    integral = _A0 * (2.0 / 3.0) + _A1 / 2.0 + _A2 / 3.0 + _A3 / 4.0 + _A4 / 5.0
    return 2.0 * 5.0 * thickness_ratio * integral


@dataclass(frozen=True)
class WingParams:
    """Blended-wing half-span parameters (one side; the body is mirrored)."""

    alpha: float = 35.0  # deg, leading-edge sweep-back
    l1: float = 0.06  # m, constant-chord center body half-width
    l2: float = 0.12  # m, taper region span
    lb: float = 0.16  # m, constant-chord outer wing span
    chord_root: float = 0.419  # m
    chord_tip: float = 0.18  # m
    thickness_ratio: float = 0.10  # NACA 0010
    wingtip_height: float = 0.04  # m, vertical tip plate

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 90.0:
            raise ValueError("alpha must lie strictly between 0 and 90 degrees")
        for name in ("l1", "l2", "lb", "chord_root", "chord_tip"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.chord_tip > self.chord_root:
            raise ValueError("chord_tip must not exceed chord_root")
        if self.thickness_ratio <= 0.0:
            raise ValueError("thickness_ratio must be positive")
        if self.wingtip_height < 0.0:
            raise ValueError("wingtip_height must be non-negative")

    @property
    def half_span(self) -> float:
        return self.l1 + self.l2 + self.lb

    def chord(self, s: float) -> float:
        """Local chord at spanwise position s in [0, half_span]."""
        if not 0.0 <= s <= self.half_span:
            raise ValueError("spanwise position outside the half-span")
        if s <= self.l1:
            return self.chord_root
        if s <= self.l1 + self.l2:
            f = (s - self.l1) / self.l2
            return self.chord_root + f * (self.chord_tip - self.chord_root)
        return self.chord_tip

    def leading_edge(self, s: float) -> float:
        """Chordwise position of the leading edge at spanwise position s."""
        return s * math.tan(math.radians(self.alpha))


def displaced_volume(params: WingParams, stations: int = 201) -> float:
    """Displaced volume (m^3) by composite-Simpson spanwise integration.

    ``stations`` is the number of spanwise sample points (odd, at least 101).
    Wingtip plates contribute as constant-section prisms.
    """
    if stations < 101 or stations % 2 == 0:
        raise ValueError("stations must be an odd count of at least 101")
    coeff = section_area_coefficient(params.thickness_ratio)
    s = np.linspace(0.0, params.half_span, stations)
    chords = np.array([params.chord(float(si)) for si in s])
    areas = coeff * chords**2
    h = params.half_span / (stations - 1)
    weights = np.ones(stations)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    half_volume = h / 3.0 * float(np.dot(weights, areas))
    winglets = 2.0 * coeff * params.chord_tip**2 * params.wingtip_height
    return 2.0 * half_volume + winglets


def reference_wing() -> WingParams:
    """Default parameter set, reconstructed to displace about 3861 cm^3.

    The individual lengths are not measurements; only the resulting volume is
    anchored.  Treat every field as overridable.
    """
    return WingParams()


def _loft_rings(params: WingParams, spanwise: int, chordwise: int):
    """Closed section rings along the span of one wing half, in meters."""
    u = 0.5 * (1.0 - np.cos(np.linspace(0.0, math.pi, chordwise)))  # cosine spacing
    rings = []
    for s in np.linspace(0.0, params.half_span, spanwise):
        c = params.chord(float(s))
        x_le = params.leading_edge(float(s))
        upper = [(x_le + ui * c, naca_half_thickness(float(ui), params.thickness_ratio) * c) for ui in u]
        lower = [(x, -z) for x, z in reversed(upper[1:-1])]
        rings.append((float(s), upper + lower))
    return rings


def _triangles_between(ring_a, ring_b):
    (ya, pa), (yb, pb) = ring_a, ring_b
    n = len(pa)
    tris = []
    for i in range(n):
        j = (i + 1) % n
        a0 = (pa[i][0], ya, pa[i][1])
        a1 = (pa[j][0], ya, pa[j][1])
        b0 = (pb[i][0], yb, pb[i][1])
        b1 = (pb[j][0], yb, pb[j][1])
        tris.append((a0, b0, b1))
        tris.append((a0, b1, a1))
    return tris


def _cap(ring, flip: bool):
    y, pts = ring
    cx = sum(p[0] for p in pts) / len(pts)
    cz = sum(p[1] for p in pts) / len(pts)
    center = (cx, y, cz)
    tris = []
    n = len(pts)
    for i in range(n):
        j = (i + 1) % n
        a = (pts[i][0], y, pts[i][1])
        b = (pts[j][0], y, pts[j][1])
        tris.append((center, b, a) if flip else (center, a, b))
    return tris


def export_stl(
    params: WingParams, path: str, spanwise: int = 65, chordwise: int = 33
) -> int:
    """Write the hull surface as a binary STL in millimeters; returns triangle count.

    Output-only visualization aid: both wing halves are lofted and capped, and
    wingtip plates are added as vertical extrusions of the tip section.
    """
    rings = _loft_rings(params, spanwise, chordwise)
    tris = []
    # Right half (positive y) and mirrored left half share the root ring, so
    # only the tips need caps.
    for sign in (1.0, -1.0):
        signed = [(sign * s, pts) for s, pts in rings]
        for a, b in zip(signed, signed[1:]):
            tris.extend(_triangles_between(a, b))
        tris.extend(_cap(signed[-1], flip=sign > 0))

    if params.wingtip_height > 0.0:
        tip_s, tip_pts = rings[-1]
        for sign in (1.0, -1.0):
            base = (sign * tip_s, tip_pts)
            # Vertical extrusion: reuse the loft with z offset applied per ring.
            levels = np.linspace(0.0, params.wingtip_height, 9)
            stack = [
                (sign * tip_s, [(x, z + lv) for x, z in tip_pts]) for lv in levels
            ]
            for a, b in zip(stack, stack[1:]):
                tris.extend(_triangles_between(a, b))
            tris.extend(_cap(stack[0], flip=True))
            tris.extend(_cap(stack[-1], flip=False))

    with open(path, "wb") as fh:
        fh.write(b"glidesim parametric hull".ljust(80, b"\0"))
        fh.write(struct.pack("<I", len(tris)))
        for a, b, c in tris:
            ux = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
            vx = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
            nx = ux[1] * vx[2] - ux[2] * vx[1]
            ny = ux[2] * vx[0] - ux[0] * vx[2]
            nz = ux[0] * vx[1] - ux[1] * vx[0]
            norm = math.sqrt(nx * nx + ny * ny + nz * nz) or 1.0
            fh.write(struct.pack("<3f", nx / norm, ny / norm, nz / norm))
            for p in (a, b, c):
                fh.write(struct.pack("<3f", p[0] * 1000.0, p[1] * 1000.0, p[2] * 1000.0))
            fh.write(struct.pack("<H", 0))
    return len(tris)
