import math

import pytest
from hypothesis import given, strategies as st

from glidesim.physics import (
    ForceBalance,
    GliderDesign,
    PhysicalConstants,
    bladder_buoyancy_force,
    depth_for_pressure,
    hydrostatic_pressure,
    net_force,
)

CONSTANTS = PhysicalConstants()


class TestHydrostaticPressure:
    def test_zero_depth(self):
        assert hydrostatic_pressure(0.0, CONSTANTS) == 0.0

    def test_regulator_depth(self):
        # 4 m of water column at 10 kPa/m
        assert hydrostatic_pressure(4.0, CONSTANTS) == pytest.approx(40_000.0)

    def test_linearity_point(self):
        assert hydrostatic_pressure(2.5, CONSTANTS) == pytest.approx(25_000.0)

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            hydrostatic_pressure(-0.01, CONSTANTS)

    @given(
        depth=st.floats(0.0, 100.0, allow_nan=False),
        scale=st.floats(0.0, 50.0, allow_nan=False),
    )
    def test_linear_in_depth(self, depth, scale):
        lhs = hydrostatic_pressure(scale * depth, CONSTANTS)
        rhs = scale * hydrostatic_pressure(depth, CONSTANTS)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)

    def test_depth_for_pressure_inverts(self):
        assert depth_for_pressure(40_000.0, CONSTANTS) == pytest.approx(4.0)


class TestBladderBuoyancy:
    def test_empty(self):
        assert bladder_buoyancy_force(0.0, CONSTANTS) == 0.0

    def test_full_bladder(self):
        # 300 cm^3 at rho=1000, g=9.81
        assert bladder_buoyancy_force(3.0e-4, CONSTANTS) == pytest.approx(2.943, abs=1e-9)

    def test_single_balloon(self):
        assert bladder_buoyancy_force(1.0e-4, CONSTANTS) == pytest.approx(0.981, abs=1e-9)

    def test_negative_volume_rejected(self):
        with pytest.raises(ValueError):
            bladder_buoyancy_force(-1e-9, CONSTANTS)

    @given(
        v=st.floats(0.0, 1e-2, allow_nan=False),
        w=st.floats(0.0, 1e-2, allow_nan=False),
    )
    def test_monotone(self, v, w):
        lo, hi = sorted((v, w))
        assert bladder_buoyancy_force(lo, CONSTANTS) <= bladder_buoyancy_force(hi, CONSTANTS)

    @given(
        v=st.floats(1e-9, 1e-2, allow_nan=False),
        k=st.floats(0.0, 100.0, allow_nan=False),
    )
    def test_homogeneous_degree_one(self, v, k):
        assert bladder_buoyancy_force(k * v, CONSTANTS) == pytest.approx(
            k * bladder_buoyancy_force(v, CONSTANTS), rel=1e-12, abs=1e-12
        )


class TestNetForce:
    def test_deflated_trim_sinks(self):
        design = GliderDesign.from_deflated_net_force(3.86112e-3, 3.0e-4, -0.5, CONSTANTS)
        balance = net_force(design, 0.0, CONSTANTS)
        assert balance.f_net == pytest.approx(-0.5, abs=1e-9)
        assert balance.f_net < 0.0

    def test_full_bladder_lifts(self):
        design = GliderDesign.from_deflated_net_force(3.86112e-3, 3.0e-4, -1.0, CONSTANTS)
        balance = net_force(design, 3.0e-4, CONSTANTS)
        assert balance.f_net == pytest.approx(1.943, abs=1e-9)

    def test_neutral_trim(self):
        volume = 3.86112e-3
        design = GliderDesign(
            mass=CONSTANTS.rho_water * volume, hull_volume=volume, bladder_capacity=0.0
        )
        assert net_force(design, 0.0, CONSTANTS).f_net == pytest.approx(0.0, abs=1e-9)

    def test_identity_holds_exactly(self):
        design = GliderDesign.from_deflated_net_force(3.86112e-3, 3.0e-4, -0.5, CONSTANTS)
        b = net_force(design, 1.3e-4, CONSTANTS)
        assert b.f_net == (b.f_buoyancy_glider - b.f_gravity_glider) + b.f_buoyancy_bladder

    def test_inconsistent_balance_rejected(self):
        with pytest.raises(ValueError):
            ForceBalance(
                f_buoyancy_glider=10.0,
                f_gravity_glider=9.0,
                f_buoyancy_bladder=1.0,
                f_net=0.0,
            )

    def test_fill_out_of_range_rejected(self):
        design = GliderDesign.from_deflated_net_force(3.86112e-3, 3.0e-4, -0.5, CONSTANTS)
        with pytest.raises(ValueError):
            net_force(design, 4.0e-4, CONSTANTS)
        with pytest.raises(ValueError):
            net_force(design, -1.0e-9, CONSTANTS)

    @given(
        hull=st.floats(1e-4, 1e-2),
        capacity=st.floats(0.0, 1e-3),
        extra_mass=st.floats(1e-6, 5.0),
        fill_fraction=st.floats(0.0, 1.0),
    )
    def test_heavy_design_sinks_at_any_fill(self, hull, capacity, extra_mass, fill_fraction):
        # mass * g > rho * g * (hull + capacity) forces f_net < 0 for all fills
        mass = CONSTANTS.rho_water * (hull + capacity) + extra_mass
        design = GliderDesign(mass=mass, hull_volume=hull, bladder_capacity=capacity)
        fill = fill_fraction * capacity
        assert net_force(design, fill, CONSTANTS).f_net < 0.0


class TestValidation:
    def test_constants_positive(self):
        with pytest.raises(ValueError):
            PhysicalConstants(rho_water=0.0)
        with pytest.raises(ValueError):
            PhysicalConstants(g=-9.81)

    def test_design_positive(self):
        with pytest.raises(ValueError):
            GliderDesign(mass=0.0, hull_volume=1e-3, bladder_capacity=0.0)
        with pytest.raises(ValueError):
            GliderDesign(mass=1.0, hull_volume=0.0, bladder_capacity=0.0)

    def test_deflated_force_too_buoyant(self):
        with pytest.raises(ValueError):
            # Mass would have to be negative to float this hard.
            GliderDesign.from_deflated_net_force(1e-4, 0.0, 100.0, CONSTANTS)

    def test_math_sanity(self):
        design = GliderDesign.from_deflated_net_force(3.86112e-3, 3.0e-4, -0.5, CONSTANTS)
        expected_mass = 3.86112 + 0.5 / CONSTANTS.g
        assert design.mass == pytest.approx(expected_mass, rel=1e-12)
        assert math.isclose(
            net_force(design, 0.0, CONSTANTS).f_net, -0.5, abs_tol=1e-9
        )
