import pytest
from hypothesis import given, settings, strategies as st

from oracles import threshold_closed_form

from glidesim.controller import ControllerState, Mode, step, thresholds_from_valve
from glidesim.physics import PhysicalConstants, depth_for_pressure
from glidesim.pneumatics import ValveModel

CONSTANTS = PhysicalConstants()


def deflating(p_high=10_000.0, p_low=1_000.0):
    return ControllerState(mode=Mode.DEFLATING, p_high=p_high, p_low=p_low)


def inflating(p_high=10_000.0, p_low=1_000.0):
    return ControllerState(mode=Mode.INFLATING, p_high=p_high, p_low=p_low)


class TestStep:
    def test_snap_through_at_threshold(self):
        out = step(deflating(), 10_000.0)
        assert out.mode is Mode.INFLATING
        assert out.transition_count == 1

    def test_inside_band_is_inert(self):
        state = inflating()
        assert step(state, 5_000.0) is state

    def test_snap_back_at_threshold(self):
        out = step(inflating(), 1_000.0)
        assert out.mode is Mode.DEFLATING
        assert out.transition_count == 1

    def test_full_cycle_counts_two_transitions(self):
        state = deflating()
        trajectory = [0.0, 3_000.0, 9_999.0, 10_500.0, 12_000.0, 9_000.0, 2_000.0, 900.0, 0.0]
        for p in trajectory:
            state = step(state, p)
        assert state.mode is Mode.DEFLATING
        assert state.transition_count == 2

    @given(p=st.floats(-1e5, 1e6, allow_nan=False))
    def test_idempotent(self, p):
        for start in (deflating(), inflating()):
            once = step(start, p)
            assert step(once, p) == once

    @given(
        pressures=st.lists(st.floats(1_001.0, 9_999.0), min_size=1, max_size=50),
        start_inflating=st.booleans(),
    )
    @settings(max_examples=100)
    def test_no_chatter_inside_open_band(self, pressures, start_inflating):
        state = inflating() if start_inflating else deflating()
        for p in pressures:
            state = step(state, p)
        assert state.transition_count == 0

    def test_band_must_be_nonempty(self):
        with pytest.raises(ValueError):
            ControllerState(mode=Mode.DEFLATING, p_high=1_000.0, p_low=1_000.0)


class TestThresholdsFromValve:
    def test_large_reservoir_recovers_intrinsic_pressures(self):
        valve = ValveModel(additional_sealed_volume=1e4)
        p_high, p_low = thresholds_from_valve(valve, CONSTANTS)
        assert p_high == pytest.approx(10_000.0, rel=1e-6)
        assert p_low == pytest.approx(1_000.0, rel=1e-6)
        assert depth_for_pressure(p_high, CONSTANTS) == pytest.approx(1.0, rel=1e-6)
        assert depth_for_pressure(p_low, CONSTANTS) == pytest.approx(0.1, rel=1e-6)

    def test_finite_chamber_raises_upper_threshold(self):
        valve = ValveModel()  # 50 mL sealed chamber
        p_high, _ = thresholds_from_valve(valve, CONSTANTS)
        assert p_high > 10_000.0
        # The fixed point equals the depth-independent Boyle's-law total.
        oracle = threshold_closed_form(valve, 0.0, CONSTANTS)
        assert p_high == pytest.approx(oracle, rel=1e-6)

    def test_equal_snap_pressures_rejected_at_valve(self):
        with pytest.raises(ValueError):
            ValveModel(p_snap_through=2_000.0, p_snap_back=2_000.0)
