import math

import pytest
from hypothesis import given, settings, strategies as st

from glidesim.controller import Mode
from glidesim.dynamics import (
    DragModel,
    GlideGeometry,
    KinematicState,
    step_kinematics,
    terminal_speed,
)

DRAG = DragModel(c_d_a=0.05, rho=1000.0)
GEOMETRY = GlideGeometry(theta=math.atan2(8.0, 15.0), phi=math.atan2(8.0, 15.0))
M_EFF = 5.87  # ~1.5x the reference vehicle mass


class TestTerminalSpeed:
    def test_zero_force(self):
        assert terminal_speed(0.0, DRAG) == 0.0

    def test_reference_point(self):
        # sqrt(2 * 1 / (1000 * 0.05)) = 0.2 m/s
        assert terminal_speed(1.0, DRAG) == pytest.approx(0.2, rel=1e-12)
        assert terminal_speed(-1.0, DRAG) == pytest.approx(0.2, rel=1e-12)

    @given(f=st.floats(1e-3, 50.0))
    def test_quadrupling_force_doubles_speed(self, f):
        assert terminal_speed(4.0 * f, DRAG) == pytest.approx(
            2.0 * terminal_speed(f, DRAG), rel=1e-12
        )


def integrate(state, mode, f_net, dt, steps, geometry=GEOMETRY, drag=DRAG):
    for _ in range(steps):
        state = step_kinematics(state, mode, f_net, geometry, drag, dt, M_EFF)
    return state


class TestStepKinematics:
    def test_surface_bobbing_is_parked(self):
        state = KinematicState(depth=0.0, x=3.0, v_along_path=0.4)
        out = step_kinematics(state, Mode.INFLATING, 2.0, GEOMETRY, DRAG, 0.05, M_EFF)
        assert out.depth == 0.0
        assert out.x == 3.0
        assert out.v_along_path == 0.0

    def test_steady_descent_follows_glide_angle(self):
        f = -1.0
        v_t = terminal_speed(f, DRAG)
        state = KinematicState(depth=1.0, x=0.0, v_along_path=v_t)
        out = integrate(state, Mode.DEFLATING, f, 0.05, 200)
        dz = out.depth - state.depth
        dx = out.x - state.x
        assert dz > 0.0
        assert dz / dx == pytest.approx(math.tan(GEOMETRY.theta), rel=1e-9)

    def test_ascent_reduces_depth(self):
        state = KinematicState(depth=3.0, x=0.0, v_along_path=0.2)
        out = integrate(state, Mode.INFLATING, 2.0, 0.05, 100)
        assert out.depth < 3.0
        assert out.x > 0.0

    def test_converges_to_terminal_speed_within_ten_time_constants(self):
        f = -1.0
        v_t = terminal_speed(f, DRAG)
        epsilon = 0.05
        tau = M_EFF / (DRAG.rho * DRAG.c_d_a * v_t + epsilon)
        dt = 0.01
        steps = int(10.0 * tau / dt)
        out = integrate(KinematicState(depth=0.0), Mode.DEFLATING, f, dt, steps)
        assert out.v_along_path == pytest.approx(v_t, rel=0.01)

    @given(
        forces=st.lists(st.floats(-3.0, 3.0), min_size=1, max_size=40),
    )
    @settings(max_examples=60)
    def test_horizontal_distance_never_decreases(self, forces):
        state = KinematicState(depth=2.0, x=0.0, v_along_path=0.1)
        for f in forces:
            new = step_kinematics(state, Mode.DEFLATING, f, GEOMETRY, DRAG, 0.05, M_EFF)
            assert new.x >= state.x
            state = new

    def test_depth_clamped_at_surface(self):
        state = KinematicState(depth=0.005, x=0.0, v_along_path=0.5)
        out = step_kinematics(state, Mode.INFLATING, 3.0, GEOMETRY, DRAG, 0.1, M_EFF)
        assert out.depth == 0.0

    def test_invalid_arguments(self):
        state = KinematicState()
        with pytest.raises(ValueError):
            step_kinematics(state, Mode.DEFLATING, -1.0, GEOMETRY, DRAG, 0.0, M_EFF)
        with pytest.raises(ValueError):
            step_kinematics(state, Mode.DEFLATING, -1.0, GEOMETRY, DRAG, 0.05, 0.0)
        with pytest.raises(ValueError):
            GlideGeometry(theta=0.0, phi=0.5)
        with pytest.raises(ValueError):
            DragModel(c_d_a=0.0, rho=1000.0)
        with pytest.raises(ValueError):
            KinematicState(depth=-0.1)


class TestIntegratorOrder:
    def _final_state(self, dt, total_time):
        steps = round(total_time / dt)
        state = KinematicState(depth=0.0, x=0.0, v_along_path=0.05)
        return integrate(state, Mode.DEFLATING, -1.0, dt, steps)

    def test_richardson_ratio_is_fourth_order(self):
        # Global error vs a fine-step reference on a smooth constant-force descent.
        total_time = 2.0
        reference = self._final_state(0.05 / 512.0, total_time)

        def error(dt):
            out = self._final_state(dt, total_time)
            return math.sqrt(
                (out.depth - reference.depth) ** 2
                + (out.x - reference.x) ** 2
                + (out.v_along_path - reference.v_along_path) ** 2
            )

        ratio = error(0.05) / error(0.025)
        assert 12.0 <= ratio <= 20.0
