"""Motor-side PD law, reference generators, setpoint conversion."""

import numpy as np
import pytest

from fricobs import presets, sim
from fricobs.control import (
    Hold,
    PdGains,
    Sinusoid,
    Step,
    check_damping_margin,
    motor_command,
    motor_pd,
    theta_d_from_qd,
)
from fricobs.plant import Planar2R, PointMass


class TestThetaDFromQd:
    def test_gravity_free(self):
        link = PointMass(1.0)
        assert theta_d_from_qd(0.01, 3000.0, link)[0] == pytest.approx(0.01)

    def test_planar2r_offset_equals_scaled_gravity(self):
        link = Planar2R(m1=1.2, m2=0.8, l1=0.5, l2=0.4, r1=0.25, r2=0.2,
                        I1=0.05, I2=0.03, g0=9.81)
        q_d = np.array([0.4, -0.9])
        K_j = np.array([3000.0, 2500.0])
        td = theta_d_from_qd(q_d, K_j, link)
        # finite-difference the potential energy as the gravity oracle
        h = 1e-7
        for j in range(2):
            dq = np.zeros(2)
            dq[j] = h
            g_fd = (link.potential_energy(q_d + dq) - link.potential_energy(q_d - dq)) / (2 * h)
            assert (td - q_d)[j] == pytest.approx(g_fd / K_j[j], abs=1e-9)


class TestMotorPd:
    GAINS = PdGains(K_p=50.0, K_d=5.0)

    def test_zero_error_zero_velocity(self):
        assert motor_pd(0.01, 0.0, 0.01, self.GAINS)[0] == pytest.approx(0.0)

    def test_initial_step_command(self):
        # 50 * 0.01 at the step instant
        assert motor_pd(0.0, 0.0, 0.01, self.GAINS)[0] == pytest.approx(0.5)

    def test_mixed_terms(self):
        tau = motor_pd(0.005, 0.1, 0.01, self.GAINS)
        assert tau[0] == pytest.approx(0.25 - 0.5)

    def test_gravity_bias_added(self):
        tau = motor_pd(0.0, 0.0, 0.0, self.GAINS, g_qd=2.5)
        assert tau[0] == pytest.approx(2.5)


class TestMotorCommand:
    def test_passthrough_without_estimate(self):
        assert motor_command(0.5, 0.0) == pytest.approx(0.5)

    def test_stuck_mass_narrative(self):
        # compensating -0.5 N of friction doubles the net command
        assert motor_command(0.5, -0.5) == pytest.approx(1.0)

    def test_sign(self):
        assert motor_command(0.0, 1.5) == pytest.approx(-1.5)


class TestReferences:
    def test_step_before_and_after(self):
        ref = Step(theta_d=np.array([0.01]), t_on=1.0)
        assert ref(0.5)[0][0] == 0.0
        assert ref(1.5)[0][0] == 0.01
        assert ref(1.5)[1][0] == 0.0  # regulation: zero desired velocity

    def test_hold(self):
        ref = Hold(theta_d=np.array([0.02]))
        assert ref(0.0)[0][0] == 0.02
        assert ref(9.9)[0][0] == 0.02

    def test_sinusoid_value_and_rate(self):
        ref = Sinusoid(amplitude=0.01, frequency_hz=0.5)
        pos, vel = ref(0.5)  # quarter period
        assert pos[0] == pytest.approx(0.01, rel=1e-12)
        assert vel[0] == pytest.approx(0.0, abs=1e-12)


class TestGains:
    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            PdGains(K_p=0.0, K_d=5.0)
        with pytest.raises(ValueError):
            PdGains(K_p=50.0, K_d=-1.0)

    def test_damping_margin_warns_when_too_low(self):
        with pytest.warns(UserWarning):
            check_damping_margin(PdGains(K_p=50.0, K_d=0.05), 1.0, L=50.0, c3=10.0)

    def test_damping_margin_silent_when_fine(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            margin = check_damping_margin(PdGains(K_p=50.0, K_d=5.0), 1.0, L=50.0, c3=10.0)
        assert margin > 0


class TestRegulationPremise:
    def test_friction_free_step_converges(self):
        # the bare PD loop regulates the friction-free plant to the setpoint
        cfg = presets.preset("fig4a", duration=10.0, oscillation_window=2.0).ideal_variant()
        tr = sim.run_scenario(cfg)
        assert abs(tr.theta[-1, 0] - 0.01) <= 1e-6
        assert abs(tr.q[-1, 0] - 0.01) <= 1e-6

    def test_storage_decay_in_integrated_form(self):
        # friction-free, no external force: dV = -Kd thetad^2 dt along the run
        cfg = presets.preset("fig4a", duration=5.0, oscillation_window=1.0).ideal_variant()
        tr = sim.run_scenario(cfg)
        Kp, Kd, Kj = 50.0, 5.0, 3000.0
        V = (0.5 * tr.qd[:, 0]**2 + 0.5 * tr.thetad[:, 0]**2
             + 0.5 * Kj * (tr.theta[:, 0] - tr.q[:, 0])**2
             + 0.5 * Kp * (tr.theta[:, 0] - 0.01)**2)
        dt = tr.dt_sample
        diss = np.zeros_like(V)
        diss[1:] = np.cumsum(0.5 * dt * Kd * (tr.thetad[1:, 0]**2 + tr.thetad[:-1, 0]**2))
        residual = (V - V[0]) + diss
        assert np.max(np.abs(residual)) <= 5e-5
        # decay direction: V never rises beyond integration noise
        assert np.all(np.diff(V) <= 1e-6)
