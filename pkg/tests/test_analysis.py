import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pllab.analysis import (
    DegenerateStateError,
    FREQ_LOCK_THRESHOLD,
    diverged_metrics,
    first_difference,
    growth_rate,
    lissajous,
    metrics,
    phase_from_frequency,
    phase_from_state,
)
from pllab.experiments import example1_spec, example2_spec
from pllab.integrator import SimConfig, Trajectory, simulate
from pllab.model import PllParams
from pllab.signals import InputSpec


def synthetic(t, z1, z2, omega_inst=None, u=None):
    """Trajectory carrying prescribed signals; filter states are zeros."""
    t = np.asarray(t, dtype=float)
    n = len(t)
    params = PllParams(omega0=1.0, kv=0.0, kd=0.0)
    config = SimConfig(dt=float(t[1] - t[0]), t_final=float(t[-1]),
                       input=InputSpec(omega_i=1.0))
    states = np.zeros((n, 4))
    states[:, 2] = z1
    states[:, 3] = z2
    if omega_inst is None:
        omega_inst = np.zeros(n)
    if u is None:
        u = np.zeros(n)
    return Trajectory(t=t, states=states, u=np.asarray(u, dtype=float),
                      v_d=np.zeros(n), v_c=np.zeros(n),
                      omega_inst=np.asarray(omega_inst, dtype=float),
                      params=params, config=config)


def circle(psi):
    """Unit-circle states whose estimated phase is exactly psi (mod 2*pi)."""
    return np.cos(psi), -np.sin(psi)


class TestPhaseFromState:
    def test_unit_oscillator(self):
        t = np.arange(0.0, 4 * math.pi, 0.01)
        z1, z2 = np.cos(t), -np.sin(t)
        ps = phase_from_state(synthetic(t, z1, z2))
        assert np.max(np.abs(ps.psi - t)) < 1e-9

    def test_ellipse_mean_slope(self):
        # z2 = -omega sin(omega t) distorts the circle into an ellipse; the
        # phase gains a 2*omega*t ripple but keeps mean slope omega.
        # Oracle: least-squares fit over many whole ripple periods.
        omega = 1.5
        T = 600 * (math.pi / omega)
        t = np.arange(0.0, T + 1e-12, 0.01)
        ps = phase_from_state(synthetic(t, np.cos(omega * t),
                                        -omega * np.sin(omega * t)))
        slope = np.polyfit(t, ps.psi, 1)[0]
        assert slope == pytest.approx(omega, abs=1e-6)
        ripple = ps.psi - omega * t
        assert np.max(np.abs(ripple)) > 1e-3  # the ripple is real
        assert abs(ripple.mean()) < 1e-3      # and zero-mean

    def test_wrap_crossing_has_no_spurious_jump(self):
        t = np.arange(0.0, 20.0, 0.05)
        psi_true = 0.5 + t  # crosses pi repeatedly
        z1, z2 = circle(psi_true)
        ps = phase_from_state(synthetic(t, z1, z2))
        assert np.max(np.abs(np.diff(ps.psi))) < math.pi
        assert np.max(np.abs(ps.psi - psi_true)) < 1e-9

    def test_wrapped_consistent_with_unwrapped(self):
        t = np.arange(0.0, 50.0, 0.01)
        z1, z2 = circle(1.3 * t)
        ps = phase_from_state(synthetic(t, z1, z2))
        k = np.round((ps.psi - ps.wrapped) / (2 * math.pi))
        assert np.max(np.abs(ps.psi - ps.wrapped - 2 * math.pi * k)) < 1e-9

    def test_degenerate_sample_rejected(self):
        t = np.arange(0.0, 1.0, 0.1)
        z1 = np.ones_like(t)
        z2 = np.zeros_like(t)
        z1[3] = 0.0
        with pytest.raises(DegenerateStateError) as err:
            phase_from_state(synthetic(t, z1, z2))
        assert err.value.index == 3

    @given(increments=st.lists(st.floats(-math.pi + 0.01, math.pi - 0.01),
                               min_size=2, max_size=200),
           psi0=st.floats(-100.0, 100.0))
    @settings(max_examples=50)
    def test_unwrap_inverts_wrap(self, increments, psi0):
        # unwrap(wrap(psi)) recovers psi up to one global 2*pi multiple
        psi = psi0 + np.concatenate([[0.0], np.cumsum(increments)])
        t = np.arange(len(psi), dtype=float)
        z1, z2 = circle(psi)
        ps = phase_from_state(synthetic(t, z1, z2))
        offset = ps.psi[0] - psi[0]
        assert offset / (2 * math.pi) == pytest.approx(round(offset / (2 * math.pi)), abs=1e-9)
        assert np.max(np.abs(ps.psi - psi - offset)) < 1e-8


class TestPhaseFromFrequency:
    def test_constant_rate(self):
        t = np.linspace(0.0, 10.0, 101)
        traj = synthetic(t, np.ones_like(t), np.zeros_like(t),
                         omega_inst=np.ones_like(t))
        ps = phase_from_frequency(traj)
        assert ps.psi[0] == 0.0
        assert ps.psi[-1] == pytest.approx(10.0, abs=1e-12)

    def test_modulated_rate(self):
        # integral of 1 + 0.1 sin t over a whole period is exactly 2*pi
        t = np.linspace(0.0, 2 * math.pi, 629)
        w = 1.0 + 0.1 * np.sin(t)
        traj = synthetic(t, np.ones_like(t), np.zeros_like(t), omega_inst=w)
        ps = phase_from_frequency(traj)
        assert ps.psi[-1] == pytest.approx(2 * math.pi, abs=1e-6)

    def test_agrees_with_state_estimate_when_locked(self):
        params, cfg = example2_spec(0.5, seed=42)
        cfg = dataclasses.replace(cfg, t_final=400.0)
        traj = simulate(params, cfg)
        window = (200.0, 400.0)
        s_state = growth_rate(phase_from_state(traj), window)
        s_freq = growth_rate(phase_from_frequency(traj), window)
        assert abs(s_state - s_freq) < 1e-3


class TestGrowthRate:
    def test_linear_phase(self):
        t = np.linspace(0.0, 100.0, 1001)
        z1, z2 = circle(t)
        ps = phase_from_state(synthetic(t, z1, z2))
        assert growth_rate(ps, (0.0, 100.0)) == pytest.approx(1.0, rel=1e-12)

    def test_bounded_ripple(self):
        # psi = 1.02 t + 0.01 sin 2t; ripple contributes at most
        # 2 * 0.01 / 50 over a 50 s window
        t = np.arange(0.0, 100.0 + 1e-12, 0.01)
        psi = 1.02 * t + 0.01 * np.sin(2 * t)
        z1, z2 = circle(psi)
        ps = phase_from_state(synthetic(t, z1, z2))
        got = growth_rate(ps, (50.0, 100.0))
        assert abs(got - 1.02) <= 4e-4
        expected = 1.02 + 0.01 * (math.sin(200.0) - math.sin(100.0)) / 50.0
        assert got == pytest.approx(expected, abs=1e-9)

    def test_locks_to_input_frequency(self):
        params, cfg = example1_spec(seed=42)
        cfg = dataclasses.replace(cfg, t_final=600.0)
        traj = simulate(params, cfg)
        ps = phase_from_state(traj)
        assert growth_rate(ps, (300.0, 600.0)) == pytest.approx(1.02, abs=2e-3)

    def test_window_validation(self):
        t = np.linspace(0.0, 10.0, 101)
        z1, z2 = circle(t)
        ps = phase_from_state(synthetic(t, z1, z2))
        with pytest.raises(ValueError):
            growth_rate(ps, (5.0, 11.0))
        with pytest.raises(ValueError):
            growth_rate(ps, (6.0, 6.0))


class TestMetrics:
    def test_constant_phase_offset(self):
        omega_i = 1.3
        t = np.arange(0.0, 50.0, 0.01)
        z1, z2 = circle(omega_i * t + 0.1)
        rec = metrics(synthetic(t, z1, z2), omega_i, (0.0, t[-1]))
        assert rec.f < 1e-12
        assert rec.m < 1e-10
        assert rec.s < 1e-10
        assert rec.e_max == pytest.approx(0.1, abs=1e-9)
        assert rec.freq_locked and rec.phase_entrained

    def test_linear_drift(self):
        t = np.arange(0.0, 100.0 + 1e-12, 0.01)
        z1, z2 = circle(1.01 * t)
        rec = metrics(synthetic(t, z1, z2), 1.0, (0.0, 100.0))
        assert rec.f == pytest.approx(abs(1.0 - 1.0 / 1.01), rel=1e-9)
        assert not rec.freq_locked
        assert rec.e_max == pytest.approx(1.0, abs=1e-6)

    def test_zero_growth_rate(self):
        t = np.linspace(0.0, 10.0, 101)
        rec = metrics(synthetic(t, np.ones_like(t), np.zeros_like(t)), 1.0,
                      (0.0, 10.0))
        assert math.isinf(rec.f)
        assert not rec.freq_locked

    def test_closed_form_oracle(self):
        # psi = omega t + alpha sin(beta t) on a grid spanning whole periods:
        # m = omega - omega_i (drift dominates the ripple), s = alpha*beta/sqrt(2),
        # Omega_o = omega + alpha*sin(beta T)/T, e_max = e(T)
        omega, omega_i, alpha, beta = 1.05, 1.0, 0.01, 1.0
        T = 8 * math.pi
        t = np.linspace(0.0, T, 8001)
        psi = omega * t + alpha * np.sin(beta * t)
        z1, z2 = circle(psi)
        rec = metrics(synthetic(t, z1, z2), omega_i, (0.0, T))

        omega_hat_expected = omega + alpha * math.sin(beta * T) / T
        f_expected = abs(1.0 - omega_i / omega_hat_expected)
        m_expected = omega - omega_i
        s_expected = alpha * beta / math.sqrt(2.0)
        e_max_expected = (omega - omega_i) * T + alpha * math.sin(beta * T)

        assert rec.omega_hat == pytest.approx(omega_hat_expected, abs=1e-9)
        assert rec.f == pytest.approx(f_expected, abs=1e-9)
        assert rec.m == pytest.approx(m_expected, abs=1e-6)
        assert rec.s == pytest.approx(s_expected, abs=1e-6)
        assert rec.e_max == pytest.approx(e_max_expected, abs=1e-6)

    def test_shift_invariance(self):
        omega_i = 1.0
        t = np.arange(0.0, 200.0, 0.01)
        psi = 1.003 * t + 0.05 * np.sin(0.3 * t)
        base = metrics(synthetic(t, *circle(psi)), omega_i, (50.0, 199.0))
        shifted = metrics(synthetic(t, *circle(psi + 1.234)), omega_i,
                          (50.0, 199.0))
        assert shifted.f == pytest.approx(base.f, abs=1e-10)
        assert shifted.m == pytest.approx(base.m, abs=1e-10)
        assert shifted.s == pytest.approx(base.s, abs=1e-10)

    def test_pure(self):
        t = np.arange(0.0, 20.0, 0.01)
        traj = synthetic(t, *circle(1.1 * t))
        window = (0.0, float(t[-1]))
        assert metrics(traj, 1.0, window) == metrics(traj, 1.0, window)

    def test_lock_threshold_is_as_specified(self):
        assert FREQ_LOCK_THRESHOLD == 2e-3

    def test_diverged_sentinel(self):
        rec = diverged_metrics()
        assert math.isinf(rec.f) and not rec.freq_locked


class TestLissajous:
    def test_identical_signals_on_diagonal(self):
        t = np.arange(0.0, 10.0, 0.01)
        z1 = np.sin(t)
        traj = synthetic(t, z1, np.gradient(z1, t), u=z1)
        pairs = lissajous(traj, (0.0, t[-1]))
        assert np.array_equal(pairs[:, 0], pairs[:, 1])

    def test_quadrature_signals_on_circle(self):
        t = np.arange(0.0, 20.0, 0.01)
        z1 = np.cos(t)
        traj = synthetic(t, z1, -np.sin(t), u=np.sin(t))
        pairs = lissajous(traj, (0.0, t[-1]))
        radius = pairs[:, 0] ** 2 + pairs[:, 1] ** 2
        assert np.allclose(radius, 1.0, atol=1e-12)

    def test_window_selects_samples(self):
        t = np.arange(0.0, 10.0, 0.1)
        traj = synthetic(t, np.cos(t), -np.sin(t), u=np.sin(t))
        pairs = lissajous(traj, (5.0, t[-1]))
        assert len(pairs) == np.count_nonzero(t >= 5.0)


class TestFirstDifference:
    def test_wrapped_series_shows_jump_artifacts(self):
        t = np.arange(0.0, 40.0, 0.01)
        ps = phase_from_state(synthetic(t, *circle(t)))
        raw = first_difference(ps.wrapped)
        clean = first_difference(ps.psi)
        assert np.max(np.abs(raw)) > 5.0       # 2*pi jumps present
        assert np.max(np.abs(clean)) < 0.02    # unwrapped stays smooth

    def test_normalization_by_time(self):
        t = np.array([0.0, 0.5, 1.0])
        vals = np.array([0.0, 1.0, 3.0])
        assert np.allclose(first_difference(vals, t), [2.0, 4.0])
        assert np.allclose(first_difference(vals), [1.0, 2.0])
