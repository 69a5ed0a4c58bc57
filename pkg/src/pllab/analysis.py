"""Phase and frequency estimation from raw trajectories, plus synchronization metrics.

The output phase is estimated from the oscillating pair as
``atan2(-z2, z1)``; the sign flip on z2 makes the estimate increase in time
for the forward-rotating oscillator (z2 leads z1 by -90 deg), so the average
growth rate is positive and the entrainment thresholds apply as stated.

Phase series are unwrapped before any differencing; the raw wrapped series is
kept alongside because its first differences show the familiar 2*pi jump
artifacts.  Metric first differences are divided by the recording step so the
mean and deviation carry rad/s units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .integrator import Trajectory

__all__ = [
    "FREQ_LOCK_THRESHOLD",
    "PHASE_ENTRAIN_LIMIT",
    "DegenerateStateError",
    "MetricsRecord",
    "PhaseSeries",
    "diverged_metrics",
    "first_difference",
    "growth_rate",
    "lissajous",
    "metrics",
    "phase_from_frequency",
    "phase_from_state",
]

#: Frequency entrainment: |1 - omega_i / Omega_o| below this.
FREQ_LOCK_THRESHOLD = 2e-3
#: Phase entrainment: |psi_o(t) - omega_i t| bounded by this.
PHASE_ENTRAIN_LIMIT = math.pi


class DegenerateStateError(ValueError):
    """Both oscillator states are zero at some sample; phase is undefined there."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"z1 = z2 = 0 at sample {index}; phase undefined")


@dataclass
class PhaseSeries:
    """Unwrapped phase psi plus the raw wrapped series it came from."""

    t: np.ndarray
    psi: np.ndarray
    wrapped: np.ndarray


@dataclass(frozen=True)
class MetricsRecord:
    """Synchronization measures over one evaluation window.

    f       : frequency-entrainment measure |1 - omega_i/Omega_o|
    e_max   : peak |psi_o(t) - omega_i t| over the window, rad
    m       : time-average of |de/dt|, rad/s
    s       : population standard deviation of de/dt, rad/s
    omega_hat : estimated average phase growth rate Omega_o, rad/s
    """

    f: float
    e_max: float
    m: float
    s: float
    omega_hat: float
    freq_locked: bool
    phase_entrained: bool


def phase_from_state(traj: Trajectory) -> PhaseSeries:
    """Output phase from the oscillator pair: atan2(-z2, z1), unwrapped."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    z1 = traj.z1
    z2 = traj.z2
    degenerate = (z1 == 0.0) & (z2 == 0.0)
    if degenerate.any():
        raise DegenerateStateError(int(np.argmax(degenerate)))
    wrapped = np.arctan2(-z2, z1)
    return PhaseSeries(t=traj.t, psi=np.unwrap(wrapped), wrapped=wrapped)


def phase_from_frequency(traj: Trajectory) -> PhaseSeries:
    """Alternative phase estimate: cumulative trapezoid of omega_inst over t."""
    w = traj.omega_inst
    t = traj.t
    psi = np.empty_like(w)
    psi[0] = 0.0
    np.cumsum(0.5 * (w[1:] + w[:-1]) * np.diff(t), out=psi[1:])
    wrapped = np.angle(np.exp(1j * psi))
    return PhaseSeries(t=t, psi=psi, wrapped=wrapped)


def _window_indices(t: np.ndarray, window: tuple[float, float]) -> tuple[int, int]:
    t_a, t_b = window
    if not t_b > t_a:
        raise ValueError(f"window must have t_b > t_a, got {window}")
    if t_a < t[0] or t_b > t[-1]:
        raise ValueError(f"window {window} outside series range [{t[0]}, {t[-1]}]")
    i = int(np.searchsorted(t, t_a, side="left"))
    j = int(np.searchsorted(t, t_b, side="right")) - 1
    if j <= i:
        raise ValueError(f"window {window} contains fewer than two samples")
    return i, j


def growth_rate(phase: PhaseSeries, window: tuple[float, float]) -> float:
    """Average phase growth rate over the window, from the unwrapped phase."""
    i, j = _window_indices(phase.t, window)
    return float((phase.psi[j] - phase.psi[i]) / (phase.t[j] - phase.t[i]))


def first_difference(values: np.ndarray, t: np.ndarray | None = None) -> np.ndarray:
    """Successive differences; divided by the time spacing when t is given.

    Apply to a wrapped phase-error series to reproduce the raw estimate with
    its 2*pi jump artifacts, or to the unwrapped series for the clean one.
    """
    d = np.diff(np.asarray(values, dtype=float))
    if t is not None:
        d = d / np.diff(np.asarray(t, dtype=float))
    return d


def metrics(traj: Trajectory, omega_i: float,
            window: tuple[float, float]) -> MetricsRecord:
    """Evaluate f, e_max, m, s and the entrainment flags over the window.

    e(t) = psi_o(t) - omega_i*t with psi_o from :func:`phase_from_state`;
    its first differences are normalized by the recording step.  A zero
    growth-rate estimate makes f infinite (the ratio is undefined) and the
    frequency flag false.
    """
    ps = phase_from_state(traj)
    i, j = _window_indices(ps.t, window)
    tw = ps.t[i : j + 1]
    e = ps.psi[i : j + 1] - omega_i * tw
    edot = np.diff(e) / np.diff(tw)

    omega_hat = float((ps.psi[j] - ps.psi[i]) / (tw[-1] - tw[0]))
    if omega_hat == 0.0:
        f = math.inf
    else:
        f = abs(1.0 - omega_i / omega_hat)
    e_max = float(np.max(np.abs(e)))
    m = float(np.mean(np.abs(edot)))
    s = float(np.std(edot))  # population convention
    return MetricsRecord(
        f=f,
        e_max=e_max,
        m=m,
        s=s,
        omega_hat=omega_hat,
        freq_locked=bool(f < FREQ_LOCK_THRESHOLD),
        phase_entrained=bool(e_max < PHASE_ENTRAIN_LIMIT),
    )


def diverged_metrics() -> MetricsRecord:
    """Sentinel record for a diverged run: worst possible on every measure."""
    return MetricsRecord(f=math.inf, e_max=math.inf, m=math.inf, s=math.inf,
                         omega_hat=math.nan, freq_locked=False,
                         phase_entrained=False)


def lissajous(traj: Trajectory, window: tuple[float, float]) -> np.ndarray:
    """(u, z1) sample pairs over the window, for parametric plotting."""
    i, j = _window_indices(traj.t, window)
    return np.column_stack([traj.u[i : j + 1], traj.z1[i : j + 1]])
