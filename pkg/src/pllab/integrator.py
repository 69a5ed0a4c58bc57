"""Fixed-step classical RK4 integration of the PLL node with trajectory recording.

One integration core drives everything; it is written once and compiled with
numba when available (set ``PLLAB_DISABLE_NUMBA=1`` to force the pure-Python
build, which is identical but orders of magnitude slower).  Deterministic
parts of the input are evaluated at the exact RK4 stage times; noise samples
are held constant within each step per the :mod:`pllab.signals` contract.

If the horizon is not an integer number of steps, one final partial step with
the remainder size is taken so t_final is hit exactly; the recorded time grid
is then stride-uniform except for that last interval.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .model import DivergenceError, NodeState, PllParams
from .signals import InitSpec, InputSpec, NoiseSpec, noise_streams, sample_initial_state

__all__ = ["SimConfig", "Trajectory", "rk4_step", "simulate", "warmup"]


@dataclass(frozen=True)
class SimConfig:
    """Integration step, horizon, recording policy, and the signal layer specs."""

    dt: float
    t_final: float
    input: InputSpec
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    init: InitSpec = field(default_factory=InitSpec)
    record_stride: int = 1

    def __post_init__(self):
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t_final", float(self.t_final))
        object.__setattr__(self, "record_stride", int(self.record_stride))
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.t_final < self.dt:
            raise ValueError("t_final must be at least one step")
        if self.record_stride < 1:
            raise ValueError("record_stride must be >= 1")


@dataclass
class Trajectory:
    """Time-indexed record of one run: states and the derived loop signals."""

    t: np.ndarray
    states: np.ndarray  # (n_samples, state_dim)
    u: np.ndarray
    v_d: np.ndarray
    v_c: np.ndarray
    omega_inst: np.ndarray
    params: PllParams
    config: SimConfig

    def __len__(self) -> int:
        return len(self.t)

    @property
    def filter_order(self) -> int:
        return self.params.filter.order

    @property
    def has_integral(self) -> bool:
        return self.params.has_integral

    @property
    def x(self) -> np.ndarray:
        return self.states[:, : self.filter_order]

    @property
    def z1(self) -> np.ndarray:
        return self.states[:, self.filter_order]

    @property
    def z2(self) -> np.ndarray:
        return self.states[:, self.filter_order + 1]

    @property
    def xi(self) -> np.ndarray | None:
        if not self.has_integral:
            return None
        return self.states[:, self.filter_order + 2]

    def state_at(self, index: int) -> NodeState:
        return NodeState.from_vector(self.states[index], self.filter_order,
                                     self.has_integral)


def rk4_step(f, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step for a generic system ydot = f(t, y)."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def _step_plan(dt: float, t_final: float) -> tuple[int, float]:
    """Number of full steps and the size of the trailing partial step (0 if none)."""
    q = t_final / dt
    n_full = int(math.floor(q + 1e-9 * max(1.0, q)))
    remainder = t_final - n_full * dt
    if remainder <= dt * 1e-9:
        remainder = 0.0
    return n_full, remainder


def _recorded_steps(n_steps: int, stride: int) -> np.ndarray:
    """Step indices that get recorded: every stride-th plus the final step."""
    ks = list(range(0, n_steps + 1, stride))
    if ks[-1] != n_steps:
        ks.append(n_steps)
    return np.asarray(ks, dtype=np.int64)


def _rk4_loop(y, y_prev, a, b, omega0, kv, kd, ki, amp, omega_i,
              noise_u, noise_w, dt, n_full, last_dt, stride,
              rec_states, rec_u, rec_vd, rec_vc, rec_wi):
    """Integration core shared by the numba and pure-Python builds.

    Returns -1 on success, else the index of the step during which the state
    went non-finite (y_prev then holds the last finite state).
    """
    nf = a.shape[0]
    nb = b.shape[0]
    dim = y.shape[0]
    has_int = ki > 0.0
    n_steps = n_full + (1 if last_dt > 0.0 else 0)

    k1 = np.empty(dim)
    k2 = np.empty(dim)
    k3 = np.empty(dim)
    k4 = np.empty(dim)
    ytmp = np.empty(dim)

    def rhs(t, s, un, wn, out):
        u = amp * math.sin(omega_i * t) + un
        z1 = s[nf]
        z2 = s[nf + 1]
        for i in range(nf - 1):
            out[i] = s[i + 1]
        acc = 0.0
        for i in range(nf):
            acc += a[i] * s[i]
        out[nf - 1] = -acc + kd * z1 * u
        vc = 0.0
        for i in range(nb):
            vc += b[i] * s[i]
        w = omega0 + wn + kv * vc
        if has_int:
            w += ki * s[nf + 2]
            out[nf + 2] = vc
        out[nf] = z2
        out[nf + 1] = -(w * w) * z1

    def record(slot, t, noise_idx):
        vc = 0.0
        for i in range(nb):
            vc += b[i] * y[i]
        u = amp * math.sin(omega_i * t) + noise_u[noise_idx]
        w = omega0 + noise_w[noise_idx] + kv * vc
        if has_int:
            w += ki * y[nf + 2]
        for i in range(dim):
            rec_states[slot, i] = y[i]
        rec_u[slot] = u
        rec_vd[slot] = kd * y[nf] * u
        rec_vc[slot] = vc
        rec_wi[slot] = w

    record(0, 0.0, 0)
    slot = 1
    for k in range(n_steps):
        h = dt if k < n_full else last_dt
        t = k * dt
        un = noise_u[k]
        wn = noise_w[k]
        for i in range(dim):
            y_prev[i] = y[i]
        rhs(t, y, un, wn, k1)
        for i in range(dim):
            ytmp[i] = y[i] + 0.5 * h * k1[i]
        rhs(t + 0.5 * h, ytmp, un, wn, k2)
        for i in range(dim):
            ytmp[i] = y[i] + 0.5 * h * k2[i]
        rhs(t + 0.5 * h, ytmp, un, wn, k3)
        for i in range(dim):
            ytmp[i] = y[i] + h * k3[i]
        rhs(t + h, ytmp, un, wn, k4)
        ok = True
        for i in range(dim):
            y[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            if not math.isfinite(y[i]):
                ok = False
        if not ok:
            return k
        ks = k + 1
        if ks % stride == 0 or ks == n_steps:
            noise_idx = ks if ks < n_steps else n_steps - 1
            record(slot, t + h, noise_idx)
            slot += 1
    return -1


def _build_core():
    if os.environ.get("PLLAB_DISABLE_NUMBA"):
        return _rk4_loop
    try:
        from numba import njit
    except ImportError:
        return _rk4_loop
    return njit(cache=True)(_rk4_loop)


_core = None


def _get_core():
    global _core
    if _core is None:
        _core = _build_core()
    return _core


def warmup() -> None:
    """Force compilation of the integration core (cheap once cached).

    Called before forking worker processes so children inherit the compiled
    core instead of racing to build it.
    """
    params = PllParams(omega0=1.0, kv=0.0, kd=0.0, ki=0.0)
    config = SimConfig(dt=0.5, t_final=1.0, input=InputSpec(omega_i=1.0))
    simulate(params, config, initial_state=NodeState(
        x=np.zeros(params.filter.order), z1=1.0, z2=0.0))


def simulate(params: PllParams, config: SimConfig,
             initial_state: NodeState | None = None) -> Trajectory:
    """Integrate the node over [0, t_final] with classical fixed-step RK4.

    The initial state is drawn from ``config.init`` unless ``initial_state``
    is given.  Raises :class:`DivergenceError` with the last finite time and
    state if any state entry becomes non-finite.
    """
    filt = params.filter
    if initial_state is None:
        initial_state = sample_initial_state(config.init, filt.order,
                                             params.has_integral)
    else:
        if len(initial_state.x) != filt.order:
            raise ValueError("initial state does not match the filter order")
        # align the integral slot with the VCO configuration
        xi = (initial_state.xi or 0.0) if params.has_integral else None
        initial_state = NodeState(initial_state.x.copy(), initial_state.z1,
                                  initial_state.z2, xi)

    y = initial_state.as_vector()
    if not np.all(np.isfinite(y)):
        raise ValueError("initial state has non-finite entries")
    y_prev = y.copy()

    n_full, last_dt = _step_plan(config.dt, config.t_final)
    n_steps = n_full + (1 if last_dt > 0.0 else 0)
    noise_u, noise_w = noise_streams(config.noise, n_steps)

    rec_ks = _recorded_steps(n_steps, config.record_stride)
    n_rec = len(rec_ks)
    dim = y.shape[0]
    rec_states = np.empty((n_rec, dim))
    rec_u = np.empty(n_rec)
    rec_vd = np.empty(n_rec)
    rec_vc = np.empty(n_rec)
    rec_wi = np.empty(n_rec)

    a = np.asarray(filt.denom_coeffs)
    b = np.asarray(filt.num_coeffs)
    core = _get_core()
    bad_step = core(y, y_prev, a, b, params.omega0, params.kv, params.kd,
                    params.ki, config.input.amplitude, config.input.omega_i,
                    noise_u, noise_w, config.dt, n_full, last_dt,
                    config.record_stride, rec_states, rec_u, rec_vd, rec_vc,
                    rec_wi)
    if bad_step >= 0:
        t_last = bad_step * config.dt
        state = NodeState.from_vector(y_prev, filt.order, params.has_integral)
        raise DivergenceError(t_last, state)

    t = rec_ks * config.dt
    t[-1] = config.t_final  # exact horizon, immune to dt rounding
    return Trajectory(t=t, states=rec_states, u=rec_u, v_d=rec_vd, v_c=rec_vc,
                      omega_inst=rec_wi, params=params, config=config)
