"""Full state-space model of a third-order PLL node.

The node is a multiplier phase detector feeding a strictly proper linear
low-pass filter (controllable canonical realization) whose output drives a
voltage-controlled oscillator.  No state variable is a phase: the VCO is
carried as the oscillating pair (z1, z2), so phase must be estimated
downstream from the raw signals (see :mod:`pllab.analysis`).

State layout used throughout the package::

    y = [x_1 .. x_n, z1, z2]        proportional VCO (ki == 0)
    y = [x_1 .. x_n, z1, z2, xi]    integral-augmented VCO (ki > 0)

with x the filter states, z1/z2 the oscillator position/velocity and xi the
accumulated control voltage integral.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_FILTER",
    "DivergenceError",
    "FilterSpec",
    "NodeState",
    "PllParams",
    "PoleOnAxisError",
    "control_voltage",
    "derivatives",
    "filter_frequency_response",
    "instantaneous_frequency",
    "phase_detector_output",
]


class DivergenceError(RuntimeError):
    """A state entry became non-finite; carries the last finite point."""

    def __init__(self, t: float | None, state, message: str | None = None):
        self.t = t
        self.state = state
        if message is None:
            message = f"state diverged (non-finite entries) near t={t!r}"
        super().__init__(message)


class PoleOnAxisError(ValueError):
    """The filter denominator vanishes on the imaginary axis."""


@dataclass(frozen=True)
class FilterSpec:
    """Strictly proper linear filter, monic denominator.

    ``denom_coeffs = (a_0, ..., a_{n-1})`` describes the denominator
    ``s^n + a_{n-1} s^{n-1} + ... + a_0``; ``num_coeffs = (b_0, ..., b_m)``
    the numerator ``b_m s^m + ... + b_0`` with degree m < n.  Coefficients
    are dimensionless in normalized time.
    """

    denom_coeffs: tuple[float, ...]
    num_coeffs: tuple[float, ...]

    def __post_init__(self):
        denom = tuple(float(c) for c in self.denom_coeffs)
        num = tuple(float(c) for c in self.num_coeffs)
        object.__setattr__(self, "denom_coeffs", denom)
        object.__setattr__(self, "num_coeffs", num)
        if len(denom) < 1:
            raise ValueError("filter order must be at least 1")
        if len(num) < 1:
            raise ValueError("numerator needs at least one coefficient")
        if len(num) > len(denom):
            raise ValueError(
                "filter must be strictly proper: numerator degree "
                f"{len(num) - 1} >= order {len(denom)}"
            )
        if not all(math.isfinite(c) for c in denom + num):
            raise ValueError("filter coefficients must be finite")

    @property
    def order(self) -> int:
        return len(self.denom_coeffs)


#: Second-order low pass (s + 4) / (12 s^2 + 6 s + 4) stored in monic form.
DEFAULT_FILTER = FilterSpec(denom_coeffs=(1 / 3, 1 / 2), num_coeffs=(1 / 3, 1 / 12))


@dataclass(frozen=True)
class PllParams:
    """Node constants.

    omega0 : VCO central frequency, rad/s
    kv     : VCO gain, rad/s per volt
    kd     : phase-detector gain, 1/volt
    ki     : VCO integral gain, rad/s^2 per volt (0 disables the integral term)
    """

    omega0: float
    kv: float
    kd: float
    ki: float = 0.0
    filter: FilterSpec = field(default=DEFAULT_FILTER)

    def __post_init__(self):
        for name in ("omega0", "kv", "kd", "ki"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        for name in ("kv", "kd", "ki"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def has_integral(self) -> bool:
        return self.ki > 0.0

    @property
    def state_dim(self) -> int:
        return self.filter.order + 2 + (1 if self.has_integral else 0)


@dataclass
class NodeState:
    """Instantaneous state: filter states x, oscillator pair (z1, z2), and
    the control-voltage integral xi (present iff the VCO has ki > 0)."""

    x: np.ndarray
    z1: float
    z2: float
    xi: float | None = None

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        if self.x.ndim != 1:
            raise ValueError("filter state x must be one-dimensional")

    @property
    def has_integral(self) -> bool:
        return self.xi is not None

    def as_vector(self) -> np.ndarray:
        tail = [self.z1, self.z2] if self.xi is None else [self.z1, self.z2, self.xi]
        return np.concatenate([self.x, tail])

    @classmethod
    def from_vector(cls, y, filter_order: int, has_integral: bool) -> "NodeState":
        y = np.asarray(y, dtype=float)
        expected = filter_order + 2 + (1 if has_integral else 0)
        if y.shape != (expected,):
            raise ValueError(f"expected state vector of length {expected}, got {y.shape}")
        xi = float(y[-1]) if has_integral else None
        return cls(x=y[:filter_order].copy(), z1=float(y[filter_order]),
                   z2=float(y[filter_order + 1]), xi=xi)

    def copy(self) -> "NodeState":
        return NodeState(self.x.copy(), self.z1, self.z2, self.xi)


def _check_state(state: NodeState, filt: FilterSpec) -> None:
    if len(state.x) != filt.order:
        raise ValueError(
            f"state has {len(state.x)} filter entries, filter order is {filt.order}"
        )


def control_voltage(state: NodeState, filt: FilterSpec) -> float:
    """Filter output v_c = sum_k b_k x_{k+1} (volts)."""
    _check_state(state, filt)
    b = filt.num_coeffs
    return float(np.dot(b, state.x[: len(b)]))


def instantaneous_frequency(state: NodeState, params: PllParams) -> float:
    """VCO rate omega0 + kv*v_c (+ ki*xi when the integral term is active), rad/s."""
    w = params.omega0 + params.kv * control_voltage(state, params.filter)
    if params.has_integral:
        w += params.ki * (state.xi if state.xi is not None else 0.0)
    return w


def phase_detector_output(z1: float, u: float, kd: float) -> float:
    """Multiplier detector v_d = kd * z1 * u (volts)."""
    return kd * z1 * u


def derivatives(state: NodeState, u: float, omega0_noise: float,
                params: PllParams) -> NodeState:
    """Right-hand side of the node model.

    Filter chain xdot_k = x_{k+1}, xdot_n = -sum a_k x_{k+1} + v_d; oscillator
    z1dot = z2, z2dot = -omega_inst^2 z1 with omega_inst evaluated at the
    perturbed central frequency omega0 + omega0_noise; xidot = v_c when the
    integral term is active.  ``u`` must already include any input noise.
    """
    filt = params.filter
    _check_state(state, filt)
    n = filt.order
    a = filt.denom_coeffs

    vd = phase_detector_output(state.z1, u, params.kd)
    vc = control_voltage(state, filt)

    dx = np.empty(n)
    dx[: n - 1] = state.x[1:]
    dx[n - 1] = -float(np.dot(a, state.x)) + vd

    w = params.omega0 + omega0_noise + params.kv * vc
    if params.has_integral:
        w += params.ki * (state.xi if state.xi is not None else 0.0)

    dz1 = state.z2
    dz2 = -(w * w) * state.z1
    dxi = vc if params.has_integral else None

    out = NodeState(dx, dz1, dz2, dxi)
    vec = out.as_vector()
    if not np.all(np.isfinite(vec)):
        raise DivergenceError(None, state.copy(), "derivative evaluation produced non-finite values")
    return out


def filter_frequency_response(filt: FilterSpec, omega: float) -> tuple[float, float]:
    """Magnitude and phase (radians) of the filter at s = j*omega.

    Complex polynomial evaluation of the coefficient lists; raises
    :class:`PoleOnAxisError` if the denominator vanishes at j*omega.
    """
    if omega < 0:
        raise ValueError("omega must be non-negative")
    s = 1j * omega
    num = 0j
    for k, b in enumerate(filt.num_coeffs):
        num += b * s**k
    den = s ** filt.order
    for k, a in enumerate(filt.denom_coeffs):
        den += a * s**k
    if den == 0:
        raise PoleOnAxisError(f"filter has a pole on the imaginary axis at omega={omega}")
    resp = num / den
    return abs(resp), cmath.phase(resp)
