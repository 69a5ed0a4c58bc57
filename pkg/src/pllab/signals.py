"""Node input waveform, seeded Gaussian noise streams, and random initial states.

Every random quantity in the package is derived from a 64-bit master seed
through one stated mixing function, :func:`derive_seed_sequence`, so runs are
reproducible and sub-streams (noise channels, grid cells, Monte-Carlo runs)
are statistically independent.

Noise discretization: one fresh Gaussian sample per channel per integration
step, held constant across the RK4 stage evaluations of that step, with no
step-size dependent variance rescaling.  The configured variance is therefore
the per-sample variance exactly as specified.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .model import NodeState

__all__ = [
    "CHANNEL_INPUT",
    "CHANNEL_OMEGA0",
    "InitSpec",
    "InputSpec",
    "NoiseSpec",
    "derive_seed_sequence",
    "input_sample",
    "noise_stream",
    "noise_streams",
    "sample_initial_state",
]

CHANNEL_INPUT = "input"
CHANNEL_OMEGA0 = "omega0"

# Domain tags for sub-stream derivation.  Keep these stable: changing them
# changes every derived stream.
_DOMAIN_NOISE = {CHANNEL_INPUT: 11, CHANNEL_OMEGA0: 12}
_DOMAIN_INIT = 21
DOMAIN_SWEEP_CELL = 31
DOMAIN_MC_RUN = 32

_SEED_MASK = (1 << 64) - 1


def derive_seed_sequence(master_seed: int, *path: int) -> np.random.SeedSequence:
    """Sub-stream derivation: SeedSequence([master_seed, *path]).

    ``path`` is a sequence of small non-negative integers (domain tag,
    indices).  The master seed is reduced to unsigned 64 bits so negative
    seeds are accepted.
    """
    entropy = [int(master_seed) & _SEED_MASK] + [int(p) for p in path]
    return np.random.SeedSequence(entropy)


@dataclass(frozen=True)
class InputSpec:
    """Sinusoidal node input u(t) = amplitude * sin(omega_i * t)."""

    omega_i: float
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "omega_i", float(self.omega_i))
        object.__setattr__(self, "amplitude", float(self.amplitude))
        if not self.omega_i > 0:
            raise ValueError("omega_i must be positive")
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")


@dataclass(frozen=True)
class NoiseSpec:
    """Per-step Gaussian noise variances for the input and omega0 channels."""

    input_noise_variance: float = 0.0
    omega0_noise_variance: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "input_noise_variance", float(self.input_noise_variance))
        object.__setattr__(self, "omega0_noise_variance", float(self.omega0_noise_variance))
        object.__setattr__(self, "seed", int(self.seed))
        if self.input_noise_variance < 0 or self.omega0_noise_variance < 0:
            raise ValueError("noise variances must be non-negative")

    def with_seed(self, seed: int) -> "NoiseSpec":
        return NoiseSpec(self.input_noise_variance, self.omega0_noise_variance, seed)

    @property
    def enabled(self) -> bool:
        return self.input_noise_variance > 0 or self.omega0_noise_variance > 0


@dataclass(frozen=True)
class InitSpec:
    """Initial states drawn i.i.d. zero-mean Gaussian with the given variance."""

    variance: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variance", float(self.variance))
        object.__setattr__(self, "seed", int(self.seed))
        if self.variance < 0:
            raise ValueError("variance must be non-negative")

    def with_seed(self, seed: int) -> "InitSpec":
        return InitSpec(self.variance, seed)


def input_sample(spec: InputSpec, t: float, noise_sample: float = 0.0) -> float:
    """u(t) = amplitude * sin(omega_i * t) + noise_sample."""
    return spec.amplitude * math.sin(spec.omega_i * t) + noise_sample


def _channel_variance(spec: NoiseSpec, channel: str) -> float:
    if channel == CHANNEL_INPUT:
        return spec.input_noise_variance
    if channel == CHANNEL_OMEGA0:
        return spec.omega0_noise_variance
    raise ValueError(f"unknown noise channel {channel!r}")


def noise_channel_stream(spec: NoiseSpec, channel: str, n_steps: int) -> np.ndarray:
    """Gaussian samples for one channel, one per integration step.

    Zero-variance channels return zeros without consuming any random state,
    so enabling one channel never perturbs the other.
    """
    var = _channel_variance(spec, channel)
    if var == 0.0 or n_steps == 0:
        return np.zeros(n_steps)
    rng = np.random.default_rng(derive_seed_sequence(spec.seed, _DOMAIN_NOISE[channel]))
    return rng.normal(0.0, math.sqrt(var), n_steps)


def noise_streams(spec: NoiseSpec, n_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """(input channel, omega0 channel) sample arrays of length ``n_steps``."""
    return (
        noise_channel_stream(spec, CHANNEL_INPUT, n_steps),
        noise_channel_stream(spec, CHANNEL_OMEGA0, n_steps),
    )


def noise_stream(spec: NoiseSpec, channel: str, step_index: int) -> float:
    """Sample for one channel at one integration step.

    Pure in (seed, channel, step_index): the stream is a prefix-stable
    sequence, so the sample at a given index never depends on how many later
    samples exist.
    """
    if step_index < 0:
        raise ValueError("step_index must be non-negative")
    return float(noise_channel_stream(spec, channel, step_index + 1)[step_index])


def sample_initial_state(spec: InitSpec, filter_order: int,
                         has_integral: bool) -> NodeState:
    """Draw x and (z1, z2) i.i.d. N(0, variance); the integral state starts at 0.

    A zero-variance spec yields the all-zero state, which is an equilibrium of
    the node (z1 = z2 = 0 never oscillates); a warning is emitted in that case.
    """
    if spec.variance == 0.0:
        warnings.warn(
            "zero-variance initial conditions put the node at the origin "
            "equilibrium; it will never oscillate",
            stacklevel=2,
        )
        draws = np.zeros(filter_order + 2)
    else:
        rng = np.random.default_rng(derive_seed_sequence(spec.seed, _DOMAIN_INIT))
        draws = rng.normal(0.0, math.sqrt(spec.variance), filter_order + 2)
    xi = 0.0 if has_integral else None
    return NodeState(x=draws[:filter_order], z1=float(draws[filter_order]),
                     z2=float(draws[filter_order + 1]), xi=xi)
