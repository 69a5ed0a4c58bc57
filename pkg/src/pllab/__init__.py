"""pllab: a simulation laboratory for a third-order PLL in full state space.

The node model keeps every oscillating state explicit (no phase variable);
phase and frequency are estimated from the raw signals, synchronization is
quantified with entrainment metrics, and batch experiments map the capture
region over input frequency and loop gain, with or without injected noise.
"""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    DEFAULT_FILTER,
    DivergenceError,
    FilterSpec,
    NodeState,
    PllParams,
    PoleOnAxisError,
    control_voltage,
    derivatives,
    filter_frequency_response,
    instantaneous_frequency,
    phase_detector_output,
)
from .signals import (  # noqa: F401
    InitSpec,
    InputSpec,
    NoiseSpec,
    input_sample,
    noise_stream,
    noise_streams,
    sample_initial_state,
)
from .integrator import SimConfig, Trajectory, rk4_step, simulate  # noqa: F401
from .analysis import (  # noqa: F401
    FREQ_LOCK_THRESHOLD,
    PHASE_ENTRAIN_LIMIT,
    MetricsRecord,
    PhaseSeries,
    first_difference,
    growth_rate,
    lissajous,
    metrics,
    phase_from_frequency,
    phase_from_state,
)
from .experiments import (  # noqa: F401
    GridAxis,
    McResult,
    McSpec,
    PRESET_NAMES,
    SweepResult,
    SweepSpec,
    run_monte_carlo,
    run_preset,
    run_sweep,
)
