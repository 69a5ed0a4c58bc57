"""Command-line front end: presets, custom runs, sweeps, Monte Carlo, Bode data.

Configuration can come from a JSON file (--config) whose structure mirrors
the experiment dataclasses (SweepSpec, McSpec, SimConfig) field-for-field;
any flag given on the command line
overrides the corresponding config value.  All validation happens before any
simulation starts.  The default output directory can be set with the
PLLAB_OUT_DIR environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .experiments import (
    DEFAULT_MASTER_SEED,
    GridAxis,
    McSpec,
    PRESET_NAMES,
    SweepSpec,
    _manifest_payload,
    _spec_dict,
    evaluation_window,
    run_monte_carlo,
    run_preset,
    run_sweep,
    write_bundle,
    write_manifest,
    write_mc_csv,
    write_mc_ref_csv,
    write_sweep_csv,
    write_trajectory_csv,
)
from .analysis import metrics
from .integrator import SimConfig, simulate
from .model import DEFAULT_FILTER, FilterSpec, PllParams, filter_frequency_response
from .signals import InitSpec, InputSpec, NoiseSpec

ENV_OUT_DIR = "PLLAB_OUT_DIR"


class CliError(Exception):
    """Validation failure; reported as a diagnostic with a nonzero exit."""


def _default_out() -> str:
    return os.environ.get(ENV_OUT_DIR, "runs")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    if not p.exists():
        raise CliError(f"config file not found: {p}")
    try:
        with open(p) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed config {p}: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"config {p} must hold a JSON object")
    return data


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise CliError(f"missing required key {key!r} in {context}")
    return mapping[key]


def _check_keys(mapping: dict, allowed: set[str], context: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise CliError(f"unknown keys {sorted(unknown)} in {context}; "
                       f"allowed: {sorted(allowed)}")


def _coerce(value, kind, context: str):
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise CliError(f"bad value for {context}: {value!r} ({exc})") from exc


def _filter_from(data: dict | None) -> FilterSpec:
    if data is None:
        return DEFAULT_FILTER
    _check_keys(data, {"denom_coeffs", "num_coeffs"}, "filter")
    try:
        return FilterSpec(tuple(_require(data, "denom_coeffs", "filter")),
                          tuple(_require(data, "num_coeffs", "filter")))
    except ValueError as exc:
        raise CliError(f"invalid filter: {exc}") from exc


def _params_from(data: dict, overrides: dict) -> PllParams:
    _check_keys(data, {"omega0", "kv", "kd", "ki", "filter"}, "params")
    merged = dict(data)
    for key in ("omega0", "kv", "kd", "ki"):
        if overrides.get(key) is not None:
            merged[key] = overrides[key]
    try:
        return PllParams(
            omega0=_coerce(merged.get("omega0", 1.0), float, "omega0"),
            kv=_coerce(merged.get("kv", 0.7), float, "kv"),
            kd=_coerce(merged.get("kd", 0.7), float, "kd"),
            ki=_coerce(merged.get("ki", 0.0), float, "ki"),
            filter=_filter_from(merged.get("filter")),
        )
    except ValueError as exc:
        raise CliError(f"invalid params: {exc}") from exc


def _sim_from(data: dict, overrides: dict, seed: int) -> SimConfig:
    _check_keys(data, {"dt", "t_final", "record_stride", "input", "noise", "init"},
                "sim")
    input_data = dict(data.get("input", {}))
    _check_keys(input_data, {"omega_i", "amplitude"}, "sim.input")
    noise_data = dict(data.get("noise", {}))
    _check_keys(noise_data, {"input_noise_variance", "omega0_noise_variance", "seed"},
                "sim.noise")
    init_data = dict(data.get("init", {}))
    _check_keys(init_data, {"variance", "seed"}, "sim.init")

    def pick(name, default, cast=float):
        if overrides.get(name) is not None:
            return overrides[name]
        return _coerce(data.get(name, default), cast, f"sim.{name}")

    omega_i = overrides.get("omega_i")
    if omega_i is None:
        omega_i = _coerce(input_data.get("omega_i", 1.02), float, "input.omega_i")
    amplitude = overrides.get("amplitude")
    if amplitude is None:
        amplitude = _coerce(input_data.get("amplitude", 1.0), float, "input.amplitude")

    def noise_var(name):
        flag = overrides.get(name)
        if flag is not None:
            return flag
        return _coerce(noise_data.get(name, 0.0), float, f"noise.{name}")

    init_variance = overrides.get("init_variance")
    if init_variance is None:
        init_variance = _coerce(init_data.get("variance", 0.01), float, "init.variance")

    try:
        return SimConfig(
            dt=pick("dt", 0.01),
            t_final=pick("t_final", 2000.0),
            input=InputSpec(omega_i=omega_i, amplitude=amplitude),
            noise=NoiseSpec(noise_var("input_noise_variance"),
                            noise_var("omega0_noise_variance"),
                            _coerce(noise_data.get("seed", seed), int, "noise.seed")),
            init=InitSpec(init_variance,
                          _coerce(init_data.get("seed", seed), int, "init.seed")),
            record_stride=int(pick("record_stride", 1, int)),
        )
    except ValueError as exc:
        raise CliError(f"invalid sim config: {exc}") from exc


def _axis_from(data: dict, context: str) -> GridAxis:
    _check_keys(data, {"low", "high", "count"}, context)
    try:
        return GridAxis(_coerce(_require(data, "low", context), float, f"{context}.low"),
                        _coerce(_require(data, "high", context), float, f"{context}.high"),
                        _coerce(_require(data, "count", context), int, f"{context}.count"))
    except ValueError as exc:
        raise CliError(f"invalid {context}: {exc}") from exc


def _overrides_from(args) -> dict:
    keys = ("omega0", "kv", "kd", "ki", "omega_i", "amplitude", "dt", "t_final",
            "record_stride", "init_variance", "input_noise_variance",
            "omega0_noise_variance")
    return {k: getattr(args, k, None) for k in keys}


def _out_dir(args) -> Path:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".pllab-write-probe"
        probe.touch()
        probe.unlink()
    except OSError as exc:
        raise CliError(f"output directory {out} is not writable: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_preset(args) -> int:
    out = _out_dir(args)
    run_preset(args.name, out, seed=args.seed, scale=args.scale,
               workers=args.workers, record_stride=args.record_stride)
    print(f"wrote {args.name} bundle to {out}")
    return 0


def _cmd_simulate(args) -> int:
    config_data = _load_config(args.config)
    _check_keys(config_data, {"params", "sim"}, "config")
    overrides = _overrides_from(args)
    params = _params_from(dict(config_data.get("params", {})), overrides)
    sim = _sim_from(dict(config_data.get("sim", {})), overrides, args.seed)
    out = _out_dir(args)

    start = time.perf_counter()
    traj = simulate(params, sim)
    record = metrics(traj, sim.input.omega_i, evaluation_window(sim.t_final))
    elapsed = time.perf_counter() - start
    manifest = _manifest_payload(
        {"command": "simulate"},
        {"params": _spec_dict(params), "sim": _spec_dict(sim)},
        args.seed, elapsed)
    write_bundle(out, {
        "trajectory.csv": lambda p: write_trajectory_csv(p, traj, sim.input.omega_i),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    print(f"f={record.f:.6g} e_max={record.e_max:.6g} m={record.m:.6g} "
          f"s={record.s:.6g} locked={record.freq_locked}")
    print(f"wrote trajectory bundle to {out}")
    return 0


def _cmd_bode(args) -> int:
    filt = DEFAULT_FILTER
    if args.denom or args.num:
        if not (args.denom and args.num):
            raise CliError("--denom and --num must be given together")
        try:
            filt = FilterSpec(tuple(args.denom), tuple(args.num))
        except ValueError as exc:
            raise CliError(f"invalid filter: {exc}") from exc
    if args.omega_min <= 0 or args.omega_max <= args.omega_min:
        raise CliError("need 0 < omega-min < omega-max")
    if args.points < 2:
        raise CliError("need at least 2 points")
    out = _out_dir(args)

    omegas = np.geomspace(args.omega_min, args.omega_max, args.points)
    rows = []
    for w in omegas:
        mag, phase = filter_frequency_response(filt, float(w))
        rows.append((float(w), mag, phase))
    manifest = _manifest_payload(
        {"command": "bode", "omega_min": args.omega_min,
         "omega_max": args.omega_max, "points": args.points},
        {"filter": _spec_dict(filt)}, args.seed, 0.0)

    def write_rows(path):
        with open(path, "w", newline="\n") as fh:
            fh.write("omega,magnitude,phase\n")
            for w, mag, phase in rows:
                fh.write(f"{w:.17g},{mag:.17g},{phase:.17g}\n")

    write_bundle(out, {
        "bode.csv": write_rows,
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    print(f"wrote bode.csv ({args.points} points) to {out}")
    return 0


def _cmd_sweep(args) -> int:
    data = _load_config(args.config)
    _check_keys(data, {"omega_i_range", "gain_range", "fixed", "sim", "noise",
                       "master_seed"}, "sweep config")
    overrides = _overrides_from(args)
    seed = args.seed if args.seed is not None else \
        _coerce(data.get("master_seed", DEFAULT_MASTER_SEED), int, "master_seed")
    noise_data = dict(data.get("noise", {}))
    _check_keys(noise_data, {"input_noise_variance", "omega0_noise_variance", "seed"},
                "noise")
    try:
        spec = SweepSpec(
            omega_i_range=_axis_from(dict(_require(data, "omega_i_range",
                                                   "sweep config")), "omega_i_range"),
            gain_range=_axis_from(dict(_require(data, "gain_range", "sweep config")),
                                  "gain_range"),
            fixed=_params_from(dict(data.get("fixed", {})), overrides),
            sim=_sim_from(dict(data.get("sim", {})), overrides, seed),
            noise=NoiseSpec(
                _coerce(noise_data.get("input_noise_variance", 0.0), float,
                        "noise.input_noise_variance"),
                _coerce(noise_data.get("omega0_noise_variance", 0.0), float,
                        "noise.omega0_noise_variance"),
                seed),
            master_seed=seed,
        )
    except ValueError as exc:
        raise CliError(f"invalid sweep spec: {exc}") from exc
    out = _out_dir(args)

    start = time.perf_counter()
    result = run_sweep(spec, workers=args.workers)
    elapsed = time.perf_counter() - start
    manifest = _manifest_payload({"command": "sweep", "workers": args.workers},
                                 _spec_dict(spec), seed, elapsed)
    write_bundle(out, {
        "sweep.csv": lambda p: write_sweep_csv(p, result),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    locked = int(result.locked_grid().sum())
    print(f"sweep done: {spec.n_cells} cells, {locked} locked, "
          f"{int(result.diverged.sum())} diverged")
    print(f"wrote sweep bundle to {out}")
    return 0


def _cmd_mc(args) -> int:
    data = _load_config(args.config)
    _check_keys(data, {"runs", "params", "sim", "noise", "master_seed"}, "mc config")
    overrides = _overrides_from(args)
    seed = args.seed if args.seed is not None else \
        _coerce(data.get("master_seed", DEFAULT_MASTER_SEED), int, "master_seed")
    runs = args.runs if args.runs is not None else \
        _coerce(data.get("runs", 200), int, "runs")
    noise_data = dict(data.get("noise", {}))
    _check_keys(noise_data, {"input_noise_variance", "omega0_noise_variance", "seed"},
                "noise")
    try:
        spec = McSpec(
            runs=runs,
            params=_params_from(dict(data.get("params", {})), overrides),
            sim=_sim_from(dict(data.get("sim", {})), overrides, seed),
            noise=NoiseSpec(
                _coerce(noise_data.get("input_noise_variance", 0.0), float,
                        "noise.input_noise_variance"),
                _coerce(noise_data.get("omega0_noise_variance", 0.0), float,
                        "noise.omega0_noise_variance"),
                seed),
            master_seed=seed,
        )
    except ValueError as exc:
        raise CliError(f"invalid mc spec: {exc}") from exc
    out = _out_dir(args)

    start = time.perf_counter()
    result = run_monte_carlo(spec, workers=args.workers)
    elapsed = time.perf_counter() - start
    manifest = _manifest_payload({"command": "mc", "workers": args.workers},
                                 _spec_dict(spec), seed, elapsed)
    manifest["summaries"] = result.summaries
    write_bundle(out, {
        "mc.csv": lambda p: write_mc_csv(p, result),
        "mc_ref.csv": lambda p: write_mc_ref_csv(p, result),
        "manifest.json": lambda p: write_manifest(p, manifest),
    })
    print(f"mc done: {spec.runs} runs, {int(result.diverged.sum())} diverged, "
          f"median f={result.summaries['f_quantiles']['0.5']:.3e}")
    print(f"wrote mc bundle to {out}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sub, seed_default=DEFAULT_MASTER_SEED):
    sub.add_argument("--out", default=_default_out(),
                     help="output directory (default: $PLLAB_OUT_DIR or ./runs)")
    sub.add_argument("--seed", type=int, default=seed_default, help="master seed")
    sub.add_argument("--workers", type=int, default=None,
                     help="parallel worker count (default: auto)")


def _add_param_overrides(sub):
    for flag, kind in (("--omega0", float), ("--kv", float), ("--kd", float),
                       ("--ki", float), ("--omega-i", float), ("--amplitude", float),
                       ("--dt", float), ("--t-final", float),
                       ("--record-stride", int), ("--init-variance", float),
                       ("--input-noise-variance", float),
                       ("--omega0-noise-variance", float)):
        sub.add_argument(flag, type=kind, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pllab",
        description="Simulation laboratory for a third-order PLL in full state space")
    parser.add_argument("--version", action="version", version=f"pllab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("preset", help="run a named experiment with baked-in values")
    p.add_argument("name", choices=PRESET_NAMES)
    _add_common(p, seed_default=None)
    p.add_argument("--scale", type=float, default=1.0,
                   help="horizon scale factor (1.0 = desk scale t_f=2000)")
    p.add_argument("--record-stride", type=int, default=None)
    p.set_defaults(func=_cmd_preset)

    p = subs.add_parser("simulate", help="single run from config/flags")
    p.add_argument("--config", default=None, help="JSON config file")
    _add_common(p)
    _add_param_overrides(p)
    p.set_defaults(func=_cmd_simulate)

    p = subs.add_parser("bode", help="filter frequency-response table")
    p.add_argument("--omega-min", type=float, default=0.01)
    p.add_argument("--omega-max", type=float, default=100.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--denom", type=float, nargs="+", default=None,
                   help="monic denominator coefficients a_0 .. a_{n-1}")
    p.add_argument("--num", type=float, nargs="+", default=None,
                   help="numerator coefficients b_0 .. b_m")
    _add_common(p)
    p.set_defaults(func=_cmd_bode)

    p = subs.add_parser("sweep", help="(omega_i, gain) grid sweep from config")
    p.add_argument("--config", default=None)
    _add_common(p, seed_default=None)
    _add_param_overrides(p)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("mc", help="Monte-Carlo noise study from config")
    p.add_argument("--config", default=None)
    p.add_argument("--runs", type=int, default=None)
    _add_common(p, seed_default=None)
    _add_param_overrides(p)
    p.set_defaults(func=_cmd_mc)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pllab: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures keep a distinct exit code
        print(f"pllab: failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
