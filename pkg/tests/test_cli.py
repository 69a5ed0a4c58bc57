import json

import pytest

from pllab.cli import main
from pllab.model import DEFAULT_FILTER, filter_frequency_response


def run_cli(*argv):
    return main(list(argv))


class TestPreset:
    def test_example1_writes_bundle(self, tmp_path, capsys):
        out = tmp_path / "e1"
        assert run_cli("preset", "example1", "--out", str(out), "--seed", "42",
                       "--scale", "0.05") == 0
        assert (out / "trajectory.csv").exists()
        assert (out / "manifest.json").exists()

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run_cli("preset", "example1", "--out", str(out),
                           "--seed", "42", "--scale", "0.05") == 0
        assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()

    def test_unknown_preset_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run_cli("preset", "example99", "--out", str(tmp_path))
        assert err.value.code == 2


class TestBode:
    def test_matches_model_response(self, tmp_path):
        out = tmp_path / "bode"
        assert run_cli("bode", "--omega-min", "0.01", "--omega-max", "100",
                       "--points", "20", "--out", str(out)) == 0
        lines = (out / "bode.csv").read_text().strip().split("\n")
        assert lines[0] == "omega,magnitude,phase"
        assert len(lines) == 21
        for line in lines[1:]:
            w, mag, phase = (float(v) for v in line.split(","))
            want_mag, want_phase = filter_frequency_response(DEFAULT_FILTER, w)
            assert mag == want_mag
            assert phase == want_phase
        # endpoints of the log-spaced grid
        assert float(lines[1].split(",")[0]) == pytest.approx(0.01, rel=1e-12)
        assert float(lines[-1].split(",")[0]) == pytest.approx(100.0, rel=1e-12)

    def test_custom_filter(self, tmp_path):
        out = tmp_path / "bode"
        assert run_cli("bode", "--denom", "2.0", "--num", "2.0",
                       "--points", "5", "--out", str(out)) == 0
        first = (out / "bode.csv").read_text().strip().split("\n")[1]
        w, mag, _ = (float(v) for v in first.split(","))
        assert mag == pytest.approx(2.0 / abs(2.0 + 1j * w), rel=1e-12)

    def test_bad_range_is_validation_error(self, tmp_path, capsys):
        assert run_cli("bode", "--omega-min", "10", "--omega-max", "1",
                       "--out", str(tmp_path)) == 2
        assert "error" in capsys.readouterr().err

    def test_mismatched_filter_flags(self, tmp_path):
        assert run_cli("bode", "--denom", "1.0", "--out", str(tmp_path)) == 2

    def test_improper_filter_rejected(self, tmp_path):
        assert run_cli("bode", "--denom", "1.0", "--num", "1.0", "2.0",
                       "--out", str(tmp_path)) == 2


class TestSimulate:
    def test_flags_only(self, tmp_path):
        out = tmp_path / "sim"
        assert run_cli("simulate", "--t-final", "20", "--dt", "0.01",
                       "--omega-i", "1.02", "--out", str(out), "--seed", "3") == 0
        lines = (out / "trajectory.csv").read_text().strip().split("\n")
        assert lines[0].startswith("t,u,v_d")
        assert len(lines) == 1 + 2001

    def test_config_file_with_override(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({
            "params": {"omega0": 1.0, "kv": 0.7, "kd": 0.7, "ki": 0.0},
            "sim": {"dt": 0.01, "t_final": 10.0,
                    "input": {"omega_i": 1.02, "amplitude": 1.0},
                    "init": {"variance": 0.01, "seed": 5}},
        }))
        out = tmp_path / "sim"
        # flag override wins over the config value
        assert run_cli("simulate", "--config", str(cfg), "--t-final", "20",
                       "--out", str(out)) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["spec"]["sim"]["t_final"] == 20.0

    def test_unknown_config_key_rejected_before_compute(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"params": {"omega_zero": 1.0}, "sim": {}}))
        assert run_cli("simulate", "--config", str(cfg),
                       "--out", str(tmp_path / "x")) == 2
        assert "omega_zero" in capsys.readouterr().err

    def test_malformed_json_rejected(self, tmp_path):
        cfg = tmp_path / "broken.json"
        cfg.write_text("{not json")
        assert run_cli("simulate", "--config", str(cfg),
                       "--out", str(tmp_path / "x")) == 2

    def test_missing_config_rejected(self, tmp_path):
        assert run_cli("simulate", "--config", str(tmp_path / "nope.json"),
                       "--out", str(tmp_path / "x")) == 2


class TestSweep:
    def make_config(self, tmp_path, **noise):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(json.dumps({
            "omega_i_range": {"low": 0.9, "high": 1.1, "count": 2},
            "gain_range": {"low": 0.6, "high": 1.2, "count": 2},
            "fixed": {"omega0": 1.0, "kv": 1.0, "kd": 1.0, "ki": 0.22},
            "sim": {"dt": 0.01, "t_final": 40.0,
                    "input": {"omega_i": 1.0},
                    "init": {"variance": 0.01, "seed": 0}},
            "noise": {"input_noise_variance": noise.get("input", 0.0),
                      "omega0_noise_variance": noise.get("omega0", 0.0)},
            "master_seed": 11,
        }))
        return cfg

    def test_sweep_runs_and_is_worker_invariant(self, tmp_path):
        cfg = self.make_config(tmp_path)
        out1, out2 = tmp_path / "w1", tmp_path / "w2"
        assert run_cli("sweep", "--config", str(cfg), "--out", str(out1),
                       "--workers", "1") == 0
        assert run_cli("sweep", "--config", str(cfg), "--out", str(out2),
                       "--workers", "2") == 0
        assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()
        lines = (out1 / "sweep.csv").read_text().strip().split("\n")
        assert len(lines) == 1 + 4

    def test_seed_flag_overrides_config(self, tmp_path):
        cfg = self.make_config(tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run_cli("sweep", "--config", str(cfg), "--out", str(out1),
                       "--seed", "99") == 0
        assert run_cli("sweep", "--config", str(cfg), "--out", str(out2)) == 0
        assert (out1 / "sweep.csv").read_bytes() != (out2 / "sweep.csv").read_bytes()
        m1 = json.loads((out1 / "manifest.json").read_text())
        assert m1["master_seed"] == 99

    def test_unknown_sweep_key_rejected(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(json.dumps({"omega_i_span": {}}))
        assert run_cli("sweep", "--config", str(cfg),
                       "--out", str(tmp_path / "x")) == 2


class TestMc:
    def test_mc_bundle(self, tmp_path):
        cfg = tmp_path / "mc.json"
        cfg.write_text(json.dumps({
            "runs": 2,
            "params": {"omega0": 1.0, "kv": 0.8, "kd": 0.8},
            "sim": {"dt": 0.01, "t_final": 40.0,
                    "input": {"omega_i": 1.02},
                    "init": {"variance": 0.01, "seed": 0}},
            "noise": {"omega0_noise_variance": 0.01},
            "master_seed": 4,
        }))
        out = tmp_path / "mc"
        assert run_cli("mc", "--config", str(cfg), "--out", str(out)) == 0
        assert (out / "mc.csv").exists()
        assert (out / "mc_ref.csv").exists()
        lines = (out / "mc.csv").read_text().strip().split("\n")
        assert len(lines) == 3

    def test_runs_flag_override(self, tmp_path):
        cfg = tmp_path / "mc.json"
        cfg.write_text(json.dumps({
            "runs": 5,
            "params": {"omega0": 1.0, "kv": 0.8, "kd": 0.8},
            "sim": {"dt": 0.01, "t_final": 20.0, "input": {"omega_i": 1.02},
                    "init": {"variance": 0.01, "seed": 0}},
            "noise": {},
        }))
        out = tmp_path / "mc"
        assert run_cli("mc", "--config", str(cfg), "--runs", "1",
                       "--out", str(out)) == 0
        assert len((out / "mc.csv").read_text().strip().split("\n")) == 2


class TestEnvironment:
    def test_out_dir_env_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PLLAB_OUT_DIR", str(tmp_path / "from_env"))
        assert run_cli("bode", "--points", "3") == 0
        assert (tmp_path / "from_env" / "bode.csv").exists()

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as err:
            run_cli("--version")
        assert err.value.code == 0
        assert "pllab" in capsys.readouterr().out
