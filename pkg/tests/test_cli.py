"""Command-line front end, config files, trace persistence."""

import json
import subprocess
import sys

import numpy as np
import pytest

from fricobs import cli, presets, sim
from fricobs.config import ConfigError, config_from_dict, load_config, resolved_dict
from fricobs.traceio import read_meta, read_trace, write_trace

SAMPLE_TOML = """
[plant]
link = "point_mass"
mass = 1.0
B = 1.0
K_j = 3000.0

[friction]
model = "lugre"

[controller]
K_p = 50.0
K_d = 5.0
reference = "step"
theta_d = 0.01

[observer]
kind = "pd"
L = 50.0
L_p = 10.0
L_i = 0.0

[scenario]
label = "sample"
duration = 2.0
dt = 1e-5
stride = 100
"""


@pytest.fixture()
def sample_config(tmp_path):
    path = tmp_path / "sample.toml"
    path.write_text(SAMPLE_TOML)
    return path


class TestConfigFiles:
    def test_load_and_run(self, sample_config):
        cfg = load_config(sample_config)
        assert cfg.label == "sample"
        assert cfg.observer_kind.value == "pd"
        trace = sim.run_scenario(cfg)
        assert len(trace.t) == 2001

    def test_unknown_key_rejected_by_name(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text("[plant]\nbogus = 1\n")
        with pytest.raises(ConfigError) as err:
            load_config(bad)
        assert "bogus" in str(err.value)

    def test_unknown_section_rejected(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text("[nonsense]\nx = 1\n")
        with pytest.raises(ConfigError):
            load_config(bad)

    def test_invalid_gains_rejected(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text(SAMPLE_TOML.replace('kind = "pd"', 'kind = "pid"')
                       .replace("L_i = 0.0", "L_i = 60.0"))
        with pytest.raises(ConfigError, match="L_p"):
            load_config(bad)

    def test_resolved_dict_round_trip(self, sample_config):
        cfg = load_config(sample_config)
        echo = resolved_dict(cfg)
        cfg2 = config_from_dict(echo)
        assert resolved_dict(cfg2) == echo

    def test_preset_configs_round_trip(self):
        for name in ("fig4a", "fig4d", "tikhonov"):
            cfg = presets.preset(name)
            echo = resolved_dict(cfg)
            assert resolved_dict(config_from_dict(echo)) == echo


class TestTraceIO:
    def test_lossless_round_trip(self, tmp_path, sample_config):
        cfg = load_config(sample_config)
        trace = sim.run_scenario(cfg)
        path = tmp_path / "trace.csv"
        write_trace(trace, path)
        back = read_trace(path)
        for field in sim.SimTrace.COLUMN_FIELDS:
            assert np.array_equal(getattr(trace, field), getattr(back, field)), field
        assert np.array_equal(trace.t, back.t)

    def test_multijoint_headers(self, tmp_path):
        n = 3
        t = np.arange(4.0)
        cols = {f: np.arange(4 * n, dtype=float).reshape(4, n)
                for f in sim.SimTrace.COLUMN_FIELDS}
        tr = sim.SimTrace(t=t, label="m", **cols)
        path = tmp_path / "multi.csv"
        write_trace(tr, path)
        header = path.read_text().splitlines()[0]
        assert "q_0" in header and "q_2" in header
        back = read_trace(path)
        assert back.q.shape == (4, 3)
        assert np.array_equal(back.q, cols["q"])


class TestRunCommand:
    def test_run_preset_writes_outputs(self, tmp_path):
        rc = cli.main(["run", "fig4b", "--out", str(tmp_path), "--duration", "2.0"])
        assert rc == 0
        assert (tmp_path / "fig4b_trace.csv").exists()
        assert (tmp_path / "fig4b_ideal.csv").exists()
        meta = read_meta(tmp_path / "fig4b_meta.json")
        assert meta["resolved_config"]["observer"]["kind"] == "pd"
        assert meta["resolved_config"]["scenario"]["duration"] == 2.0
        assert "oscillation" in meta["diagnostics"]
        # traces share the time grid
        tr = read_trace(tmp_path / "fig4b_trace.csv")
        ideal = read_trace(tmp_path / "fig4b_ideal.csv")
        assert np.array_equal(tr.t, ideal.t)

    def test_run_config_file(self, tmp_path, sample_config):
        rc = cli.main(["run", str(sample_config), "--out", str(tmp_path)])
        assert rc == 0
        assert (tmp_path / "sample_trace.csv").exists()

    def test_missing_config_exits_2(self, tmp_path, capsys):
        rc = cli.main(["run", "missing.toml", "--out", str(tmp_path)])
        assert rc == 2
        assert "missing.toml" in capsys.readouterr().err

    def test_unknown_key_exits_2_naming_key(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text("[observer]\nwrong_gain = 2\n")
        rc = cli.main(["run", str(bad), "--out", str(tmp_path)])
        assert rc == 2
        assert "wrong_gain" in capsys.readouterr().err

    def test_blowup_exits_3_with_time(self, tmp_path, capsys):
        bad = tmp_path / "unstable.toml"
        bad.write_text(SAMPLE_TOML.replace('kind = "pd"', 'kind = "baseline"')
                       .replace("L = 50.0", "L = 1e6")
                       .replace("L_p = 10.0", "L_p = 0.0"))
        rc = cli.main(["run", str(bad), "--out", str(tmp_path)])
        assert rc == 3
        assert "t =" in capsys.readouterr().err

    def test_run_motivating_writes_events(self, tmp_path):
        rc = cli.main(["run", "motivating", "--out", str(tmp_path)])
        assert rc == 0
        meta = read_meta(tmp_path / "motivating_meta.json")
        assert meta["events"]["no_observer_stuck"] is True
        assert 1.35 <= meta["events"]["breakaway"]["net_force"] <= 1.65
        for name in ("no_observer", "pid", "ideal"):
            assert (tmp_path / f"motivating_{name}_trace.csv").exists()


class TestSweepCommand:
    def test_single_value_matches_run(self, tmp_path, sample_config):
        rc = cli.main(["sweep", str(sample_config), "--param", "observer.L",
                       "--values", "50", "--out", str(tmp_path / "sweep")])
        assert rc == 0
        rc = cli.main(["run", str(sample_config), "--out", str(tmp_path / "run")])
        assert rc == 0
        swept = read_trace(tmp_path / "sweep" / "sample_L50_trace.csv")
        direct = read_trace(tmp_path / "run" / "sample_trace.csv")
        assert np.array_equal(swept.theta, direct.theta)

    def test_invalid_values_rejected_per_value(self, tmp_path, sample_config):
        pid_cfg = tmp_path / "pid.toml"
        pid_cfg.write_text(SAMPLE_TOML.replace('kind = "pd"', 'kind = "pid"')
                           .replace("L_i = 0.0", "L_i = 25.0"))
        rc = cli.main(["sweep", str(pid_cfg), "--param", "observer.L_i",
                       "--values", "30,60", "--out", str(tmp_path / "s")])
        assert rc == 0
        summary = (tmp_path / "s" / "sweep_summary.csv").read_text().splitlines()
        assert len(summary) == 3  # header + 2 rows
        assert "rejected" in summary[2]
        assert "ok" in summary[1]

    def test_unknown_parameter_exits_2(self, tmp_path, sample_config, capsys):
        rc = cli.main(["sweep", str(sample_config), "--param", "observer.bogus",
                       "--values", "1", "--out", str(tmp_path)])
        assert rc == 2
        assert "bogus" in capsys.readouterr().err


class TestVerifyCommand:
    def test_verify_passes_and_reports(self, tmp_path, capsys):
        rc = cli.main(["verify", "--out", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "riccati" in out and "PASS" in out and "FAIL" not in out
        report = read_meta(tmp_path / "verify_report.json")
        assert report["all_passed"] is True
        assert all(c["passed"] for c in report["checks"])


class TestEntryPoint:
    def test_version_flag(self):
        out = subprocess.run([sys.executable, "-m", "fricobs.cli", "--version"],
                             capture_output=True, text=True)
        assert out.returncode == 0
