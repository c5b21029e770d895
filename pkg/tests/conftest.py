"""Shared fixtures: the expensive scenario runs happen once per session."""

import numpy as np
import pytest

from fricobs import presets, sim

FIG4_NAMES = ("fig4a", "fig4b", "fig4c", "fig4d", "fig4e", "fig4f")

ACCEPTANCE_LINES = []


def record_acceptance(name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    width = max(len(name) for name, _, _ in ACCEPTANCE_LINES)
    for name, passed, detail in ACCEPTANCE_LINES:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{name:<{width}}  {status}  {detail}")


@pytest.fixture(scope="session")
def fig4_runs():
    """All six grid scenarios at full duration, with diagnostics."""
    runs = {}
    for name in FIG4_NAMES:
        cfg = presets.preset(name)
        trace = sim.run_scenario(cfg)
        runs[name] = {"cfg": cfg, "trace": trace,
                      "diag": sim.compute_diagnostics(trace, cfg)}
    return runs


@pytest.fixture(scope="session")
def fig4_runs_halved():
    """The grid re-run at half the step (stride doubled: same sample grid)."""
    runs = {}
    for name in FIG4_NAMES:
        cfg = presets.preset(name, dt=5e-6, stride=200)
        trace = sim.run_scenario(cfg)
        runs[name] = {"cfg": cfg, "trace": trace,
                      "diag": sim.compute_diagnostics(trace, cfg)}
    return runs


@pytest.fixture(scope="session")
def motivating_results():
    cfg_no = presets.preset("motivating")
    cfg_pid = presets.preset("motivating_pid")
    return sim.motivating_example(cfg_no, cfg_pid, cfg_no.ideal_variant())


@pytest.fixture(scope="session")
def tikhonov_results():
    rows, ideal = sim.tikhonov_sweep(presets.tikhonov_base(), presets.TIKHONOV_L_VALUES)
    return rows, ideal
