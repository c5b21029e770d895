"""Named scenario presets for the single-link simulation study.

Shared setup: B = 1 kg, M = 1 kg, K_j = 3000 N/m, gravity-free point mass,
PD gains K_p = 50 N/m, K_d = 5 N·s/m, step to theta_d = 0.01 m from rest,
bristle friction with the canonical parameter set.  Observer gain rows:
low (L=50, L_p=10, L_i=25) and high (L=100, L_p=20, L_i=100); the measured
feedback baseline uses the same L per row with L_p = L_i = 0.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .control import PdGains, Sinusoid, Step
from .friction import PAPER_LUGRE, LuGreModel, NoFriction
from .observer import ObserverGains, ObserverKind
from .plant import FjrParams, PointMass
from .sim import ScenarioConfig

__all__ = ["PRESET_NAMES", "preset", "fig4_presets", "tikhonov_base", "TIKHONOV_L_VALUES"]

LOW = ObserverGains(L=50.0, L_p=10.0, L_i=25.0)
HIGH = ObserverGains(L=100.0, L_p=20.0, L_i=100.0)

TIKHONOV_L_VALUES = (25.0, 50.0, 100.0, 200.0)

_GRID = {
    "fig4a": (ObserverKind.PID_TYPE, ObserverGains(L=50.0, L_p=10.0, L_i=25.0)),
    "fig4b": (ObserverKind.PD_TYPE, ObserverGains(L=50.0, L_p=10.0)),
    "fig4c": (ObserverKind.BASELINE_MEASURED, ObserverGains(L=50.0)),
    "fig4d": (ObserverKind.PID_TYPE, ObserverGains(L=100.0, L_p=20.0, L_i=100.0)),
    "fig4e": (ObserverKind.PD_TYPE, ObserverGains(L=100.0, L_p=20.0)),
    "fig4f": (ObserverKind.BASELINE_MEASURED, ObserverGains(L=100.0)),
}

PRESET_NAMES = tuple(_GRID) + ("motivating", "tikhonov")


def _single_link_plant(friction=True) -> FjrParams:
    model = LuGreModel(PAPER_LUGRE) if friction else NoFriction()
    return FjrParams(B=np.array([1.0]), K_j=np.array([3000.0]), link=PointMass(1.0),
                     friction=model)


def _base_config(label: str, **overrides) -> ScenarioConfig:
    # 45 s covers >= 3 low-gain stick-slip cycles (period ~5.5 s) and lets
    # the presliding creep of the converging runs settle below 1e-6; the
    # oscillation window must span at least one full cycle.
    cfg = ScenarioConfig(
        plant=_single_link_plant(),
        gains=PdGains(K_p=50.0, K_d=5.0),
        reference=Step(theta_d=np.array([0.01])),
        observer_kind=ObserverKind.NONE,
        observer_gains=ObserverGains(L=0.0),
        duration=45.0,
        dt=1e-5,
        stride=100,
        oscillation_window=8.0,
        label=label,
    )
    return replace(cfg, **overrides) if overrides else cfg


def preset(name: str, **overrides) -> ScenarioConfig:
    """Build a named preset; keyword overrides patch the config."""
    if name in _GRID:
        kind, gains = _GRID[name]
        cfg = _base_config(name, observer_kind=kind, observer_gains=gains)
    elif name == "motivating":
        cfg = _base_config("motivating", duration=10.0)
    elif name == "motivating_pid":
        cfg = _base_config("motivating_pid", duration=10.0,
                           observer_kind=ObserverKind.PID_TYPE, observer_gains=LOW)
    elif name == "tikhonov":
        cfg = tikhonov_base()
    else:
        raise KeyError(f"unknown preset {name!r}")
    return replace(cfg, **overrides) if overrides else cfg


def fig4_presets() -> dict:
    return {name: preset(name) for name in _GRID}


def tikhonov_base() -> ScenarioConfig:
    """Sinusoidal tracking base case for the observer-gain sweep."""
    return _base_config(
        "tikhonov",
        duration=10.0,
        reference=Sinusoid(amplitude=0.01, frequency_hz=0.5),
        observer_kind=ObserverKind.PID_TYPE,
        observer_gains=ObserverGains(L=50.0, L_p=10.0, L_i=25.0),
    )
