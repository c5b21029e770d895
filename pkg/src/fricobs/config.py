"""Scenario configs as TOML documents and plain dicts.

A config file has sections [plant], [friction], [controller], [observer],
[scenario], [outputs]; unknown keys are rejected by name.  Every run's
sidecar stores the fully resolved dict, which round-trips through
:func:`config_from_dict`, so a run is reproducible from its outputs alone.
"""

from __future__ import annotations

import copy
import sys

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .control import Hold, PdGains, Sinusoid, Step, theta_d_from_qd
from .friction import LuGreModel, LuGreParams, NoFriction
from .observer import ObserverGains, ObserverKind
from .plant import FjrParams, Planar2R, PointMass
from .sim import InitialConditions, ScenarioConfig

__all__ = ["ConfigError", "load_config", "config_from_dict", "resolved_dict"]


class ConfigError(ValueError):
    """Invalid or unknown configuration content; carries the offending key."""

    def __init__(self, message: str, key: str = ""):
        super().__init__(message)
        self.key = key


_DEFAULTS = {
    "plant": {
        "link": "point_mass",
        "mass": 1.0,
        "B": 1.0,
        "K_j": 3000.0,
        "m1": 1.0, "m2": 1.0, "l1": 0.5, "l2": 0.5,
        "r1": 0.25, "r2": 0.25, "I1": 0.05, "I2": 0.05, "g0": 9.81,
    },
    "friction": {
        "model": "lugre",
        "sigma0": 1e5,
        "sigma1": float(np.sqrt(1e5)),
        "sigma2": 0.4,
        "f_c": 1.0,
        "f_s": 1.5,
        "v_s": 1e-3,
    },
    "controller": {
        "K_p": 50.0,
        "K_d": 5.0,
        "c3": 10.0,
        "reference": "step",
        "theta_d": 0.01,
        "q_d": None,
        "t_on": 0.0,
        "amplitude": 0.01,
        "frequency_hz": 0.5,
        "offset": 0.0,
    },
    "observer": {"kind": "pid", "L": 50.0, "L_p": 10.0, "L_i": 25.0},
    "scenario": {
        "label": "scenario",
        "duration": 10.0,
        "dt": 1e-5,
        "stride": 100,
        "seed": 0,
        "tau_ext": [],
        "q0": 0.0, "qd0": 0.0, "theta0": 0.0, "thetad0": 0.0,
        "theta_n0": None, "thetad_n0": None, "i_enr0": 0.0, "z0": 0.0,
        "oscillation_window": 2.0,
        "oscillation_threshold": 1e-4,
        "steady_window": 1.0,
        "transient_skip": 2.0,
    },
    "outputs": {"include_ideal": True},
}


def _merge(raw: dict) -> dict:
    merged = copy.deepcopy(_DEFAULTS)
    for section, content in raw.items():
        if section not in merged:
            raise ConfigError(f"unknown section [{section}]", key=section)
        if not isinstance(content, dict):
            raise ConfigError(f"section [{section}] must be a table", key=section)
        for key, value in content.items():
            if key not in merged[section]:
                raise ConfigError(f"unknown key '{key}' in section [{section}]",
                                  key=f"{section}.{key}")
            merged[section][key] = value
    return merged


def load_config(path) -> ScenarioConfig:
    """Parse a TOML scenario file into a validated ScenarioConfig."""
    with open(path, "rb") as fh:
        try:
            raw = tomllib.load(fh)
        except tomllib.TOMLDecodeError as err:
            raise ConfigError(f"malformed config: {err}") from err
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a (possibly partial) sectioned dict."""
    d = _merge(raw)

    pl = d["plant"]
    if pl["link"] == "point_mass":
        link = PointMass(pl["mass"])
    elif pl["link"] == "planar_2r":
        link = Planar2R(pl["m1"], pl["m2"], pl["l1"], pl["l2"],
                        pl["r1"], pl["r2"], pl["I1"], pl["I2"], pl["g0"])
    else:
        raise ConfigError(f"unknown link model {pl['link']!r}", key="plant.link")
    n = link.n_joints

    def vec(x):
        return np.broadcast_to(np.asarray(x, dtype=float), (n,)).copy()

    fr = d["friction"]
    if fr["model"] == "lugre":
        friction = LuGreModel(LuGreParams(fr["sigma0"], fr["sigma1"], fr["sigma2"],
                                          fr["f_c"], fr["f_s"], fr["v_s"]))
    elif fr["model"] == "none":
        friction = NoFriction()
    else:
        raise ConfigError(f"unknown friction model {fr['model']!r}", key="friction.model")

    try:
        plant = FjrParams(B=vec(pl["B"]), K_j=vec(pl["K_j"]), link=link, friction=friction)
    except ValueError as err:
        raise ConfigError(str(err), key="plant") from err

    ct = d["controller"]
    try:
        gains = PdGains(K_p=vec(ct["K_p"]), K_d=vec(ct["K_d"]))
    except ValueError as err:
        raise ConfigError(str(err), key="controller") from err

    g_qd = np.zeros(n)
    q_d = None
    if ct["q_d"] is not None:
        q_d = vec(ct["q_d"])
        theta_d = theta_d_from_qd(q_d, plant.K_j, link)
        g_qd = link.gravity(q_d)
    else:
        theta_d = vec(ct["theta_d"])

    kind_ref = ct["reference"]
    if kind_ref == "step":
        reference = Step(theta_d=theta_d, t_on=float(ct["t_on"]))
    elif kind_ref == "hold":
        reference = Hold(theta_d=theta_d)
    elif kind_ref == "sinusoid":
        reference = Sinusoid(amplitude=float(ct["amplitude"]),
                             frequency_hz=float(ct["frequency_hz"]),
                             offset=float(ct["offset"]), n_joints=n)
    else:
        raise ConfigError(f"unknown reference {kind_ref!r}", key="controller.reference")

    ob = d["observer"]
    try:
        okind = ObserverKind(ob["kind"])
    except ValueError as err:
        raise ConfigError(f"unknown observer kind {ob['kind']!r}", key="observer.kind") from err
    ogains = ObserverGains(L=float(ob["L"]), L_p=float(ob["L_p"]), L_i=float(ob["L_i"]))

    sc = d["scenario"]
    ics = InitialConditions(
        q0=sc["q0"], qd0=sc["qd0"], theta0=sc["theta0"], thetad0=sc["thetad0"],
        theta_n0=sc["theta_n0"], thetad_n0=sc["thetad_n0"],
        i_enr0=sc["i_enr0"], z0=sc["z0"],
    )
    tau_ext = tuple((float(p[0]), float(p[1]), float(p[2])) for p in sc["tau_ext"])

    cfg = ScenarioConfig(
        plant=plant, gains=gains, reference=reference,
        observer_kind=okind, observer_gains=ogains,
        duration=float(sc["duration"]), dt=float(sc["dt"]), stride=int(sc["stride"]),
        tau_ext=tau_ext, ics=ics, g_qd=g_qd, q_d=q_d, seed=int(sc["seed"]), c3=float(ct["c3"]),
        oscillation_window=float(sc["oscillation_window"]),
        oscillation_threshold=float(sc["oscillation_threshold"]),
        steady_window=float(sc["steady_window"]),
        transient_skip=float(sc["transient_skip"]),
        label=str(sc["label"]),
    )
    try:
        cfg.validate()
    except ValueError as err:
        raise ConfigError(str(err)) from err
    return cfg


def resolved_dict(cfg: ScenarioConfig) -> dict:
    """Serialize a config back to the sectioned-dict form, defaults applied."""

    def scal(x):
        a = np.atleast_1d(np.asarray(x, dtype=float))
        return float(a[0]) if a.size == 1 else a.tolist()

    link = cfg.plant.link
    if isinstance(link, PointMass):
        plant = {"link": "point_mass", "mass": link.mass}
    else:
        plant = {"link": "planar_2r", "m1": link.m1, "m2": link.m2,
                 "l1": link.l1, "l2": link.l2, "r1": link.r1, "r2": link.r2,
                 "I1": link.I1, "I2": link.I2, "g0": link.g0}
    plant["B"] = scal(cfg.plant.B)
    plant["K_j"] = scal(cfg.plant.K_j)

    fr = cfg.plant.friction
    if isinstance(fr, LuGreModel):
        p = fr.params
        friction = {"model": "lugre", "sigma0": p.sigma0, "sigma1": p.sigma1,
                    "sigma2": p.sigma2, "f_c": p.f_c, "f_s": p.f_s, "v_s": p.v_s}
    else:
        friction = {"model": "none"}

    ref = cfg.reference
    controller = {"K_p": scal(cfg.gains.K_p), "K_d": scal(cfg.gains.K_d), "c3": cfg.c3}
    if isinstance(ref, Step):
        controller.update(reference="step", theta_d=scal(ref.theta_d), t_on=ref.t_on)
    elif isinstance(ref, Hold):
        controller.update(reference="hold", theta_d=scal(ref.theta_d))
    else:
        controller.update(reference="sinusoid", amplitude=ref.amplitude,
                          frequency_hz=ref.frequency_hz, offset=ref.offset)
    if cfg.q_d is not None:
        controller["q_d"] = scal(cfg.q_d)

    observer = {"kind": cfg.observer_kind.value, "L": cfg.observer_gains.L,
                "L_p": cfg.observer_gains.L_p, "L_i": cfg.observer_gains.L_i}

    ics = cfg.ics
    scenario = {
        "label": cfg.label, "duration": cfg.duration, "dt": cfg.dt,
        "stride": cfg.stride, "seed": cfg.seed,
        "tau_ext": [list(p) for p in cfg.tau_ext],
        "q0": scal(ics.q0), "qd0": scal(ics.qd0),
        "theta0": scal(ics.theta0), "thetad0": scal(ics.thetad0),
        "theta_n0": None if ics.theta_n0 is None else scal(ics.theta_n0),
        "thetad_n0": None if ics.thetad_n0 is None else scal(ics.thetad_n0),
        "i_enr0": scal(ics.i_enr0), "z0": scal(ics.z0),
        "oscillation_window": cfg.oscillation_window,
        "oscillation_threshold": cfg.oscillation_threshold,
        "steady_window": cfg.steady_window,
        "transient_skip": cfg.transient_skip,
    }
    return {"plant": plant, "friction": friction, "controller": controller,
            "observer": observer, "scenario": scenario, "outputs": {"include_ideal": True}}
