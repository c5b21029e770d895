"""Coupled plant/observer integration, named scenarios, trace diagnostics.

A scenario advances (q, qd, theta, thetad, theta_n, thetad_n, i_enr) with a
classical 4-stage explicit rule; the friction bristle state is advanced
semi-implicitly once per step using the midpoint stage velocity, so the
stiff part never limits the step.  Single-joint point-mass scenarios run in
a compiled kernel; everything else takes the generic array path below.
Both paths implement the same stages and are pinned together by tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernel
from .control import Hold, PdGains, Sinusoid, Step, check_damping_margin
from .friction import LuGreModel, LuGreState, NoFriction
from .observer import ObserverGains, ObserverKind, ObserverState, equilibrium_prediction, friction_estimate
from .plant import FjrParams, PlantState, PointMass, joint_torque

__all__ = [
    "ScenarioConfig",
    "InitialConditions",
    "SimTrace",
    "FullState",
    "NonFiniteError",
    "integrate_step",
    "run_scenario",
    "detect_oscillation",
    "steady_state_error",
    "observer_energy",
    "compute_diagnostics",
    "tikhonov_sweep",
    "motivating_example",
    "lemma1_monitor",
    "reconstruct_perturbation",
]


class NonFiniteError(RuntimeError):
    """Raised when the integrated state stops being finite."""

    def __init__(self, t_fail: float):
        super().__init__(f"state became non-finite at t = {t_fail:.6g} s")
        self.t_fail = t_fail


@dataclass
class InitialConditions:
    q0: float | np.ndarray = 0.0
    qd0: float | np.ndarray = 0.0
    theta0: float | np.ndarray = 0.0
    thetad0: float | np.ndarray = 0.0
    theta_n0: float | np.ndarray | None = None  # default: theta0
    thetad_n0: float | np.ndarray | None = None  # default: thetad0
    i_enr0: float | np.ndarray = 0.0
    z0: float | np.ndarray = 0.0

    def resolved(self, n: int):
        def vec(x):
            return np.broadcast_to(np.asarray(x, dtype=float), (n,)).copy()

        q0, qd0 = vec(self.q0), vec(self.qd0)
        th0, thd0 = vec(self.theta0), vec(self.thetad0)
        thn0 = th0.copy() if self.theta_n0 is None else vec(self.theta_n0)
        thdn0 = thd0.copy() if self.thetad_n0 is None else vec(self.thetad_n0)
        return q0, qd0, th0, thd0, thn0, thdn0, vec(self.i_enr0), vec(self.z0)


@dataclass
class ScenarioConfig:
    """Everything needed to reproduce one run."""

    plant: FjrParams
    gains: PdGains
    reference: object
    observer_kind: ObserverKind
    observer_gains: ObserverGains
    duration: float
    dt: float
    stride: int = 100
    tau_ext: tuple = ()  # pulses (t_on, t_off, value), summed
    ics: InitialConditions = field(default_factory=InitialConditions)
    g_qd: float | np.ndarray = 0.0
    q_d: np.ndarray | None = None  # link setpoint behind theta_d, kept for echo
    seed: int = 0
    c3: float = 10.0
    oscillation_window: float = 2.0
    oscillation_threshold: float = 1e-4
    steady_window: float = 1.0
    transient_skip: float = 2.0
    label: str = "scenario"

    def validate(self) -> None:
        if not (self.duration > 0 and self.dt > 0):
            raise ValueError("duration and dt must be positive")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")
        if self.n_steps % self.stride != 0:
            raise ValueError(
                f"duration/dt = {self.n_steps} steps not divisible by stride {self.stride}"
            )
        fr = self.plant.friction
        if isinstance(fr, LuGreModel) and fr.params.sigma0 >= 1e4 and self.dt > 2e-5:
            raise ValueError(
                f"dt = {self.dt} too coarse for stiff bristle dynamics; need dt <= 2e-5"
            )
        self.observer_gains.validate(self.observer_kind)
        if self.observer_kind is not ObserverKind.NONE:
            check_damping_margin(self.gains, self.plant.B, self.observer_gains.L, self.c3)

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))

    def ideal_variant(self) -> "ScenarioConfig":
        """Friction-free, observer-less twin used for the theta_ideal overlay."""
        plant = FjrParams(
            B=self.plant.B.copy(), K_j=self.plant.K_j.copy(),
            link=self.plant.link, friction=NoFriction(),
        )
        return replace(
            self, plant=plant, observer_kind=ObserverKind.NONE,
            observer_gains=ObserverGains(L=0.0), label=self.label + "_ideal",
        )


@dataclass
class SimTrace:
    """Uniformly sampled run record; arrays are (n_samples, n_joints)."""

    t: np.ndarray
    q: np.ndarray
    qd: np.ndarray
    theta: np.ndarray
    thetad: np.ndarray
    theta_n: np.ndarray
    thetad_n: np.ndarray
    e_nr: np.ndarray
    i_enr: np.ndarray
    tau_j: np.ndarray
    tau_c: np.ndarray
    tau_m: np.ndarray
    tau_f_hat: np.ndarray
    tau_f_true: np.ndarray
    z: np.ndarray
    tau_ext: np.ndarray
    label: str = "trace"
    meta: dict = field(default_factory=dict)

    COLUMN_FIELDS = (
        "q", "qd", "theta", "thetad", "theta_n", "thetad_n", "e_nr", "i_enr",
        "tau_j", "tau_c", "tau_m", "tau_f_hat", "tau_f_true", "z", "tau_ext",
    )

    @property
    def n_joints(self) -> int:
        return self.q.shape[1]

    @property
    def dt_sample(self) -> float:
        return float(self.t[1] - self.t[0])

    def tail_slice(self, window: float) -> slice:
        """Index range covering the trailing ``window`` seconds."""
        if window <= 0 or window > self.t[-1] - self.t[0]:
            raise ValueError("window must be positive and shorter than the trace")
        start = int(np.searchsorted(self.t, self.t[-1] - window))
        return slice(start, len(self.t))


@dataclass
class FullState:
    plant: PlantState
    observer: ObserverState
    t: float

    def copy(self) -> "FullState":
        return FullState(self.plant.copy(), self.observer.copy(), self.t)


def _ext_torque(cfg: ScenarioConfig, t: float, n: int):
    total = np.zeros(n)
    for t0, t1, val in cfg.tau_ext:
        if t0 <= t < t1:
            total += np.broadcast_to(np.asarray(val, dtype=float), (n,))
    return total


def _stage_eval(cfg: ScenarioConfig, t: float, q, qd, th, thd, thn, thdn, ienr,
                fstate, h: float):
    """One derivative evaluation; mirrors the compiled kernel's _stage."""
    p = cfg.plant
    n = p.n_joints
    theta_d, _ = cfg.reference(t)
    tau_e = _ext_torque(cfg, t, n)
    tau_j = p.K_j * (th - q)

    kind = cfg.observer_kind
    if kind.uses_nominal_feedback:
        fb_p, fb_v = thn, thdn
    else:
        fb_p, fb_v = th, thd
    tau_c = -cfg.gains.K_p * (fb_p - theta_d) - cfg.gains.K_d * fb_v + cfg.g_qd

    if kind is ObserverKind.NONE:
        tau_hat = np.zeros(n)
        e = np.zeros(n)
    else:
        g = cfg.observer_gains
        e = thn - th
        ed = thdn - thd
        tau_hat = -p.B * g.L * (ed + g.L_p * e + g.L_i * ienr)
    tau_m = tau_c - tau_hat

    tau_f = -p.friction.stage_force(fstate, thd, h)

    M, bias, grav = p.link.terms(q, qd)
    qdd = np.linalg.solve(M, tau_j + tau_e - bias - grav)
    thdd = (tau_m + tau_f - tau_j) / p.B
    thndd = (tau_c - tau_j) / p.B

    return (qd, qdd, thd, thdd, thdn, thndd, e), (tau_j, tau_c, tau_m, tau_hat, tau_f, tau_e)


def integrate_step(state: FullState, t: float, cfg: ScenarioConfig) -> FullState:
    """Advance the coupled state one dt (generic array path)."""
    p = state.plant
    o = state.observer
    dt = cfg.dt
    half = 0.5 * dt
    x = (p.q, p.qd, p.theta, p.thetad, o.theta_n, o.thetad_n, o.i_enr)

    k1, _ = _stage_eval(cfg, t, *x, p.friction_state, 0.0)
    x2 = tuple(a + half * b for a, b in zip(x, k1))
    k2, _ = _stage_eval(cfg, t + half, *x2, p.friction_state, half)
    x3 = tuple(a + half * b for a, b in zip(x, k2))
    k3, _ = _stage_eval(cfg, t + half, *x3, p.friction_state, half)
    x4 = tuple(a + dt * b for a, b in zip(x, k3))
    k4, _ = _stage_eval(cfg, t + dt, *x4, p.friction_state, dt)

    xn = tuple(
        a + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4)
    )
    v_mid = 0.5 * (x2[3] + x3[3])
    fstate = cfg.plant.friction.commit(p.friction_state, v_mid, dt)

    if not all(np.all(np.isfinite(a)) for a in xn):
        raise NonFiniteError(t + dt)

    if cfg.observer_kind is ObserverKind.NONE:
        obs = ObserverState(xn[2].copy(), xn[3].copy(), np.zeros_like(xn[2]))
    else:
        obs = ObserverState(xn[4], xn[5], xn[6])
    plant = PlantState(q=xn[0], qd=xn[1], theta=xn[2], thetad=xn[3], friction_state=fstate)
    return FullState(plant=plant, observer=obs, t=t + dt)


def _initial_state(cfg: ScenarioConfig) -> FullState:
    n = cfg.plant.n_joints
    q0, qd0, th0, thd0, thn0, thdn0, ienr0, z0 = cfg.ics.resolved(n)
    fstate = cfg.plant.friction.initial_state(n, z0)
    if cfg.observer_kind is ObserverKind.NONE:
        obs = ObserverState(th0.copy(), thd0.copy(), np.zeros(n))
    else:
        obs = ObserverState(thn0, thdn0, ienr0)
    return FullState(PlantState(q0, qd0, th0, thd0, fstate), obs, 0.0)


def _trace_from_matrix(mat: np.ndarray, cfg: ScenarioConfig) -> SimTrace:
    cols = {name: mat[:, i:i + 1] for i, name in enumerate(_kernel.COLUMNS)}
    t = cols.pop("t")[:, 0]
    theta_d_end = cfg.reference(float(t[-1]))[0]
    return SimTrace(
        t=t,
        e_nr=cols["theta_n"] - cols["theta"],
        label=cfg.label,
        meta={"theta_d_end": theta_d_end.tolist()},
        **cols,
    )


def _kernel_args(cfg: ScenarioConfig):
    p = cfg.plant
    ref = cfg.reference
    if isinstance(ref, Step):
        ref_kind, ra, rb, rc = _kernel.REF_STEP, float(np.atleast_1d(ref.theta_d)[0]), ref.t_on, 0.0
    elif isinstance(ref, Hold):
        ref_kind, ra, rb, rc = _kernel.REF_STEP, float(np.atleast_1d(ref.theta_d)[0]), -1.0, 0.0
    elif isinstance(ref, Sinusoid):
        ref_kind, ra, rb, rc = _kernel.REF_SINUSOID, ref.amplitude, ref.frequency_hz, ref.offset
    else:
        return None

    obs_map = {
        ObserverKind.NONE: _kernel.OBS_NONE,
        ObserverKind.PID_TYPE: _kernel.OBS_PID,
        ObserverKind.PD_TYPE: _kernel.OBS_PD,
        ObserverKind.BASELINE_MEASURED: _kernel.OBS_BASELINE,
    }
    g = cfg.observer_gains
    if isinstance(p.friction, LuGreModel):
        friction_on, fp = 1, p.friction.params
        fr = (fp.sigma0, fp.sigma1, fp.sigma2, fp.f_c, fp.f_s, fp.v_s)
    elif isinstance(p.friction, NoFriction):
        friction_on, fr = 0, (1.0, 0.0, 0.0, 1.0, 1.0, 1.0)
    else:
        return None

    if cfg.tau_ext:
        ext_t0 = np.array([e[0] for e in cfg.tau_ext], dtype=float)
        ext_t1 = np.array([e[1] for e in cfg.tau_ext], dtype=float)
        ext_v = np.array([float(np.atleast_1d(e[2])[0]) for e in cfg.tau_ext], dtype=float)
    else:
        ext_t0 = ext_t1 = ext_v = np.zeros(0)

    ics = cfg.ics.resolved(1)
    return (
        cfg.n_steps, cfg.stride, cfg.dt,
        p.link.mass, float(p.B[0]), float(p.K_j[0]),
        float(cfg.gains.K_p[0]), float(cfg.gains.K_d[0]), float(np.atleast_1d(cfg.g_qd)[0]),
        ref_kind, ra, rb, rc,
        obs_map[cfg.observer_kind], g.L, g.L_p, g.L_i,
        friction_on, *fr,
        ext_t0, ext_t1, ext_v,
        *(float(v[0]) for v in ics),
    )


def _run_kernel(cfg: ScenarioConfig) -> SimTrace:
    args = _kernel_args(cfg)
    mat = _kernel.fjr_kernel(*args)
    expected = cfg.n_steps // cfg.stride + 1
    if mat.shape[0] < expected:
        raise NonFiniteError(float(mat[-1, 0]))
    return _trace_from_matrix(mat, cfg)


def _run_generic(cfg: ScenarioConfig) -> SimTrace:
    n = cfg.plant.n_joints
    n_samples = cfg.n_steps // cfg.stride + 1
    cols = {name: np.empty((n_samples, n)) for name in SimTrace.COLUMN_FIELDS if name != "e_nr"}
    t_arr = np.empty(n_samples)

    state = _initial_state(cfg)
    sample = 0
    for step in range(cfg.n_steps + 1):
        t = step * cfg.dt
        if step % cfg.stride == 0:
            p, o = state.plant, state.observer
            _, taus = _stage_eval(cfg, t, p.q, p.qd, p.theta, p.thetad,
                                  o.theta_n, o.thetad_n, o.i_enr, p.friction_state, 0.0)
            tau_j, tau_c, tau_m, tau_hat, tau_f, tau_e = taus
            t_arr[sample] = t
            cols["q"][sample] = p.q
            cols["qd"][sample] = p.qd
            cols["theta"][sample] = p.theta
            cols["thetad"][sample] = p.thetad
            cols["theta_n"][sample] = o.theta_n
            cols["thetad_n"][sample] = o.thetad_n
            cols["i_enr"][sample] = o.i_enr
            cols["tau_j"][sample] = tau_j
            cols["tau_c"][sample] = tau_c
            cols["tau_m"][sample] = tau_m
            cols["tau_f_hat"][sample] = tau_hat
            cols["tau_f_true"][sample] = tau_f
            cols["z"][sample] = p.friction_state.z
            cols["tau_ext"][sample] = tau_e
            sample += 1
        if step == cfg.n_steps:
            break
        state = integrate_step(state, t, cfg)

    theta_d_end = cfg.reference(float(t_arr[-1]))[0]
    return SimTrace(
        t=t_arr, e_nr=cols["theta_n"] - cols["theta"], label=cfg.label,
        meta={"theta_d_end": theta_d_end.tolist()}, **cols,
    )


def run_scenario(cfg: ScenarioConfig, with_ideal: bool = False):
    """Run a scenario; optionally also its friction-free ideal twin.

    Returns the trace, or (trace, ideal_trace) when ``with_ideal`` is set.
    """
    cfg.validate()
    fast = isinstance(cfg.plant.link, PointMass) and _kernel_args(cfg) is not None
    trace = _run_kernel(cfg) if fast else _run_generic(cfg)
    if not with_ideal:
        return trace
    ideal_cfg = cfg.ideal_variant()
    ideal_cfg.validate()
    ideal = _run_kernel(ideal_cfg) if fast else _run_generic(ideal_cfg)
    return trace, ideal


# ---------------------------------------------------------------------------
# trace-level diagnostics


def detect_oscillation(trace: SimTrace, window: float = 2.0, threshold: float = 1e-4):
    """Peak-to-peak amplitude of theta over the trailing window.

    Returns (flag, amplitude); flag set when any joint's peak-to-peak
    exceeds the threshold.
    """
    sl = trace.tail_slice(window)
    seg = trace.theta[sl]
    if seg.shape[0] < 2:
        raise ValueError("window too short for the sampling stride")
    centered = seg - seg.mean(axis=0)
    amp = float(np.max(centered.max(axis=0) - centered.min(axis=0)))
    return amp > threshold, amp


def steady_state_error(trace: SimTrace, window: float = 1.0, theta_d=None):
    """Mean per-joint theta - theta_d over the trailing window."""
    if theta_d is None:
        theta_d = np.asarray(trace.meta["theta_d_end"], dtype=float)
    sl = trace.tail_slice(window)
    return trace.theta[sl].mean(axis=0) - np.atleast_1d(theta_d)


def observer_energy(trace: SimTrace):
    """Cumulative E(t) = integral of (-e_nr_dot) . tau_f_hat; returns (E, min)."""
    ed = trace.thetad_n - trace.thetad
    power = np.sum(-ed * trace.tau_f_hat, axis=1)
    e = np.zeros(len(power))
    dt = trace.dt_sample
    e[1:] = np.cumsum(0.5 * dt * (power[1:] + power[:-1]))
    return e, float(np.min(e))


def reconstruct_perturbation(trace: SimTrace, cfg: ScenarioConfig) -> np.ndarray:
    """Perturbation w driving the difference dynamics, rebuilt per sample.

    w = -tau_f + B (L_p e_nr_dot + L_i e_nr), with the gain terms present
    per observer kind.
    """
    g = cfg.observer_gains
    B = cfg.plant.B
    ed = trace.thetad_n - trace.thetad
    w = -trace.tau_f_true
    if cfg.observer_kind in (ObserverKind.PID_TYPE, ObserverKind.PD_TYPE):
        w = w + B * g.L_p * ed
    if cfg.observer_kind is ObserverKind.PID_TYPE:
        w = w + B * g.L_i * trace.e_nr
    return w


def lemma1_monitor(trace: SimTrace, cfg: ScenarioConfig) -> dict:
    """Check ||w|| <= b1 ||x_nr|| + b2 ||thetad|| + b3 ||thetad_n|| + b4.

    Constants derive from the friction bound and the gain terms in w; the
    monitor reports them together with the worst pointwise margin.
    """
    g = cfg.observer_gains
    B = float(np.max(cfg.plant.B))
    fr = cfg.plant.friction
    if isinstance(fr, LuGreModel):
        p = fr.params
        vmax = float(np.max(np.abs(trace.thetad)))
        b2 = p.sigma1 + p.sigma2
        b4 = p.f_s + p.sigma1 * (p.f_s / p.f_c) * vmax
    else:
        b2, b4 = 0.0, 0.0
    b1 = B * math.sqrt(g.L_p**2 + g.L_i**2)
    b3 = 0.0

    w = np.linalg.norm(reconstruct_perturbation(trace, cfg), axis=1)
    ed = trace.thetad_n - trace.thetad
    x_nr = np.sqrt(
        np.sum(trace.i_enr**2, axis=1) + np.sum(trace.e_nr**2, axis=1) + np.sum(ed**2, axis=1)
    )
    bound = (
        b1 * x_nr
        + b2 * np.linalg.norm(trace.thetad, axis=1)
        + b3 * np.linalg.norm(trace.thetad_n, axis=1)
        + b4
    )
    margin = float(np.min(bound - w))
    return {"b1": b1, "b2": b2, "b3": b3, "b4": b4,
            "worst_margin": margin, "holds": bool(margin >= -1e-12)}


def compute_diagnostics(trace: SimTrace, cfg: ScenarioConfig) -> dict:
    """Standard per-run diagnostics block (JSON-serializable).

    Windows longer than half the trace are clamped so that short exploratory
    runs still produce a (marked) diagnostics block.
    """
    span = float(trace.t[-1] - trace.t[0])
    osc_win = min(cfg.oscillation_window, 0.5 * span)
    steady_win = min(cfg.steady_window, 0.5 * span)
    clamped = osc_win < cfg.oscillation_window or steady_win < cfg.steady_window
    osc_flag, osc_amp = detect_oscillation(trace, osc_win, cfg.oscillation_threshold)
    ss = steady_state_error(trace, steady_win)
    sl = trace.tail_slice(steady_win)
    tau_f_bar = trace.tau_f_true[sl].mean(axis=0)  # motor-equation convention
    e_series, e_min = observer_energy(trace)

    diag = {
        "oscillation": {
            "flag": bool(osc_flag),
            "amplitude": osc_amp,
            "window": osc_win,
            "threshold": cfg.oscillation_threshold,
        },
        "windows_clamped": clamped,
        "steady_state_error": ss.tolist(),
        "steady_state_caveat_oscillating": bool(osc_flag),
        "observer_energy_min": e_min,
        "tau_f_bar": tau_f_bar.tolist(),
        "assumption2": {
            "tau_j_span": float(np.max(trace.tau_j[sl].max(axis=0) - trace.tau_j[sl].min(axis=0))),
            "max_abs_thetad_n": float(np.max(np.abs(trace.thetad_n[sl]))),
        },
    }

    kind = cfg.observer_kind
    if kind in (ObserverKind.PID_TYPE, ObserverKind.PD_TYPE):
        B0 = float(cfg.plant.B[0])
        tau_bar_model = -float(tau_f_bar[0])  # back to the friction model's sign
        e_pred, i_pred = equilibrium_prediction(B0, cfg.observer_gains, kind, tau_bar_model)
        eq = {"e_nr_pred": e_pred, "e_nr_end": float(trace.e_nr[-1, 0])}
        if kind is ObserverKind.PID_TYPE:
            eq["i_enr_pred"] = i_pred
            eq["i_enr_end"] = float(trace.i_enr[-1, 0])
        else:
            eq["ss_error_pred"] = -e_pred
        diag["equilibrium"] = eq
        diag["lemma1"] = lemma1_monitor(trace, cfg)
    return diag


# ---------------------------------------------------------------------------
# composite experiments


def tikhonov_sweep(base_cfg: ScenarioConfig, L_values):
    """Tracking-error sweep over the main observer gain.

    Runs the ideal friction-free reference once, then the scenario per L
    (L_p, L_i fixed), returning one summary row per L with the
    post-transient sup-norm tracking error vs the ideal trajectory.
    """
    if not isinstance(base_cfg.reference, Sinusoid):
        raise ValueError("gain sweep expects a sinusoidal reference")
    ideal = run_scenario(base_cfg.ideal_variant())
    skip = min(base_cfg.transient_skip, 0.5 * float(ideal.t[-1]))
    mask = ideal.t >= skip
    rows = []
    for L in L_values:
        cfg = replace(
            base_cfg,
            observer_gains=replace(base_cfg.observer_gains, L=float(L)),
            label=f"{base_cfg.label}_L{L:g}",
        )
        try:
            cfg.observer_gains.validate(cfg.observer_kind)
        except ValueError as err:
            rows.append({"L": float(L), "status": f"rejected: {err}"})
            continue
        try:
            trace = run_scenario(cfg)
        except NonFiniteError as err:
            rows.append({"L": float(L), "status": f"unstable: {err}"})
            continue
        err_inf = float(np.max(np.abs(trace.theta[mask] - ideal.theta[mask])))
        osc_win = min(cfg.oscillation_window, 0.5 * float(trace.t[-1] - trace.t[0]))
        osc_flag, osc_amp = detect_oscillation(trace, osc_win, cfg.oscillation_threshold)
        rows.append(
            {
                "L": float(L),
                "tracking_error": err_inf,
                "oscillation": bool(osc_flag),
                "oscillation_amplitude": osc_amp,
                "status": "ok",
                "trace": trace,
            }
        )
    return rows, ideal


def first_breakaway(trace: SimTrace, v_threshold: float = 1e-2,
                    sustain: float = 5e-3) -> int | None:
    """First sample index of sustained macroscopic sliding.

    The threshold must sit well above the Stribeck velocity: the observer's
    wind-up is not quasi-static, so presliding creep reaches speeds of
    order v_s and a threshold near v_s fires inside the stuck phase.
    Returns the first index where |thetad| stays above v_threshold for
    ``sustain`` seconds, or None if motion never sustains.
    """
    speed = np.max(np.abs(trace.thetad), axis=1)
    need = max(1, int(round(sustain / trace.dt_sample)))
    above = speed >= v_threshold
    run = 0
    for i, flag in enumerate(above):
        run = run + 1 if flag else 0
        if run >= need:
            return i - need + 1
    return None


def motivating_example(cfg_no_obs: ScenarioConfig, cfg_pid: ScenarioConfig,
                       cfg_ideal: ScenarioConfig) -> dict:
    """Run the stuck-mass narrative: no observer, low-gain pid, ideal.

    The event log records whether the uncompensated run stays stuck, and
    the net motor-side force the compensated run wound up to break the
    stiction (the peak |tau_m| before sliding first sustains).
    """
    t_no = run_scenario(cfg_no_obs)
    t_pid = run_scenario(cfg_pid)
    t_ideal = run_scenario(cfg_ideal)

    fr = cfg_pid.plant.friction
    v_thr = 10.0 * fr.params.v_s if isinstance(fr, LuGreModel) else 1e-2

    events = {
        "no_observer_max_abs_theta": float(np.max(np.abs(t_no.theta))),
        "no_observer_stuck": bool(np.max(np.abs(t_no.theta)) < 1e-4),
    }
    idx = first_breakaway(t_pid, v_threshold=v_thr)
    if idx is not None:
        events["breakaway"] = {
            "t": float(t_pid.t[idx]),
            "net_force": float(np.max(np.abs(t_pid.tau_m[: idx + 1, 0]))),
            "tau_m_at_onset": float(t_pid.tau_m[idx, 0]),
            "tau_c": float(t_pid.tau_c[idx, 0]),
            "tau_f_hat": float(t_pid.tau_f_hat[idx, 0]),
        }
    ss_ideal = steady_state_error(t_ideal, cfg_ideal.steady_window)
    events["ideal_final_error"] = float(np.max(np.abs(ss_ideal)))
    return {
        "traces": {"no_observer": t_no, "pid": t_pid, "ideal": t_ideal},
        "events": events,
    }
