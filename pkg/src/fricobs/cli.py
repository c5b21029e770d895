"""Command-line front end: run presets or config files, sweep parameters,
and run the verification suites.

Exit codes: 0 success, 1 verification failure, 2 invalid config (the
offending key is reported), 3 numerical blow-up (the failure time is
reported).
"""

from __future__ import annotations

import argparse
import copy
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__, presets
from .config import ConfigError, config_from_dict, load_config, resolved_dict
from .friction import (PAPER_LUGRE, hold_constant_velocity, lugre_g,
                       friction_passivity_audit, lugre_step, simulate_breakaway_ramp)
from .observer import ObserverGains, ObserverKind, equivalent_lpf, observer_passivity_sweep, riccati_residual, simulate_difference_dynamics
from .sim import NonFiniteError, compute_diagnostics, motivating_example, run_scenario, tikhonov_sweep
from .traceio import write_meta, write_summary, write_trace

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICS = 3


def _load_target(target: str):
    if target in presets.PRESET_NAMES:
        return presets.preset(target)
    path = Path(target)
    if not path.exists():
        raise ConfigError(f"no such preset or config file: {target}", key=target)
    return load_config(path)


def _apply_overrides(cfg, args):
    patch = {}
    if args.dt is not None:
        patch["dt"] = args.dt
    if args.duration is not None:
        patch["duration"] = args.duration
    if args.seed is not None:
        patch["seed"] = args.seed
    if patch:
        cfg = replace(cfg, **patch)
        cfg.validate()
    return cfg


def _write_run(cfg, out: Path, trace, ideal, extra_meta=None):
    out.mkdir(parents=True, exist_ok=True)
    write_trace(trace, out / f"{cfg.label}_trace.csv")
    if ideal is not None:
        write_trace(ideal, out / f"{cfg.label}_ideal.csv")
    meta = {
        "label": cfg.label,
        "fricobs_version": __version__,
        "resolved_config": resolved_dict(cfg),
        "diagnostics": compute_diagnostics(trace, cfg),
    }
    if extra_meta:
        meta.update(extra_meta)
    write_meta(meta, out / f"{cfg.label}_meta.json")
    return meta


def cmd_run(args) -> int:
    out = Path(args.out)
    if args.target == "verify":
        return cmd_verify(args)

    if args.target == "motivating":
        cfg_no = _apply_overrides(presets.preset("motivating"), args)
        cfg_pid = _apply_overrides(presets.preset("motivating_pid"), args)
        cfg_ideal = cfg_no.ideal_variant()
        result = motivating_example(cfg_no, cfg_pid, cfg_ideal)
        out.mkdir(parents=True, exist_ok=True)
        for name, tr in result["traces"].items():
            write_trace(tr, out / f"motivating_{name}_trace.csv")
        meta = {
            "label": "motivating",
            "fricobs_version": __version__,
            "events": result["events"],
            "resolved_config": {
                "no_observer": resolved_dict(cfg_no),
                "pid": resolved_dict(cfg_pid),
            },
            "diagnostics": compute_diagnostics(result["traces"]["pid"], cfg_pid),
        }
        write_meta(meta, out / "motivating_meta.json")
        print(f"motivating: stuck={result['events']['no_observer_stuck']}, "
              f"breakaway net force={result['events'].get('breakaway', {}).get('net_force')}")
        return EXIT_OK

    if args.target == "tikhonov":
        base = _apply_overrides(presets.tikhonov_base(), args)
        rows, ideal = tikhonov_sweep(base, presets.TIKHONOV_L_VALUES)
        out.mkdir(parents=True, exist_ok=True)
        write_trace(ideal, out / "tikhonov_ideal.csv")
        for row in rows:
            if "trace" in row:
                write_trace(row["trace"], out / f"tikhonov_L{row['L']:g}_trace.csv")
        write_summary(rows, out / "tikhonov_summary.csv",
                      columns=["L", "tracking_error", "oscillation",
                               "oscillation_amplitude", "status"])
        write_meta({
            "label": "tikhonov",
            "fricobs_version": __version__,
            "resolved_config": resolved_dict(base),
            "rows": [{k: v for k, v in r.items() if k != "trace"} for r in rows],
        }, out / "tikhonov_meta.json")
        for row in rows:
            print(f"L={row['L']:g}: {row.get('tracking_error', row['status'])}")
        return EXIT_OK

    cfg = _apply_overrides(_load_target(args.target), args)
    trace, ideal = run_scenario(cfg, with_ideal=True)
    meta = _write_run(cfg, out, trace, ideal)
    d = meta["diagnostics"]
    print(f"{cfg.label}: oscillation={d['oscillation']['flag']} "
          f"(amp={d['oscillation']['amplitude']:.3g}), "
          f"ss_error={d['steady_state_error']}, "
          f"observer_energy_min={d['observer_energy_min']:.3g}")
    return EXIT_OK


_SWEEPABLE = {
    "observer.L", "observer.L_p", "observer.L_i",
    "controller.K_p", "controller.K_d",
    "friction.sigma0", "friction.sigma1", "friction.sigma2",
    "friction.f_c", "friction.f_s", "friction.v_s",
    "plant.B", "plant.K_j", "plant.mass",
    "scenario.duration", "scenario.dt",
}


def cmd_sweep(args) -> int:
    base = _apply_overrides(_load_target(args.target), args)
    if args.param not in _SWEEPABLE:
        raise ConfigError(f"cannot sweep parameter {args.param!r} "
                          f"(known: {sorted(_SWEEPABLE)})", key=args.param)
    section, key = args.param.split(".", 1)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise ConfigError("no sweep values given", key="values")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    base_dict = resolved_dict(base)
    rows = []
    for val in values:
        d = copy.deepcopy(base_dict)
        d[section][key] = val
        d["scenario"]["label"] = f"{base.label}_{key}{val:g}"
        row = {"param": args.param, "value": val}
        try:
            cfg = config_from_dict(d)
        except ConfigError as err:
            row["status"] = f"rejected: {err}"
            rows.append(row)
            print(f"{args.param}={val:g}: rejected ({err})")
            continue
        try:
            trace, ideal = run_scenario(cfg, with_ideal=True)
        except NonFiniteError as err:
            row["status"] = f"unstable: {err}"
            rows.append(row)
            print(f"{args.param}={val:g}: unstable ({err})")
            continue
        diag = compute_diagnostics(trace, cfg)
        skip = trace.t >= min(cfg.transient_skip, 0.5 * float(trace.t[-1]))
        row.update(
            status="ok",
            tracking_error=float(np.max(np.abs(trace.theta[skip] - ideal.theta[skip]))),
            oscillation=diag["oscillation"]["flag"],
            oscillation_amplitude=diag["oscillation"]["amplitude"],
            ss_error=float(np.max(np.abs(diag["steady_state_error"]))),
        )
        rows.append(row)
        _write_run(cfg, out, trace, ideal)
        print(f"{args.param}={val:g}: tracking_error={row['tracking_error']:.3g} "
              f"oscillation={row['oscillation']}")
    write_summary(rows, out / "sweep_summary.csv",
                  columns=["param", "value", "status", "tracking_error",
                           "oscillation", "oscillation_amplitude", "ss_error"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites


def _verify_riccati():
    cases = [
        (1.0, ObserverGains(50.0, 10.0, 25.0), ObserverKind.PID_TYPE),
        (1.0, ObserverGains(100.0, 20.0, 100.0), ObserverKind.PID_TYPE),
        (1.0, ObserverGains(50.0, 10.0), ObserverKind.PD_TYPE),
        (1.0, ObserverGains(100.0, 20.0), ObserverKind.PD_TYPE),
    ]
    rows = []
    for B, g, kind in cases:
        res = riccati_residual(B, g, kind)
        rows.append((f"riccati {kind.value} L={g.L:g} L_p={g.L_p:g} L_i={g.L_i:g}",
                     res <= 1e-9, f"residual={res:.3e}"))
    return rows


def _verify_lpf_equivalence():
    from scipy import signal

    fs = 1000.0
    t = np.arange(0.0, 3.0, 1.0 / fs)
    tau_f = np.where((t % 1.0) < 0.5, 1.0, -1.0)
    cases = [
        (ObserverKind.PID_TYPE, ObserverGains(50.0, 10.0, 25.0)),
        (ObserverKind.PD_TYPE, ObserverGains(50.0, 10.0)),
        (ObserverKind.BASELINE_MEASURED, ObserverGains(50.0)),
    ]
    rows = []
    for kind, g in cases:
        y_ode = simulate_difference_dynamics(tau_f, 1.0 / fs, 1.0, g, kind)
        lpf = equivalent_lpf(1.0, g, kind)
        num_d, den_d, _ = signal.cont2discrete((lpf.num, lpf.den), 1.0 / fs, method="zoh")
        y_filt = signal.lfilter(num_d[0], den_d, tau_f)
        m = t >= 0.5
        rel = float(np.max(np.abs(y_ode[m] - y_filt[m])) / np.max(np.abs(y_filt[m])))
        rows.append((f"lpf equivalence {kind.value}", rel <= 1e-4, f"rel={rel:.3e}"))
    return rows


def _verify_passivity_sweep():
    omega = np.logspace(-1, 3, 400)
    rows = []
    re_pd = observer_passivity_sweep(1.0, ObserverGains(50.0, 10.0), ObserverKind.PD_TYPE, omega)
    rows.append(("passivity pd: Re H >= 0 at all frequencies",
                 bool(np.all(re_pd >= 0)), f"min={re_pd.min():.3g}"))
    g = ObserverGains(50.0, 10.0, 25.0)
    re_pid = observer_passivity_sweep(1.0, g, ObserverKind.PID_TYPE, omega)
    below = omega < np.sqrt(g.L_i) * 0.999
    above = omega > np.sqrt(g.L_i) * 1.001
    ok = bool(np.all(re_pid[below] < 0) and np.all(re_pid[above] >= 0))
    rows.append(("passivity pid: Re H < 0 exactly below sqrt(L_i)", ok,
                 f"crossover at {np.sqrt(g.L_i):.3g} rad/s"))
    re_base = observer_passivity_sweep(1.0, ObserverGains(50.0), ObserverKind.BASELINE_MEASURED, omega)
    rows.append(("passivity baseline: Re H > 0", bool(np.all(re_base > 0)),
                 f"const={re_base[0]:.3g}"))
    return rows


def _verify_friction_oracles():
    p = PAPER_LUGRE
    rows = []
    g0 = float(lugre_g(0.0, p))
    rows.append(("g(0) equals the stiction level", abs(g0 - p.f_s) < 1e-12, f"g(0)={g0}"))

    for v in (0.01, 0.0005):
        expected = float(lugre_g(v, p)) + p.sigma2 * v
        got = hold_constant_velocity(p, v, t_hold=1.0, dt=1e-5)
        rows.append((f"steady sliding at v={v}", abs(got - expected) <= 1e-3,
                     f"tau_f={got:.6f} expected={expected:.6f}"))

    f_brk, t_brk = simulate_breakaway_ramp(p)
    ok = abs(f_brk - p.f_s) <= 0.05 * p.f_s
    rows.append(("breakaway ramp within 5% of f_s", ok, f"force={f_brk:.4f} at t={t_brk:.2f}s"))

    # bristle bound + passivity on a sinusoidal probe
    dt = 1e-5
    t = np.arange(0.0, 2.0, dt)
    v = 0.01 * np.sin(2 * np.pi * 1.0 * t)
    z = np.zeros(1)
    zmax = 0.0
    taus = np.empty_like(t)
    for i, vi in enumerate(v):
        z, tau = lugre_step(z, vi, dt, p)
        zmax = max(zmax, abs(float(z[0])))
        taus[i] = tau[0] if np.ndim(tau) else tau
    rows.append(("bristle deflection bounded by f_s/sigma0",
                 zmax <= p.z_max * (1 + 1e-12), f"max|z|={zmax:.3e} bound={p.z_max:.3e}"))
    energy = friction_passivity_audit(v, taus, dt)
    rows.append(("friction passivity from rest", float(energy.min()) >= -1e-6,
                 f"min E={energy.min():.3e} J"))
    return rows


def cmd_verify(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    rows += _verify_riccati()
    rows += _verify_lpf_equivalence()
    rows += _verify_passivity_sweep()
    rows += _verify_friction_oracles()

    width = max(len(r[0]) for r in rows)
    all_ok = True
    for name, ok, detail in rows:
        all_ok &= ok
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}")
    write_meta(
        {"fricobs_version": __version__, "all_passed": bool(all_ok),
         "checks": [{"name": n, "passed": bool(ok), "detail": d} for n, ok, d in rows]},
        out / "verify_report.json",
    )
    print(f"{'all checks passed' if all_ok else 'SOME CHECKS FAILED'}")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fricobs",
        description="Friction-observer simulations for flexible joint robots",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset or a TOML config")
    run.add_argument("target", help=f"preset ({', '.join(presets.PRESET_NAMES)}, verify) or config path")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--dt", type=float, default=None)
    run.add_argument("--duration", type=float, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="run a scenario over a parameter grid")
    sweep.add_argument("target", help="preset name or config path")
    sweep.add_argument("--param", required=True, help="e.g. observer.L")
    sweep.add_argument("--values", required=True, help="comma-separated numbers")
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--dt", type=float, default=None)
    sweep.add_argument("--duration", type=float, default=None)
    sweep.add_argument("--seed", type=int, default=None)
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="run the analytic verification suites")
    verify.add_argument("--out", required=True)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, FileNotFoundError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except NonFiniteError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICS


if __name__ == "__main__":
    sys.exit(main())
