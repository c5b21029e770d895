"""JIT-compiled fixed-step integration kernels for single-joint scenarios.

The math here mirrors the generic array path in :mod:`fricobs.sim`
stage-for-stage (classical 4-stage rule, bristle state committed
semi-implicitly with the midpoint stage velocity); the agreement of the two
paths is pinned by tests.  Scalars only; multi-joint and non-point-mass
plants take the generic path.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# trace column order shared with sim.SimTrace
COLUMNS = (
    "t", "q", "qd", "theta", "thetad", "theta_n", "thetad_n", "i_enr",
    "tau_j", "tau_c", "tau_m", "tau_f_hat", "tau_f_true", "z", "tau_ext",
)

REF_STEP = 0
REF_SINUSOID = 1

OBS_NONE = 0
OBS_PID = 1
OBS_PD = 2
OBS_BASELINE = 3


@njit(cache=True)
def _ref_eval(ref_kind, a, b, c, t):
    if ref_kind == REF_SINUSOID:
        return c + a * math.sin(2.0 * math.pi * b * t)
    # step: target a switched on at t_on = b
    if t < b:
        return 0.0
    return a


@njit(cache=True)
def _ext_eval(ext_t0, ext_t1, ext_v, t):
    total = 0.0
    for i in range(ext_t0.shape[0]):
        if ext_t0[i] <= t < ext_t1[i]:
            total += ext_v[i]
    return total


@njit(cache=True)
def _lugre_stage_force(z, v, h, sig0, sig1, sig2, fc, fs, vs):
    g = fc + (fs - fc) * math.exp(-((v / vs) ** 2))
    if h == 0.0:
        zdot = v - sig0 * abs(v) * z / g
        return sig0 * z + sig1 * zdot + sig2 * v
    z_new = (z + h * v) / (1.0 + h * sig0 * abs(v) / g)
    zdot = (z_new - z) / h
    return sig0 * z_new + sig1 * zdot + sig2 * v


@njit(cache=True)
def _lugre_commit(z, v, dt, sig0, fc, fs, vs):
    g = fc + (fs - fc) * math.exp(-((v / vs) ** 2))
    return (z + dt * v) / (1.0 + dt * sig0 * abs(v) / g)


@njit(cache=True)
def _stage(t, q, dq, th, dth, thn, dthn, ienr, z, h,
           M, B, Kj, Kp, Kd, g_qd,
           ref_kind, ref_a, ref_b, ref_c,
           obs_kind, L, Lp, Li,
           friction_on, sig0, sig1, sig2, fc, fs, vs,
           ext_t0, ext_t1, ext_v):
    theta_d = _ref_eval(ref_kind, ref_a, ref_b, ref_c, t)
    tau_e = _ext_eval(ext_t0, ext_t1, ext_v, t)
    tau_j = Kj * (th - q)

    if obs_kind == OBS_PID or obs_kind == OBS_PD:
        fb_p, fb_v = thn, dthn
    else:
        fb_p, fb_v = th, dth
    tau_c = -Kp * (fb_p - theta_d) - Kd * fb_v + g_qd

    if obs_kind == OBS_NONE:
        tau_hat = 0.0
        e = 0.0
    else:
        e = thn - th
        ed = dthn - dth
        tau_hat = -B * L * (ed + Lp * e + Li * ienr)
    tau_m = tau_c - tau_hat

    if friction_on == 1:
        tau_f = -_lugre_stage_force(z, dth, h, sig0, sig1, sig2, fc, fs, vs)
    else:
        tau_f = 0.0

    ddq = (tau_j + tau_e) / M
    ddth = (tau_m + tau_f - tau_j) / B
    ddthn = (tau_c - tau_j) / B

    return (dq, ddq, dth, ddth, dthn, ddthn, e,
            tau_j, tau_c, tau_m, tau_hat, tau_f, tau_e)


@njit(cache=True)
def fjr_kernel(n_steps, stride, dt,
               M, B, Kj, Kp, Kd, g_qd,
               ref_kind, ref_a, ref_b, ref_c,
               obs_kind, L, Lp, Li,
               friction_on, sig0, sig1, sig2, fc, fs, vs,
               ext_t0, ext_t1, ext_v,
               q0, dq0, th0, dth0, thn0, dthn0, ienr0, z0):
    """Integrate a single-joint scenario; returns (n_samples, 15) trace."""
    n_samples = n_steps // stride + 1
    out = np.empty((n_samples, 15))

    q, dq, th, dth = q0, dq0, th0, dth0
    if obs_kind == OBS_NONE:
        thn, dthn, ienr = th, dth, 0.0
    else:
        thn, dthn, ienr = thn0, dthn0, ienr0
    z = z0

    sample = 0
    for step in range(n_steps + 1):
        if step % stride == 0:
            s = _stage(step * dt, q, dq, th, dth, thn, dthn, ienr, z, 0.0,
                       M, B, Kj, Kp, Kd, g_qd, ref_kind, ref_a, ref_b, ref_c,
                       obs_kind, L, Lp, Li,
                       friction_on, sig0, sig1, sig2, fc, fs, vs,
                       ext_t0, ext_t1, ext_v)
            out[sample, 0] = step * dt
            out[sample, 1] = q
            out[sample, 2] = dq
            out[sample, 3] = th
            out[sample, 4] = dth
            out[sample, 5] = thn
            out[sample, 6] = dthn
            out[sample, 7] = ienr
            out[sample, 8] = s[7]
            out[sample, 9] = s[8]
            out[sample, 10] = s[9]
            out[sample, 11] = s[10]
            out[sample, 12] = s[11]
            out[sample, 13] = z
            out[sample, 14] = s[12]
            sample += 1
            if not (math.isfinite(th) and math.isfinite(q) and math.isfinite(thn)):
                return out[:sample]
        if step == n_steps:
            break

        t = step * dt
        half = 0.5 * dt

        k1 = _stage(t, q, dq, th, dth, thn, dthn, ienr, z, 0.0,
                    M, B, Kj, Kp, Kd, g_qd, ref_kind, ref_a, ref_b, ref_c,
                    obs_kind, L, Lp, Li,
                    friction_on, sig0, sig1, sig2, fc, fs, vs,
                    ext_t0, ext_t1, ext_v)
        q2 = q + half * k1[0]
        dq2 = dq + half * k1[1]
        th2 = th + half * k1[2]
        dth2 = dth + half * k1[3]
        thn2 = thn + half * k1[4]
        dthn2 = dthn + half * k1[5]
        ienr2 = ienr + half * k1[6]
        k2 = _stage(t + half, q2, dq2, th2, dth2, thn2, dthn2, ienr2, z, half,
                    M, B, Kj, Kp, Kd, g_qd, ref_kind, ref_a, ref_b, ref_c,
                    obs_kind, L, Lp, Li,
                    friction_on, sig0, sig1, sig2, fc, fs, vs,
                    ext_t0, ext_t1, ext_v)
        q3 = q + half * k2[0]
        dq3 = dq + half * k2[1]
        th3 = th + half * k2[2]
        dth3 = dth + half * k2[3]
        thn3 = thn + half * k2[4]
        dthn3 = dthn + half * k2[5]
        ienr3 = ienr + half * k2[6]
        k3 = _stage(t + half, q3, dq3, th3, dth3, thn3, dthn3, ienr3, z, half,
                    M, B, Kj, Kp, Kd, g_qd, ref_kind, ref_a, ref_b, ref_c,
                    obs_kind, L, Lp, Li,
                    friction_on, sig0, sig1, sig2, fc, fs, vs,
                    ext_t0, ext_t1, ext_v)
        q4 = q + dt * k3[0]
        dq4 = dq + dt * k3[1]
        th4 = th + dt * k3[2]
        dth4 = dth + dt * k3[3]
        thn4 = thn + dt * k3[4]
        dthn4 = dthn + dt * k3[5]
        ienr4 = ienr + dt * k3[6]
        k4 = _stage(t + dt, q4, dq4, th4, dth4, thn4, dthn4, ienr4, z, dt,
                    M, B, Kj, Kp, Kd, g_qd, ref_kind, ref_a, ref_b, ref_c,
                    obs_kind, L, Lp, Li,
                    friction_on, sig0, sig1, sig2, fc, fs, vs,
                    ext_t0, ext_t1, ext_v)

        sixth = dt / 6.0
        q += sixth * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        dq += sixth * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        th += sixth * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        dth += sixth * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        if obs_kind == OBS_NONE:
            thn, dthn, ienr = th, dth, 0.0
        else:
            thn += sixth * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
            dthn += sixth * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
            ienr += sixth * (k1[6] + 2.0 * k2[6] + 2.0 * k3[6] + k4[6])

        if friction_on == 1:
            v_mid = 0.5 * (dth2 + dth3)
            z = _lugre_commit(z, v_mid, dt, sig0, fc, fs, vs)

    return out


@njit(cache=True)
def difference_dynamics_kernel(tau_f, dt_sample, substeps, B, L, Lp, Li):
    """tau_f_hat response of the standalone difference dynamics.

    The input is held constant between samples; state starts at zero.
    Returns tau_f_hat at the sample instants.
    """
    n = tau_f.shape[0]
    out = np.empty(n)
    i_e = 0.0
    e = 0.0
    ed = 0.0
    h = dt_sample / substeps
    for k in range(n):
        out[k] = -B * L * (ed + Lp * e + Li * i_e)
        u = tau_f[k]
        for _ in range(substeps):
            # stage derivatives of (i_e, e, ed)
            a1 = e
            b1 = ed
            c1 = (-B * L * (ed + Lp * e + Li * i_e) - u) / B
            i2 = i_e + 0.5 * h * a1
            e2 = e + 0.5 * h * b1
            ed2 = ed + 0.5 * h * c1
            a2 = e2
            b2 = ed2
            c2 = (-B * L * (ed2 + Lp * e2 + Li * i2) - u) / B
            i3 = i_e + 0.5 * h * a2
            e3 = e + 0.5 * h * b2
            ed3 = ed + 0.5 * h * c2
            a3 = e3
            b3 = ed3
            c3 = (-B * L * (ed3 + Lp * e3 + Li * i3) - u) / B
            i4 = i_e + h * a3
            e4 = e + h * b3
            ed4 = ed + h * c3
            a4 = e4
            b4 = ed4
            c4 = (-B * L * (ed4 + Lp * e4 + Li * i4) - u) / B
            i_e += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            e += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            ed += h / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
    return out


@njit(cache=True)
def mass_ramp_kernel(mass, ramp_rate, dt, n_steps,
                     sig0, sig1, sig2, fc, fs, vs,
                     v_detect, sustain_steps):
    """Slowly ramp a force on a frictional unit mass; detect breakaway.

    Returns (breakaway force, time of detection, peak velocity); the force
    is the applied ramp value at the first instant the velocity stays above
    ``v_detect`` for ``sustain_steps`` consecutive steps, or -1 if motion
    never sustains.
    """
    v = 0.0
    z = 0.0
    above = 0
    v_max = 0.0
    for step in range(n_steps):
        t = step * dt
        half = 0.5 * dt
        u1 = ramp_rate * t
        u2 = ramp_rate * (t + half)
        u4 = ramp_rate * (t + dt)

        c1 = (u1 - _lugre_stage_force(z, v, 0.0, sig0, sig1, sig2, fc, fs, vs)) / mass
        v2 = v + half * c1
        c2 = (u2 - _lugre_stage_force(z, v2, half, sig0, sig1, sig2, fc, fs, vs)) / mass
        v3 = v + half * c2
        c3 = (u2 - _lugre_stage_force(z, v3, half, sig0, sig1, sig2, fc, fs, vs)) / mass
        v4 = v + dt * c3
        c4 = (u4 - _lugre_stage_force(z, v4, dt, sig0, sig1, sig2, fc, fs, vs)) / mass

        v += dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        z = _lugre_commit(z, 0.5 * (v2 + v3), dt, sig0, fc, fs, vs)

        if v > v_max:
            v_max = v
        if abs(v) >= v_detect:
            above += 1
            if above >= sustain_steps:
                t_first = (step - sustain_steps + 2) * dt
                return ramp_rate * t_first, t_first, v_max
        else:
            above = 0
    return -1.0, -1.0, v_max
