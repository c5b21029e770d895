"""Motor-side friction models and friction property audits.

The main model is LuGre: an internal bristle deflection z driven by the
sliding velocity, producing presliding stiffness, the Stribeck dip between
stiction and Coulomb levels, and viscous drag.  A friction-free variant is
provided for ideal-plant reference runs.

Sign convention: every function here returns the friction force in the
model's own convention, i.e. positive for positive steady sliding velocity.
The plant injects the negated value into the motor dynamics; that negation
lives in exactly one place (see :mod:`fricobs.plant`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LuGreParams",
    "LuGreState",
    "LuGreModel",
    "NoFriction",
    "lugre_g",
    "lugre_force",
    "lugre_step",
    "breakaway_force",
    "friction_bound_audit",
    "friction_passivity_audit",
    "BoundAudit",
]


@dataclass(frozen=True)
class LuGreParams:
    """LuGre coefficients.

    Attributes
    ----------
    sigma0 : bristle stiffness [N/m]
    sigma1 : bristle damping [N·s/m]
    sigma2 : viscous coefficient [N·s/m]
    f_c : Coulomb friction level [N]
    f_s : stiction (breakaway) level [N]
    v_s : Stribeck velocity [m/s]
    """

    sigma0: float
    sigma1: float
    sigma2: float
    f_c: float
    f_s: float
    v_s: float

    def __post_init__(self) -> None:
        if not (self.sigma0 > 0):
            raise ValueError("sigma0 must be positive")
        if self.sigma1 < 0 or self.sigma2 < 0:
            raise ValueError("sigma1 and sigma2 must be nonnegative")
        if not (self.f_c > 0 and self.f_s >= self.f_c):
            raise ValueError("need f_s >= f_c > 0")
        if not (self.v_s > 0):
            raise ValueError("v_s must be positive")

    @property
    def z_max(self) -> float:
        """Bristle deflection bound f_s/sigma0 (invariant along trajectories)."""
        return self.f_s / self.sigma0


#: Canonical single-joint parameter set used throughout the simulation study.
PAPER_LUGRE = LuGreParams(
    sigma0=1e5, sigma1=math.sqrt(1e5), sigma2=0.4, f_c=1.0, f_s=1.5, v_s=1e-3
)


@dataclass
class LuGreState:
    """Per-joint bristle deflection z [m]."""

    z: np.ndarray

    def copy(self) -> "LuGreState":
        return LuGreState(z=self.z.copy())


def lugre_g(v, p: LuGreParams):
    """Stribeck curve g(v) = f_c + (f_s - f_c) exp(-(v/v_s)^2).

    Total in v; even; always inside [f_c, f_s].
    """
    v = np.asarray(v, dtype=float)
    return p.f_c + (p.f_s - p.f_c) * np.exp(-((v / p.v_s) ** 2))


def lugre_force(z, v, p: LuGreParams):
    """Instantaneous friction force from the continuous-time bristle law.

    Evaluates tau_f = sigma0 z + sigma1 zdot + sigma2 v with
    zdot = v - sigma0 |v| z / g(v).  Used for point evaluations (logging,
    zero-offset integrator stages); time stepping goes through
    :func:`lugre_step`.
    """
    g = lugre_g(v, p)
    zdot = v - p.sigma0 * np.abs(v) * np.asarray(z) / g
    return p.sigma0 * np.asarray(z) + p.sigma1 * zdot + p.sigma2 * v


def lugre_step(z, v, dt: float, p: LuGreParams):
    """Advance the bristle state one step; return (z_new, tau_f).

    Semi-implicit update with v frozen over the step:

        z' = (z + dt v) / (1 + dt sigma0 |v| / g(v))

    which is unconditionally stable in z and has the exact sliding fixed
    point z_ss = g(v) sign(v) / sigma0.  The force is evaluated consistently
    with the update, reconstructing zdot = (z' - z)/dt for the damping term.
    """
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite velocity")
    if not (np.isfinite(dt) and dt > 0):
        raise ValueError("dt must be positive and finite")
    z = np.asarray(z, dtype=float)
    g = lugre_g(v, p)
    z_new = (z + dt * np.asarray(v)) / (1.0 + dt * p.sigma0 * np.abs(v) / g)
    zdot = (z_new - z) / dt
    tau_f = p.sigma0 * z_new + p.sigma1 * zdot + p.sigma2 * np.asarray(v)
    return z_new, tau_f


def breakaway_force(p: LuGreParams) -> float:
    """Quasi-static breakaway level: the force a slow ramp must exceed.

    For the bristle model this is the stiction level f_s; a ramped applied
    force below it is absorbed by bristle deflection without sustained
    motion.
    """
    return p.f_s


def simulate_breakaway_ramp(p: LuGreParams, mass: float = 1.0, ramp_rate: float = 0.5,
                            dt: float = 1e-5, t_max: float = 6.0):
    """Force-ramp oracle for the breakaway level on a rigid mass.

    Slowly ramps an applied force and reports the ramp value at the first
    sustained sliding (|v| above ten Stribeck velocities for 5 ms).
    Returns (breakaway force, detection time); force is -1 if the ramp
    never produces sustained motion.
    """
    from ._kernel import mass_ramp_kernel

    n_steps = int(round(t_max / dt))
    sustain = max(1, int(round(5e-3 / dt)))
    f_brk, t_brk, _ = mass_ramp_kernel(
        mass, ramp_rate, dt, n_steps,
        p.sigma0, p.sigma1, p.sigma2, p.f_c, p.f_s, p.v_s,
        10.0 * p.v_s, sustain,
    )
    return f_brk, t_brk


def hold_constant_velocity(p: LuGreParams, v: float, t_hold: float = 1.0,
                           dt: float = 1e-5, z0: float = 0.0):
    """Drive the bristle at constant velocity; return the final force.

    Used as the steady-sliding oracle: after the bristle transient dies the
    force settles at g(v) sign(v) + sigma2 v.
    """
    z = np.asarray(z0, dtype=float)
    tau = np.zeros_like(z)
    for _ in range(int(round(t_hold / dt))):
        z, tau = lugre_step(z, v, dt, p)
    return float(tau)


@dataclass(frozen=True)
class BoundAudit:
    """Result of an affine friction-bound check ||tau_f|| <= a1 ||v|| + a2."""

    a1: float
    a2: float
    holds: bool
    worst_margin: float  # min over samples of (a1|v| + a2 - |tau_f|); negative = violated


def friction_bound_audit(v, tau_f, p: LuGreParams, rel_tol: float = 0.01) -> BoundAudit:
    """Check the affine bound |tau_f| <= a1 |v| + a2 pointwise along a trace.

    The slope is a1 = sigma1 + sigma2; the transient zdot contribution that
    a fixed slope cannot absorb is folded into the offset via the velocity
    range of the trace: a2 = f_s + sigma1 (f_s/f_c) sup|v|.  Both follow
    from |z| <= f_s/sigma0 and |zdot| <= |v| (1 + f_s/g_min) with
    g_min = f_c, so the bound is rigorous for any trajectory started inside
    the bristle bound.  Violations within ``rel_tol`` of a2 are reported but
    do not clear the flag.
    """
    v = np.asarray(v, dtype=float)
    tau_f = np.asarray(tau_f, dtype=float)
    if v.size == 0:
        raise ValueError("empty trace")
    a1 = p.sigma1 + p.sigma2
    a2 = p.f_s + p.sigma1 * (p.f_s / p.f_c) * float(np.max(np.abs(v)))
    margin = a1 * np.abs(v) + a2 - np.abs(tau_f)
    worst = float(np.min(margin))
    holds = worst >= -rel_tol * a2
    return BoundAudit(a1=a1, a2=a2, holds=holds, worst_margin=worst)


def friction_passivity_audit(v, tau_f, dt: float) -> np.ndarray:
    """Cumulative supplied energy E(t) = integral of v * tau_f.

    Passivity of the velocity-to-friction map means E(t) >= -beta with
    beta the initial bristle storage; from rest, E must stay above (about)
    zero.  Trapezoidal rule on a fixed-dt trace; returns the E(t) series.
    """
    v = np.asarray(v, dtype=float)
    tau_f = np.asarray(tau_f, dtype=float)
    power = v * tau_f
    e = np.zeros_like(power)
    if power.size > 1:
        e[1:] = np.cumsum(0.5 * dt * (power[1:] + power[:-1]))
    return e


class LuGreModel:
    """Stateful friction model wrapper used by the plant integrator."""

    def __init__(self, params: LuGreParams):
        self.params = params

    def initial_state(self, n_joints: int, z0=None) -> LuGreState:
        z = np.zeros(n_joints) if z0 is None else np.asarray(z0, dtype=float).copy()
        if np.any(np.abs(z) > self.params.z_max * (1 + 1e-12)):
            raise ValueError("initial bristle deflection exceeds f_s/sigma0")
        return LuGreState(z=z)

    def stage_force(self, state: LuGreState, v, h: float):
        """Friction force for an integrator stage at time offset h.

        h = 0 evaluates the continuous law at the committed state; h > 0
        evaluates the semi-implicit update over h without committing it.
        """
        if h == 0.0:
            return lugre_force(state.z, v, self.params)
        _, tau = lugre_step(state.z, v, h, self.params)
        return tau

    def commit(self, state: LuGreState, v, dt: float) -> LuGreState:
        z_new, _ = lugre_step(state.z, v, dt, self.params)
        return LuGreState(z=z_new)


class NoFriction:
    """Ideal friction-free variant: zero force, empty state."""

    params = None

    def initial_state(self, n_joints: int, z0=None) -> LuGreState:
        return LuGreState(z=np.zeros(n_joints))

    def stage_force(self, state: LuGreState, v, h: float):
        return np.zeros_like(np.asarray(v, dtype=float))

    def commit(self, state: LuGreState, v, dt: float) -> LuGreState:
        return state
