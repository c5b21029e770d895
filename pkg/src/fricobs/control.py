"""Motor-side PD regulation and reference trajectory generators."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PdGains",
    "Step",
    "Hold",
    "Sinusoid",
    "theta_d_from_qd",
    "motor_pd",
    "motor_command",
    "check_damping_margin",
]


@dataclass(frozen=True)
class PdGains:
    """Diagonal PD gains (stiffness K_p, damping K_d)."""

    K_p: np.ndarray
    K_d: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "K_p", np.atleast_1d(np.asarray(self.K_p, dtype=float)))
        object.__setattr__(self, "K_d", np.atleast_1d(np.asarray(self.K_d, dtype=float)))
        if np.any(self.K_p <= 0) or np.any(self.K_d <= 0):
            raise ValueError("PD gains must be strictly positive")


@dataclass(frozen=True)
class Step:
    """Step to theta_d at t_on; zero desired velocity (regulation)."""

    theta_d: np.ndarray
    t_on: float = 0.0

    def __call__(self, t: float):
        td = np.atleast_1d(np.asarray(self.theta_d, dtype=float))
        if t < self.t_on:
            return np.zeros_like(td), np.zeros_like(td)
        return td, np.zeros_like(td)


@dataclass(frozen=True)
class Hold:
    """Constant setpoint; zero desired velocity."""

    theta_d: np.ndarray

    def __call__(self, t: float):
        td = np.atleast_1d(np.asarray(self.theta_d, dtype=float))
        return td, np.zeros_like(td)


@dataclass(frozen=True)
class Sinusoid:
    """offset + amplitude*sin(2 pi f t); used by the tracking gain sweep."""

    amplitude: float
    frequency_hz: float
    offset: float = 0.0
    n_joints: int = 1

    def __call__(self, t: float):
        w = 2.0 * np.pi * self.frequency_hz
        pos = self.offset + self.amplitude * np.sin(w * t)
        vel = self.amplitude * w * np.cos(w * t)
        return np.full(self.n_joints, pos), np.full(self.n_joints, vel)


def theta_d_from_qd(q_d, K_j, link):
    """Motor setpoint theta_d = q_d + K_j^{-1} g(q_d) holding the link at q_d."""
    q_d = np.atleast_1d(np.asarray(q_d, dtype=float))
    K_j = np.atleast_1d(np.asarray(K_j, dtype=float))
    return q_d + link.gravity(q_d) / K_j


def motor_pd(theta_fb, thetad_fb, theta_d, gains: PdGains, g_qd=0.0):
    """PD regulation torque tau_c = -K_p (theta_fb - theta_d) - K_d thetad_fb + g_qd.

    theta_fb is the nominal motor signal when a friction observer of the
    nominal-feedback family is active, and the measured signal otherwise.
    """
    theta_fb = np.atleast_1d(np.asarray(theta_fb, dtype=float))
    thetad_fb = np.atleast_1d(np.asarray(thetad_fb, dtype=float))
    theta_d = np.atleast_1d(np.asarray(theta_d, dtype=float))
    return -gains.K_p * (theta_fb - theta_d) - gains.K_d * thetad_fb + g_qd


def motor_command(tau_c, tau_f_hat):
    """Motor torque tau_m = tau_c - tau_f_hat."""
    return np.asarray(tau_c, dtype=float) - np.asarray(tau_f_hat, dtype=float)


def check_damping_margin(gains: PdGains, B, L: float, c3: float = 10.0) -> float:
    """Margin of the rough sufficient condition K_d >= c3 / (B L).

    c3 is an empirical viscous-coefficient estimate (default 10, exposed in
    the scenario config); a nonpositive margin triggers a warning but never
    an error, since the condition is a sufficient one.
    Returns min over joints of K_d - c3/(B L).
    """
    B = np.atleast_1d(np.asarray(B, dtype=float))
    margin = float(np.min(gains.K_d - c3 / (B * L)))
    if margin <= 0:
        warnings.warn(
            f"damping likely too low for observer gain L={L}: "
            f"min(K_d - c3/(B L)) = {margin:.3g} <= 0",
            stacklevel=2,
        )
    return margin
