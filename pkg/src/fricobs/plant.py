"""Flexible joint robot plant: link dynamics, motor dynamics, torque sensor.

The model splits each joint into a motor-side inertia B and a link side
coupled through a torsional/linear spring K_j; the joint torque sensor
measures tau_j = K_j (theta - q).

This module is the single place where the friction model's output is
negated: the motor dynamics receive -tau_f(theta_dot) so that friction
opposes the motor velocity during sliding, while :mod:`fricobs.friction`
keeps the textbook sign (positive force for positive velocity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PointMass",
    "Planar2R",
    "planar2r_terms",
    "FjrParams",
    "PlantState",
    "joint_torque",
    "plant_derivatives",
]


class PointMass:
    """Single translational mass: M constant, no Coriolis, no gravity.

    Units are translational (kg, m, N), matching the single-link study
    setup; unit bookkeeping is per-model and never converted.
    """

    n_joints = 1
    units = "translational"

    def __init__(self, mass: float):
        if mass <= 0:
            raise ValueError("mass must be positive")
        self.mass = float(mass)

    def terms(self, q, qd):
        M = np.array([[self.mass]])
        return M, np.zeros(1), np.zeros(1)

    def gravity(self, q):
        return np.zeros(1)

    def potential_energy(self, q) -> float:
        return 0.0


def planar2r_terms(q, qd, m1, m2, l1, l2, r1, r2, I1, I2, g0):
    """Closed-form dynamics terms of a planar 2R arm.

    Angles are measured from the horizontal x-axis with gravity along -y.
    Returns (M, C_matrix, g) with C in Christoffel form so that
    Mdot - 2C is skew-symmetric; the bias force is C @ qd.
    """
    q = np.asarray(q, dtype=float)
    qd = np.asarray(qd, dtype=float)
    c2 = np.cos(q[1])
    s2 = np.sin(q[1])
    a = I1 + I2 + m1 * r1 * r1 + m2 * (l1 * l1 + r2 * r2)
    b = m2 * l1 * r2
    d = I2 + m2 * r2 * r2

    M = np.array([[a + 2 * b * c2, d + b * c2], [d + b * c2, d]])
    h = -b * s2
    C = np.array([[h * qd[1], h * (qd[0] + qd[1])], [-h * qd[0], 0.0]])
    g = np.array(
        [
            (m1 * r1 + m2 * l1) * g0 * np.cos(q[0]) + m2 * r2 * g0 * np.cos(q[0] + q[1]),
            m2 * r2 * g0 * np.cos(q[0] + q[1]),
        ]
    )
    return M, C, g


class Planar2R:
    """Two-link planar arm with rotational units (kg·m², rad, N·m)."""

    n_joints = 2
    units = "rotational"

    def __init__(self, m1, m2, l1, l2, r1, r2, I1, I2, g0=9.81):
        if min(m1, m2, l1, l2, r1, r2) <= 0 or min(I1, I2) < 0:
            raise ValueError("masses/lengths must be positive, inertias nonnegative")
        self.m1, self.m2 = float(m1), float(m2)
        self.l1, self.l2 = float(l1), float(l2)
        self.r1, self.r2 = float(r1), float(r2)
        self.I1, self.I2 = float(I1), float(I2)
        self.g0 = float(g0)

    def _args(self):
        return (self.m1, self.m2, self.l1, self.l2, self.r1, self.r2, self.I1, self.I2, self.g0)

    def terms(self, q, qd):
        M, C, g = planar2r_terms(q, qd, *self._args())
        return M, C @ np.asarray(qd, dtype=float), g

    def coriolis_matrix(self, q, qd):
        _, C, _ = planar2r_terms(q, qd, *self._args())
        return C

    def inertia(self, q):
        M, _, _ = planar2r_terms(q, np.zeros(2), *self._args())
        return M

    def gravity(self, q):
        _, _, g = planar2r_terms(q, np.zeros(2), *self._args())
        return g

    def potential_energy(self, q) -> float:
        q = np.asarray(q, dtype=float)
        y1 = self.r1 * np.sin(q[0])
        y2 = self.l1 * np.sin(q[0]) + self.r2 * np.sin(q[0] + q[1])
        return self.g0 * (self.m1 * y1 + self.m2 * y2)


@dataclass
class FjrParams:
    """Plant parameters: diagonal motor inertia B, joint stiffness K_j,
    a link model, and a friction model acting on the motor velocity."""

    B: np.ndarray
    K_j: np.ndarray
    link: object
    friction: object

    def __post_init__(self) -> None:
        self.B = np.atleast_1d(np.asarray(self.B, dtype=float))
        self.K_j = np.atleast_1d(np.asarray(self.K_j, dtype=float))
        n = self.link.n_joints
        if self.B.shape != (n,) or self.K_j.shape != (n,):
            raise ValueError("B and K_j must have one entry per joint")
        if np.any(self.B <= 0) or np.any(self.K_j <= 0):
            raise ValueError("B and K_j entries must be strictly positive")

    @property
    def n_joints(self) -> int:
        return self.link.n_joints


@dataclass
class PlantState:
    q: np.ndarray
    qd: np.ndarray
    theta: np.ndarray
    thetad: np.ndarray
    friction_state: object

    def copy(self) -> "PlantState":
        return PlantState(
            q=self.q.copy(),
            qd=self.qd.copy(),
            theta=self.theta.copy(),
            thetad=self.thetad.copy(),
            friction_state=self.friction_state.copy(),
        )


def joint_torque(theta, q, K_j):
    """Joint torque sensor output tau_j = K_j (theta - q)."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    q = np.atleast_1d(np.asarray(q, dtype=float))
    K_j = np.atleast_1d(np.asarray(K_j, dtype=float))
    if theta.shape != q.shape or K_j.shape != theta.shape:
        raise ValueError("dimension mismatch")
    return K_j * (theta - q)


def plant_derivatives(s: PlantState, tau_m, tau_ext, p: FjrParams, stage_offset: float = 0.0):
    """Accelerations (qdd, thetadd, tau_f) of the coupled plant.

    tau_f is the signed friction injected into the motor equation (already
    negated relative to the friction model's convention).  stage_offset is
    the time offset used to evaluate the frozen-bristle stage force inside
    a multi-stage integrator step; 0 means evaluate at the committed state.
    """
    tau_m = np.atleast_1d(np.asarray(tau_m, dtype=float))
    tau_ext = np.atleast_1d(np.asarray(tau_ext, dtype=float))
    if not (np.all(np.isfinite(tau_m)) and np.all(np.isfinite(tau_ext))):
        raise ValueError("non-finite input torque")
    M, bias, grav = p.link.terms(s.q, s.qd)
    tau_j = joint_torque(s.theta, s.q, p.K_j)
    tau_f = -p.friction.stage_force(s.friction_state, s.thetad, stage_offset)
    qdd = np.linalg.solve(M, tau_j + tau_ext - bias - grav)
    thetadd = (tau_m + tau_f - tau_j) / p.B
    return qdd, thetadd, tau_f
