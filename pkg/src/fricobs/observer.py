"""Model-free friction observers and their analytic companions.

The observer integrates a friction-free copy of the motor dynamics driven
by the measured joint torque, and turns the gap e_nr = theta_n - theta into
a friction estimate:

    pid:      tau_f_hat = -B L (e_nr_dot + L_p e_nr + L_i int(e_nr))
    pd:       tau_f_hat = -B L (e_nr_dot + L_p e_nr)
    baseline: tau_f_hat = -B L e_nr_dot        (controller fed measured signals)

Analytic utilities verify the structure: the Riccati identity satisfied by
the closed-form P and Q of the difference dynamics, the equivalent low-pass
filter from true to estimated friction, the predicted stuck-state
equilibria, and the frequency-domain passivity classification.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ObserverKind",
    "ObserverGains",
    "ObserverState",
    "TransferFunction",
    "nominal_motor_derivative",
    "friction_estimate",
    "riccati_matrices",
    "riccati_residual",
    "equivalent_lpf",
    "compensator_tf",
    "lpf_from_compensator",
    "compensator_from_lpf",
    "equilibrium_prediction",
    "observer_passivity_sweep",
    "simulate_difference_dynamics",
]


class ObserverKind(enum.Enum):
    PID_TYPE = "pid"
    PD_TYPE = "pd"
    BASELINE_MEASURED = "baseline"
    NONE = "none"

    @property
    def uses_nominal_feedback(self) -> bool:
        """Whether the controller is fed (theta_n, theta_n_dot) instead of
        the measured motor signals."""
        return self in (ObserverKind.PID_TYPE, ObserverKind.PD_TYPE)


@dataclass(frozen=True)
class ObserverGains:
    """Observer gains L [1/s], L_p [1/s], L_i [1/s^2]."""

    L: float
    L_p: float = 0.0
    L_i: float = 0.0

    def validate(self, kind: ObserverKind) -> None:
        if kind is ObserverKind.NONE:
            return
        if not (self.L > 0):
            raise ValueError("observer gain L must be positive")
        if kind is ObserverKind.PID_TYPE:
            if not (self.L_p > 0 and self.L_i > 0):
                raise ValueError("pid observer needs L_p > 0 and L_i > 0")
            if not (self.L_p**2 > 2 * self.L_i):
                raise ValueError(
                    f"pid observer needs L_p^2 > 2 L_i (got {self.L_p}^2 <= 2*{self.L_i})"
                )
        elif kind is ObserverKind.PD_TYPE:
            if not (self.L_p > 0):
                raise ValueError("pd observer needs L_p > 0")
            if self.L_i != 0.0:
                raise ValueError("pd observer must have L_i = 0")
        elif kind is ObserverKind.BASELINE_MEASURED:
            if self.L_p != 0.0 or self.L_i != 0.0:
                raise ValueError("baseline observer must have L_p = L_i = 0")


@dataclass
class ObserverState:
    """Nominal motor states and (for the pid kind) the integrated error."""

    theta_n: np.ndarray
    thetad_n: np.ndarray
    i_enr: np.ndarray

    def copy(self) -> "ObserverState":
        return ObserverState(self.theta_n.copy(), self.thetad_n.copy(), self.i_enr.copy())


def nominal_motor_derivative(o: ObserverState, tau_j, tau_c, B):
    """Nominal motor acceleration B^{-1}(tau_c - tau_j), tau_j measured."""
    tau_j = np.atleast_1d(np.asarray(tau_j, dtype=float))
    tau_c = np.atleast_1d(np.asarray(tau_c, dtype=float))
    if not (np.all(np.isfinite(tau_j)) and np.all(np.isfinite(tau_c))):
        raise ValueError("non-finite torque input")
    return (tau_c - tau_j) / np.atleast_1d(np.asarray(B, dtype=float))


def friction_estimate(o: ObserverState, theta, thetad, gains: ObserverGains,
                      kind: ObserverKind, B):
    """Friction estimate from the nominal/measured gap.

    e_nr = theta_n - theta, e_nr_dot = theta_n_dot - theta_dot.  The none
    kind returns zero.  The estimate approaches the motor-equation friction
    injection (it is its low-passed value, see :func:`equivalent_lpf`).
    """
    if kind is ObserverKind.NONE:
        return np.zeros_like(np.atleast_1d(np.asarray(theta, dtype=float)))
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    thetad = np.atleast_1d(np.asarray(thetad, dtype=float))
    if not (np.all(np.isfinite(o.theta_n)) and np.all(np.isfinite(theta))
            and np.all(np.isfinite(thetad))):
        raise ValueError("non-finite observer state")
    B = np.atleast_1d(np.asarray(B, dtype=float))
    e = o.theta_n - theta
    ed = o.thetad_n - thetad
    if kind is ObserverKind.PID_TYPE:
        inner = ed + gains.L_p * e + gains.L_i * o.i_enr
    elif kind is ObserverKind.PD_TYPE:
        inner = ed + gains.L_p * e
    else:  # baseline
        inner = ed
    return -B * gains.L * inner


def riccati_matrices(B: float, gains: ObserverGains, kind: ObserverKind):
    """Closed-form (A, B_in, P, Q, R) of the difference-dynamics design.

    Scalar gains (one joint, or identical per joint).  R = B L.  The pid
    state is [int(e_nr), e_nr, e_nr_dot]; the pd state drops the integral.
    P and Q satisfy A^T P + P A - P B_in R B_in^T P + Q = 0 exactly.
    """
    gains.validate(kind)
    L, Lp, Li = gains.L, gains.L_p, gains.L_i
    R = B * L
    if kind is ObserverKind.PID_TYPE:
        A = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, -Li, -Lp]])
        B_in = np.array([[0.0], [0.0], [1.0 / B]])
        P = np.array(
            [
                [B * Li**2 + Li * Lp * R, B * Lp * Li + Li * R, B * Li],
                [B * Lp * Li + Li * R, B * Lp**2 + Lp * R, B * Lp],
                [B * Li, B * Lp, B],
            ]
        )
        Q = np.diag([Li**2 * R, (Lp**2 - 2 * Li) * R, R])
    elif kind is ObserverKind.PD_TYPE:
        A = np.array([[0.0, 1.0], [0.0, -Lp]])
        B_in = np.array([[0.0], [1.0 / B]])
        # (0,0) entry is B Lp^2 + Lp R; the B Lp R variant only closes the
        # identity when B = 1.
        P = np.array([[B * Lp**2 + Lp * R, B * Lp], [B * Lp, B]])
        Q = np.diag([Lp**2 * R, R])
    else:
        raise ValueError("riccati matrices are defined for the pid and pd kinds")
    return A, B_in, P, Q, R


def riccati_residual(B: float, gains: ObserverGains, kind: ObserverKind) -> float:
    """Frobenius norm of A^T P + P A - P B_in R B_in^T P + Q."""
    A, B_in, P, Q, R = riccati_matrices(B, gains, kind)
    res = A.T @ P + P @ A - P @ B_in * R @ B_in.T @ P + Q
    return float(np.linalg.norm(res, "fro"))


@dataclass(frozen=True)
class TransferFunction:
    """Rational transfer function, coefficients in descending powers of s."""

    num: tuple
    den: tuple

    def __post_init__(self) -> None:
        num = _trim_leading(self.num)
        den = _trim_leading(self.den)
        if len(den) == 0 or den[0] == 0:
            raise ValueError("denominator leading coefficient must be nonzero")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, s):
        return np.polyval(self.num, s) / np.polyval(self.den, s)

    def dc_gain(self) -> float:
        if self.den[-1] == 0:
            raise ZeroDivisionError("pole at s = 0")
        return self.num[-1] / self.den[-1]

    def normalized(self) -> "TransferFunction":
        lead = self.den[0]
        return TransferFunction(
            tuple(c / lead for c in self.num), tuple(c / lead for c in self.den)
        )


def _trim_leading(coeffs) -> tuple:
    c = list(np.atleast_1d(np.asarray(coeffs, dtype=float)))
    while len(c) > 1 and c[0] == 0.0:
        c.pop(0)
    return tuple(c)


def _cancel_s_powers(num, den):
    """Cancel a common s^k factor (shared trailing zero coefficients)."""
    num, den = list(num), list(den)
    while len(num) > 1 and len(den) > 1 and num[-1] == 0.0 and den[-1] == 0.0:
        num.pop()
        den.pop()
    return tuple(num), tuple(den)


def equivalent_lpf(B: float, gains: ObserverGains, kind: ObserverKind) -> TransferFunction:
    """Low-pass filter mapping the true friction to its estimate.

    pid: (L s^2 + L L_p s + L L_i) / (s^3 + L s^2 + L L_p s + L L_i)
    pd: (L s + L L_p) / (s^2 + L s + L L_p)
    baseline: L / (s + L)

    All have unity DC gain.  B cancels and does not appear.
    """
    gains.validate(kind)
    L, Lp, Li = gains.L, gains.L_p, gains.L_i
    if kind is ObserverKind.PID_TYPE:
        return TransferFunction((L, L * Lp, L * Li), (1.0, L, L * Lp, L * Li))
    if kind is ObserverKind.PD_TYPE:
        return TransferFunction((L, L * Lp), (1.0, L, L * Lp))
    if kind is ObserverKind.BASELINE_MEASURED:
        return TransferFunction((L,), (1.0, L))
    raise ValueError("no filter for the none kind")


def compensator_tf(B: float, gains: ObserverGains, kind: ObserverKind) -> TransferFunction:
    """The observer as a compensator C(s) from e_nr to tau_f_hat.

    pid: -B L (s + L_p + L_i / s); pd: -B L (s + L_p); baseline: -B L s.
    """
    gains.validate(kind)
    R = B * gains.L
    if kind is ObserverKind.PID_TYPE:
        return TransferFunction((-R, -R * gains.L_p, -R * gains.L_i), (1.0, 0.0))
    if kind is ObserverKind.PD_TYPE:
        return TransferFunction((-R, -R * gains.L_p), (1.0,))
    if kind is ObserverKind.BASELINE_MEASURED:
        return TransferFunction((-R, 0.0), (1.0,))
    raise ValueError("no compensator for the none kind")


def lpf_from_compensator(comp: TransferFunction, B: float) -> TransferFunction:
    """LPF(s) = P C / (P C - 1) with the motor plant P(s) = 1/(B s^2)."""
    cn = np.asarray(comp.num, dtype=float)
    cd = np.asarray(comp.den, dtype=float)
    den = np.polysub(cn, B * np.polymul((1.0, 0.0, 0.0), cd))
    num, den = _cancel_s_powers(_trim_leading(cn), _trim_leading(den))
    return TransferFunction(num, den).normalized()


def compensator_from_lpf(lpf: TransferFunction, B: float) -> TransferFunction:
    """Inverse map C(s) = LPF / (P (LPF - 1)) with P(s) = 1/(B s^2)."""
    n = np.asarray(lpf.num, dtype=float)
    d = np.asarray(lpf.den, dtype=float)
    num = B * np.polymul((1.0, 0.0, 0.0), n)
    den = np.polysub(n, d)
    num, den = _cancel_s_powers(_trim_leading(num), _trim_leading(den))
    return TransferFunction(num, den).normalized()


def equilibrium_prediction(B: float, gains: ObserverGains, kind: ObserverKind,
                           tau_f_bar: float):
    """Predicted stuck-state equilibrium (e_nr_ss, i_enr_ss).

    ``tau_f_bar`` is the steady friction in the friction model's own sign
    convention (the negative of the value injected into the motor
    equation); with that convention the estimate law gives

        pid: e_nr_ss = 0,                 i_enr_ss = tau_f_bar / (L_i L B)
        pd:  e_nr_ss = tau_f_bar / (L_p L B),  no integral state.
    """
    if kind is ObserverKind.PID_TYPE:
        if gains.L_i == 0 or gains.L == 0:
            raise ValueError("pid equilibrium needs nonzero L and L_i")
        return 0.0, tau_f_bar / (gains.L_i * gains.L * B)
    if kind is ObserverKind.PD_TYPE:
        if gains.L_p == 0 or gains.L == 0:
            raise ValueError("pd equilibrium needs nonzero L and L_p")
        return tau_f_bar / (gains.L_p * gains.L * B), None
    raise ValueError("equilibrium prediction is defined for the pid and pd kinds")


def observer_passivity_sweep(B: float, gains: ObserverGains, kind: ObserverKind,
                             omega_grid) -> np.ndarray:
    """Re H(j omega) of the map from -e_nr_dot to tau_f_hat.

    pd: H(s) = B L (s + L_p)/s, real part B L everywhere (passive).
    pid: H(s) = B L (s^2 + L_p s + L_i)/s^2, real part B L (w^2 - L_i)/w^2,
    negative exactly below the crossover w = sqrt(L_i).
    baseline: the static gain B L.
    """
    omega = np.asarray(omega_grid, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega grid must be strictly positive (pole at 0)")
    gains.validate(kind)
    R = B * gains.L
    if kind is ObserverKind.PID_TYPE:
        return R * (omega**2 - gains.L_i) / omega**2
    if kind is ObserverKind.PD_TYPE:
        return np.full_like(omega, R)
    if kind is ObserverKind.BASELINE_MEASURED:
        return np.full_like(omega, R)
    raise ValueError("no frequency response for the none kind")


def simulate_difference_dynamics(tau_f, dt_sample: float, B: float,
                                 gains: ObserverGains, kind: ObserverKind,
                                 substeps: int = 100):
    """Drive the standalone difference dynamics with a synthetic friction.

    Integrates B e_nr_ddot = tau_f_hat - tau_f with the estimate law closed
    around it, treating ``tau_f`` as held constant between samples, and
    returns tau_f_hat at the sample instants.  Fixed-step 4-stage rule with
    ``substeps`` internal steps per sample; zero initial state.
    """
    from ._kernel import difference_dynamics_kernel

    gains.validate(kind)
    tau_f = np.ascontiguousarray(np.asarray(tau_f, dtype=float))
    if tau_f.ndim != 1:
        raise ValueError("tau_f must be a 1-d sample array")
    lp = gains.L_p if kind is not ObserverKind.BASELINE_MEASURED else 0.0
    li = gains.L_i if kind is ObserverKind.PID_TYPE else 0.0
    return difference_dynamics_kernel(tau_f, float(dt_sample), int(substeps),
                                      float(B), float(gains.L), float(lp), float(li))
