"""Shared helpers for the offline figure scripts.

Reads the simulator's CSV trace files (single header row, optionally
joint-suffixed column names) and builds the three-row comparison figure
and the sweep chart.  Rendering never modifies its inputs.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class InputError(Exception):
    """Bad or inconsistent input files."""


def read_trace(path) -> dict:
    """Load a trace CSV into {column name: float array}."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such trace file: {path}")
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as err:
        raise InputError(f"{path.name}: non-numeric trace data ({err})") from err
    if data.shape[1] != len(header):
        raise InputError(f"{path.name}: row width does not match header")
    return {name: data[:, i] for i, name in enumerate(header)}


def column(cols: dict, name: str, source: str = "trace") -> np.ndarray:
    """Fetch a column by bare name, falling back to the joint-0 suffix."""
    if name in cols:
        return cols[name]
    if f"{name}_0" in cols:
        return cols[f"{name}_0"]
    raise InputError(f"{source}: missing column '{name}'")


def build_fig4_figure(trace: dict, ideal: dict, zoom_fraction: float = 0.2,
                      title: str = ""):
    """Three rows: positions with the ideal overlay, magnified tail, frictions."""
    t = column(trace, "t")
    t_ideal = column(ideal, "t", "ideal trace")
    if len(t) != len(t_ideal) or not np.allclose(t, t_ideal):
        raise InputError("trace and ideal trace do not share the time grid")

    theta = column(trace, "theta")
    theta_n = column(trace, "theta_n")
    theta_ideal = column(ideal, "theta", "ideal trace")
    tau_f = column(trace, "tau_f_true")
    tau_hat = column(trace, "tau_f_hat")

    fig, axes = plt.subplots(3, 1, figsize=(7, 8))
    axes[0].plot(t, theta, label=r"$\theta$", lw=1.0)
    axes[0].plot(t, theta_n, label=r"$\theta_n$", lw=0.8, ls="--")
    axes[0].plot(t, theta_ideal, label=r"$\theta_{ideal}$", lw=0.8, ls=":")
    axes[0].set_ylabel("position [m]")
    axes[0].legend(loc="lower right", fontsize=8)
    if title:
        axes[0].set_title(title)

    i0 = int(len(t) * (1.0 - zoom_fraction))
    axes[1].plot(t[i0:], theta[i0:], lw=1.0)
    axes[1].plot(t[i0:], theta_n[i0:], lw=0.8, ls="--")
    axes[1].plot(t[i0:], theta_ideal[i0:], lw=0.8, ls=":")
    axes[1].set_ylabel("position (magnified) [m]")

    axes[2].plot(t, tau_f, label=r"$\tau_f$", lw=0.8)
    axes[2].plot(t, tau_hat, label=r"$\hat\tau_f$", lw=0.8, ls="--")
    axes[2].set_ylabel("friction [N]")
    axes[2].set_xlabel("time [s]")
    axes[2].legend(loc="lower right", fontsize=8)

    fig.tight_layout()
    return fig


def read_summary(path) -> list[dict]:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such summary file: {path}")
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise InputError(f"{path.name}: empty summary table")
    return rows


def build_sweep_figure(rows: list[dict], x_key: str, y_key: str, title: str = ""):
    """Log-x line chart of a sweep metric; skips rejected/unstable rows."""
    xs, ys = [], []
    for row in rows:
        status = row.get("status", "ok")
        if status not in ("", "ok"):
            continue
        if x_key not in row or y_key not in row:
            raise InputError(f"summary lacks column '{x_key if x_key not in row else y_key}'")
        try:
            xs.append(float(row[x_key]))
            ys.append(float(row[y_key]))
        except ValueError as err:
            raise InputError(f"non-numeric value in column '{y_key}': {err}") from err
    if not xs:
        raise InputError("no usable rows in summary table")

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogx(xs, ys, marker="o")
    ax.set_xlabel(x_key)
    ax.set_ylabel(y_key)
    ax.grid(True, which="both", alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig
