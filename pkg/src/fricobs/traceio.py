"""Trace and metadata persistence.

Traces are plain CSV with one header row and 17-significant-digit values,
which round-trips float64 losslessly.  Single-joint traces use bare column
names; multi-joint traces suffix the joint index (q_0, q_1, ...).  Each run
gets a JSON sidecar with the resolved config and diagnostics.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .sim import SimTrace

__all__ = ["write_trace", "read_trace", "write_meta", "read_meta", "write_summary"]

FMT = "%.17g"


def _column_names(n_joints: int):
    names = ["t"]
    for f in SimTrace.COLUMN_FIELDS:
        if n_joints == 1:
            names.append(f)
        else:
            names.extend(f"{f}_{j}" for j in range(n_joints))
    return names


def write_trace(trace: SimTrace, path) -> None:
    path = Path(path)
    n = trace.n_joints
    blocks = [trace.t[:, None]] + [getattr(trace, f) for f in SimTrace.COLUMN_FIELDS]
    data = np.hstack(blocks)
    header = ",".join(_column_names(n))
    np.savetxt(path, data, fmt=FMT, delimiter=",", header=header, comments="")


def read_trace(path) -> SimTrace:
    path = Path(path)
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(header):
        raise ValueError(f"{path.name}: column count does not match header")
    if not np.all(np.isfinite(data)):
        raise ValueError(f"{path.name}: non-finite values in trace")

    cols = {name: data[:, i] for i, name in enumerate(header)}
    t = cols.pop("t")
    fields = {}
    for f in SimTrace.COLUMN_FIELDS:
        if f in cols:
            fields[f] = cols[f][:, None]
        else:
            joints = []
            j = 0
            while f"{f}_{j}" in cols:
                joints.append(cols[f"{f}_{j}"])
                j += 1
            if not joints:
                raise ValueError(f"{path.name}: missing column '{f}'")
            fields[f] = np.stack(joints, axis=1)
    return SimTrace(t=t, label=path.stem, **fields)


def write_meta(meta: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_meta(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def write_summary(rows: list[dict], path, columns=None) -> None:
    """Write sweep summary rows as CSV; non-scalar values are skipped."""
    if columns is None:
        columns = []
        for row in rows:
            for key, val in row.items():
                if key not in columns and np.isscalar(val):
                    columns.append(key)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in columns})
