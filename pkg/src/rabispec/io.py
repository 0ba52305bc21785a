"""File formats: system documents, population traces, curves and reports.

Reals are written with 17 significant digits so every file reloads bit-exactly.
JSON output uses sorted keys and no timestamps, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path

import numpy as np

from .core import LevelSystem, system_to_dict, validate_system
from .dynamics import PopulationTrace
from .exceptions import ConfigError

__all__ = [
    "load_system",
    "save_system",
    "system_hash",
    "fmt",
    "write_trace",
    "read_trace",
    "write_curves",
    "read_curves",
    "write_json",
]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def load_system(path) -> LevelSystem:
    """Read a JSON system document; parse and field errors name their location."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return validate_system(raw)
    except ConfigError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(dumps(obj))
    return path


def save_system(system: LevelSystem, path) -> Path:
    return write_json(path, system_to_dict(system))


def system_hash(system: LevelSystem) -> str:
    canon = json.dumps(system_to_dict(system), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def trace_header(n_levels: int) -> list[str]:
    cols = ["t"] + [f"Pi_{k + 1}" for k in range(n_levels)]
    for k in range(n_levels):
        cols += [f"Re_a{k + 1}", f"Im_a{k + 1}"]
    return cols


def write_trace(path, trace: PopulationTrace | None, n_levels: int | None = None) -> Path:
    """Write ``t, Pi_1..Pi_N, Re_a1, Im_a1, ...`` with one header row.

    ``trace=None`` writes only the header (``n_levels`` required).
    """
    path = Path(path)
    n = trace.n_levels if trace is not None else n_levels
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(trace_header(n))
    if trace is not None:
        pops = trace.populations
        for t, p, a in zip(trace.times, pops, trace.amplitudes):
            row = [fmt(t), *map(fmt, p)]
            for z in a:
                row += [fmt(z.real), fmt(z.imag)]
            w.writerow(row)
    path.write_text(buf.getvalue())
    return path


def read_trace(path) -> PopulationTrace:
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ConfigError(f"{path}: empty file")
    header = rows[0]
    n = (len(header) - 1) // 3
    if header != trace_header(n):
        raise ConfigError(f"{path}:1: unexpected trace header {header[:4]}...")
    data = np.array(rows[1:], dtype=float).reshape(-1, 1 + 3 * n)
    re, im = data[:, 1 + n :: 2], data[:, 2 + n :: 2]
    return PopulationTrace(data[:, 0].copy(), re + 1j * im, {})


def write_curves(path, x_name: str, x, columns: dict[str, np.ndarray]) -> Path:
    path = Path(path)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([x_name, *columns])
    cols = [np.asarray(v, dtype=float) for v in columns.values()]
    for k, xv in enumerate(np.asarray(x, dtype=float)):
        w.writerow([fmt(xv), *(fmt(c[k]) for c in cols)])
    path.write_text(buf.getvalue())
    return path


def read_curves(path) -> tuple[list[str], np.ndarray]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    return header, np.array(rows[1:], dtype=float).reshape(-1, len(header))
