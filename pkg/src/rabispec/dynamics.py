"""Exact (non-RWA) integration of the driven N-level amplitude equations.

In the interaction picture, with ``psi = sum_i a_i phi_i exp(-i omega_i t)``,

    da_j/dt = -i f0 cos(omega t) sum_i I_ij exp(i (omega_j - omega_i) t) a_i .

Both rotating components of ``cos(omega t)`` are kept. The right-hand side is
integrated in lab time with an adaptive Dormand-Prince 8(5,3) pair; the step is
capped at a tenth of the fastest oscillation period so that counter-rotating
terms are resolved.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from .core import Drive, LevelSystem
from .exceptions import (
    ConfigError,
    EmptyWindow,
    NonNormalizedInitial,
    NoPeakFound,
    NormDriftExceeded,
    NumericalError,
    StepSizeUnderflow,
)

__all__ = [
    "AmplitudeState",
    "IntegratorOptions",
    "PopulationTrace",
    "integrate",
    "integrate_sequence",
    "peak_population",
    "measured_transfer_period",
    "moving_average",
    "SinusoidFit",
    "fit_sinusoid",
]


@dataclass(frozen=True, eq=False)
class AmplitudeState:
    t: float
    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def basis(cls, n: int, k: int, t: float = 0.0) -> AmplitudeState:
        """All population in level ``k``."""
        a = np.zeros(n, dtype=complex)
        a[k] = 1.0
        return cls(t, a)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.a) ** 2


@dataclass(frozen=True)
class IntegratorOptions:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-11
    norm_tolerance: float = 1e-8
    max_step: float | None = None
    """Step cap; ``None`` means a tenth of the fastest right-hand-side period."""
    dense_grid: Sequence[float] | None = None
    """Extra output times, evaluated on the integrator's dense interpolant."""
    include_steps: bool = True
    """Also report the integrator's own step points."""

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "norm_tolerance"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0")
        if self.max_step is not None and not self.max_step > 0:
            raise ConfigError("max_step must be > 0")

    def to_dict(self) -> dict:
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "norm_tolerance": self.norm_tolerance,
            "max_step": self.max_step,
        }


@dataclass(frozen=True, eq=False)
class PopulationTrace:
    times: np.ndarray
    amplitudes: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def n_levels(self) -> int:
        return self.amplitudes.shape[1]

    def norm_drift(self) -> float:
        if len(self.times) == 0:
            return 0.0
        return float(np.max(np.abs(self.populations.sum(axis=1) - 1.0)))

    def final_state(self) -> AmplitudeState:
        return AmplitudeState(self.times[-1], self.amplitudes[-1])

    def window(self, t0: float, t1: float) -> PopulationTrace:
        mask = (self.times >= t0) & (self.times <= t1)
        return PopulationTrace(self.times[mask], self.amplitudes[mask], self.metadata)


def default_max_step(system: LevelSystem, drive: Drive) -> float:
    fastest = drive.omega + float(np.ptp(system.omegas))
    return 2.0 * math.pi / fastest / 10.0


def _rhs(system: LevelSystem, drive: Drive):
    omegas = np.asarray(system.omegas)
    coupling = drive.f0 * np.asarray(system.couplings)
    w = drive.omega

    def f(t, a):
        # exp(i (w_j - w_i) t) = p_j * conj(p_i)
        p = np.exp(1j * omegas * t)
        return (-1j * math.cos(w * t)) * p * (coupling @ (p.conj() * a))

    return f


def integrate(
    system: LevelSystem,
    drive: Drive,
    initial: AmplitudeState,
    t_end: float,
    opts: IntegratorOptions | None = None,
) -> PopulationTrace:
    """Integrate the full amplitude equations from ``initial.t`` to ``t_end``.

    Raises
    ------
    NonNormalizedInitial
        ``initial`` is off unit norm by more than 1e-12.
    StepSizeUnderflow
        The adaptive step collapsed below floating-point resolution.
    NormDriftExceeded
        ``|sum_i |a_i|^2 - 1|`` exceeded ``opts.norm_tolerance`` at some output time.
    """
    opts = opts or IntegratorOptions()
    a0 = np.asarray(initial.a, dtype=complex)
    if a0.shape != (system.n_levels,):
        raise ConfigError(f"initial state has {a0.size} amplitudes for {system.n_levels} levels")
    if abs(float(np.sum(np.abs(a0) ** 2)) - 1.0) > 1e-12:
        raise NonNormalizedInitial(f"initial norm {np.sum(np.abs(a0) ** 2)!r} != 1")
    t0, t_end = initial.t, float(t_end)
    if not t_end > t0:
        raise ConfigError(f"t_end ({t_end}) must exceed the initial time ({t0})")

    max_step = opts.max_step or default_max_step(system, drive)
    max_step = min(max_step, default_max_step(system, drive))
    grid = None
    if opts.dense_grid is not None:
        grid = np.asarray(opts.dense_grid, dtype=float)
        if grid.size and (grid.min() < t0 or grid.max() > t_end):
            raise ConfigError("dense_grid must lie within [initial.t, t_end]")

    sol = solve_ivp(
        _rhs(system, drive),
        (t0, t_end),
        a0,
        method="DOP853",
        rtol=opts.rel_tol,
        atol=opts.abs_tol,
        max_step=max_step,
        dense_output=grid is not None,
    )
    if sol.status < 0:
        if "step size" in sol.message.lower():
            raise StepSizeUnderflow(f"integration stopped at t={sol.t[-1]}: {sol.message}")
        raise NumericalError(sol.message)

    parts_t, parts_a = [], []
    if opts.include_steps or grid is None:
        parts_t.append(sol.t)
        parts_a.append(sol.y.T)
    else:
        # endpoints always reported, so pulses can be chained
        parts_t.append(sol.t[[0, -1]])
        parts_a.append(sol.y.T[[0, -1]])
    if grid is not None and grid.size:
        parts_t.append(grid)
        parts_a.append(sol.sol(grid).T)
    times = np.concatenate(parts_t)
    amps = np.concatenate(parts_a)
    order = np.argsort(times, kind="stable")
    times, amps = times[order], amps[order]
    keep = np.concatenate([[True], np.diff(times) > 0])
    times, amps = times[keep], amps[keep]

    trace = PopulationTrace(
        times,
        amps,
        {
            "drive": {"f0": drive.f0, "omega": drive.omega},
            "options": {**opts.to_dict(), "max_step": max_step},
            "n_steps": int(sol.t.size - 1),
            "nfev": int(sol.nfev),
            "degenerate_pairs": [list(p) for p in system.degenerate_pairs()],
            "level_omegas": [float(w) for w in system.omegas],
            "coupled_pairs": [list(p) for p in system.coupled_pairs()],
        },
    )
    drift = trace.norm_drift()
    if drift > opts.norm_tolerance:
        raise NormDriftExceeded(
            f"norm drift {drift:.3e} exceeds {opts.norm_tolerance:.1e}; tighten rel_tol/abs_tol"
        )
    trace.metadata["norm_drift"] = drift
    return trace


def integrate_sequence(
    system: LevelSystem,
    pulses: Sequence[tuple[Drive, float]],
    initial: AmplitudeState,
    opts: IntegratorOptions | None = None,
) -> PopulationTrace:
    """Apply ``(drive, duration)`` pulses back to back, one drive at a time.

    Lab time runs continuously across pulses, so interaction-picture phases
    stay consistent between segments.
    """
    opts = opts or IntegratorOptions()
    state = initial
    times, amps = [np.array([initial.t])], [np.asarray(initial.a)[None, :]]
    for drive, duration in pulses:
        t1 = state.t + duration
        grid = None
        if opts.dense_grid is not None:
            g = np.asarray(opts.dense_grid, dtype=float)
            grid = g[(g > state.t) & (g <= t1)]
        seg_opts = IntegratorOptions(
            opts.rel_tol, opts.abs_tol, opts.norm_tolerance, opts.max_step, grid, opts.include_steps
        )
        seg = integrate(system, drive, state, t1, seg_opts)
        times.append(seg.times[1:] if seg.times[0] == state.t else seg.times)
        amps.append(seg.amplitudes[1:] if seg.times[0] == state.t else seg.amplitudes)
        state = seg.final_state()
    trace = PopulationTrace(
        np.concatenate(times),
        np.concatenate(amps),
        {"pulses": [{"f0": d.f0, "omega": d.omega, "duration": float(T)} for d, T in pulses]},
    )
    trace.metadata["norm_drift"] = trace.norm_drift()
    return trace


def _window_mask(trace: PopulationTrace, window) -> np.ndarray:
    if window is None:
        mask = np.ones(trace.times.shape, dtype=bool)
    else:
        t0, t1 = window
        mask = (trace.times >= t0) & (trace.times <= t1)
    if not mask.any():
        raise EmptyWindow(f"no trace samples inside window {window}")
    return mask


def peak_population(trace: PopulationTrace, level: int, window=None) -> tuple[float, float]:
    """Grid maximum of ``Pi_level`` over ``window`` (whole trace by default)."""
    mask = _window_mask(trace, window)
    t = trace.times[mask]
    p = trace.populations[mask, level]
    k = int(np.argmax(p))
    return float(t[k]), float(min(max(p[k], 0.0), 1.0))


def moving_average(times: np.ndarray, values: np.ndarray, width: float) -> np.ndarray:
    """Centered boxcar average of a sampled signal over ``width`` in time.

    Works on nonuniform grids through the cumulative trapezoid integral. Samples
    closer than ``width / 2`` to either end are averaged over a truncated window.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (values[1:] + values[:-1]) * np.diff(times))])
    lo = np.clip(times - width / 2, times[0], times[-1])
    hi = np.clip(times + width / 2, times[0], times[-1])
    span = hi - lo
    out = values.copy()
    ok = span > 0
    out[ok] = (np.interp(hi[ok], times, cum) - np.interp(lo[ok], times, cum)) / span[ok]
    return out


def _parabola_vertex(t: np.ndarray, y: np.ndarray) -> float:
    (t0, t1, t2), (y0, y1, y2) = t, y
    denom = (t0 - t1) * (t0 - t2) * (t1 - t2)
    a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom
    b = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom
    if a >= 0:
        return float(t1)
    return float(min(max(-b / (2 * a), t0), t2))


def ripple_period(trace: PopulationTrace, level: int) -> float | None:
    """One period of the counter-rotating frequency ``omega + omega_ij`` seen by ``level``.

    The driven transition is taken to be the coupled pair touching ``level``
    whose Bohr frequency lies closest to the drive. ``None`` when the trace
    carries no drive/system metadata.
    """
    meta = trace.metadata
    try:
        omega = meta["drive"]["omega"]
        omegas = meta["level_omegas"]
        pairs = [p for p in meta["coupled_pairs"] if level in p]
    except KeyError:
        return None
    if not pairs:
        return None
    w_ij = min((abs(omegas[i] - omegas[j]) for i, j in pairs), key=lambda w: abs(w - omega))
    return 2.0 * math.pi / (omega + w_ij)


def measured_transfer_period(trace: PopulationTrace, level: int, smooth="auto") -> float:
    """Time from the trace start to the first maximum of ``Pi_level``.

    The first local maximum exceeding half the global maximum is refined by a
    parabola through it and its two neighbours. Before the search the
    population is boxcar-averaged over ``smooth`` (a time width). The default
    ``"auto"`` uses one period of the counter-rotating frequency (see
    :func:`ripple_period`): this removes the Bloch-Siegert ripple, whose
    spurious local maxima otherwise precede the Rabi maximum. ``None`` or
    ``0`` searches the raw samples.
    """
    if smooth == "auto":
        smooth = ripple_period(trace, level)
    t = trace.times
    p = trace.populations[:, level]
    if smooth:
        p = moving_average(t, p, smooth)
        usable = (t >= t[0] + smooth / 2) & (t <= t[-1] - smooth / 2)
    else:
        usable = np.ones(t.shape, dtype=bool)
    if t.size < 3:
        raise NoPeakFound("trace too short")
    threshold = 0.5 * p[usable].max() if usable.any() else np.inf
    interior = np.arange(1, t.size - 1)
    is_max = (p[interior] > p[interior - 1]) & (p[interior] >= p[interior + 1])
    cand = interior[is_max & (p[interior] > threshold) & usable[interior]]
    if cand.size == 0:
        raise NoPeakFound(f"no local maximum of level {level} above half its global maximum")
    k = int(cand[0])
    return _parabola_vertex(t[k - 1 : k + 2], p[k - 1 : k + 2]) - float(t[0])


@dataclass(frozen=True)
class SinusoidFit:
    omega: float
    offset: float
    cos_coef: float
    sin_coef: float
    max_residual: float
    rms_residual: float

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.offset + self.cos_coef * np.cos(self.omega * t) + self.sin_coef * np.sin(self.omega * t)


def _lsq_sinusoid(t, y, omega):
    basis = np.column_stack([np.ones_like(t), np.cos(omega * t), np.sin(omega * t)])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    return coef, y - basis @ coef


def fit_sinusoid(times, values, omega_min: float, omega_max: float, n_grid: int = 2000) -> SinusoidFit:
    """Best single sinusoid ``c + a cos(w t) + b sin(w t)`` for a sampled signal.

    For each trial frequency the amplitudes come from linear least squares; the
    frequency minimizing the maximum absolute residual is located on a grid over
    ``[omega_min, omega_max]`` and then refined with a bounded scalar search.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)

    def worst(omega):
        return float(np.max(np.abs(_lsq_sinusoid(t, y, omega)[1])))

    grid = np.linspace(omega_min, omega_max, n_grid)
    scores = np.array([worst(w) for w in grid])
    k = int(np.argmin(scores))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, n_grid - 1)]
    best = grid[k]
    if hi > lo:
        res = minimize_scalar(worst, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
        if res.fun < scores[k]:
            best = float(res.x)
    coef, resid = _lsq_sinusoid(t, y, best)
    return SinusoidFit(
        omega=float(best),
        offset=float(coef[0]),
        cos_coef=float(coef[1]),
        sin_coef=float(coef[2]),
        max_residual=float(np.max(np.abs(resid))),
        rms_residual=float(np.sqrt(np.mean(resid**2))),
    )
