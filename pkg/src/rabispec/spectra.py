"""Rabi spectra of targeted transitions and the clean-drive intensity limit.

The Rabi spectrum of a target pair ``(a, b)`` is the set of profiles of every
coupled transition that touches ``a`` or ``b``. Driving the target at its own
resonance transfers population cleanly as long as every other profile in the
spectrum is low at that frequency (leakage) and the target profile is low at
the origin (RWA validity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analytic import (
    DEFAULT_THRESHOLDS,
    RabiProfile,
    Regime,
    classify_regime,
    profile_height,
)
from .core import LevelSystem
from .exceptions import ConfigError, DegenerateTransition, UncoupledTarget

__all__ = [
    "RabiSpectrum",
    "ValidityReport",
    "IntensityConstraint",
    "rabi_spectrum",
    "validity_report",
    "intensity_constraints",
    "max_clean_intensity",
    "min_transfer_time",
]

DEFAULT_EPS_LEAK = 0.01
DEFAULT_THETA_RWA = 0.05


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _target(system: LevelSystem, target) -> tuple[int, int]:
    a, b = (system.index(x) for x in target)
    if a == b or system.couplings[a, b] == 0:
        raise UncoupledTarget(
            f"target {system.labels[a]!r}-{system.labels[b]!r} has no direct coupling"
        )
    return _pair(a, b)


@dataclass(frozen=True)
class RabiSpectrum:
    target: tuple[int, int]
    profiles: tuple[RabiProfile, ...]
    f0: float

    @property
    def target_profile(self) -> RabiProfile:
        return self.profiles[0]

    @property
    def spectators(self) -> tuple[RabiProfile, ...]:
        return self.profiles[1:]


def rabi_spectrum(system: LevelSystem, f0: float, target) -> RabiSpectrum:
    """Profiles of the target and of every coupled transition sharing a level with it.

    The target's own profile comes first, spectators follow in ascending
    ``(i, j)`` order.
    """
    if not f0 > 0:
        raise ConfigError(f"f0 must be > 0, got {f0}")
    a, b = _target(system, target)
    pairs = [p for p in system.coupled_pairs() if p != (a, b) and {a, b} & set(p)]
    profiles = [
        RabiProfile(system.omega_ij(i, j), f0 * abs(float(system.couplings[i, j])), (i, j))
        for i, j in [(a, b), *pairs]
    ]
    return RabiSpectrum((a, b), tuple(profiles), float(f0))


@dataclass(frozen=True)
class ValidityReport:
    target: tuple[int, int]
    f0: float
    drive_omega: float
    gamma_at_resonance: float
    rwa_ratio: float
    gamma: float
    """``|gamma|`` at the drive frequency; it sets ``regime``."""
    spectator_leakage: tuple[tuple[tuple[int, int], float], ...]
    worst_leakage: float
    regime: Regime
    selective: bool
    eps_leak: float

    @property
    def verdict(self) -> str:
        return f"{self.regime.value}+{'selective' if self.selective else 'leaky'}"

    def to_dict(self, labels=None) -> dict:
        name = (lambda p: f"{labels[p[0]]}-{labels[p[1]]}") if labels else (lambda p: list(p))
        return {
            "target": name(self.target),
            "f0": self.f0,
            "drive_omega": self.drive_omega,
            "gamma_at_resonance": self.gamma_at_resonance,
            "rwa_ratio": self.rwa_ratio,
            "gamma": self.gamma,
            "spectator_leakage": [
                {"transition": name(p), "leakage": v} for p, v in self.spectator_leakage
            ],
            "worst_leakage": self.worst_leakage,
            "regime": self.regime.value,
            "selective": self.selective,
            "eps_leak": self.eps_leak,
            "verdict": self.verdict,
        }


def validity_report(
    system: LevelSystem,
    f0: float,
    target,
    drive_omega: float | None = None,
    eps_leak: float = DEFAULT_EPS_LEAK,
    thresholds=DEFAULT_THRESHOLDS,
) -> ValidityReport:
    """RWA regime and selectivity of driving ``target`` at ``drive_omega``.

    ``drive_omega`` defaults to the target's resonance.
    """
    spectrum = rabi_spectrum(system, f0, target)
    own = spectrum.target_profile
    if own.center == 0:
        raise DegenerateTransition("target levels are degenerate; no resonance to drive")
    omega = own.center if drive_omega is None else float(drive_omega)
    leakage = tuple((p.source, profile_height(p, omega)) for p in spectrum.spectators)
    worst = max((v for _, v in leakage), default=0.0)
    gamma = (omega + own.center) / own.halfwidth
    return ValidityReport(
        target=spectrum.target,
        f0=float(f0),
        drive_omega=omega,
        gamma_at_resonance=2.0 * own.center / own.halfwidth,
        rwa_ratio=own.halfwidth / own.center,
        gamma=gamma,
        spectator_leakage=leakage,
        worst_leakage=worst,
        regime=classify_regime(gamma, thresholds),
        selective=worst <= eps_leak,
        eps_leak=float(eps_leak),
    )


@dataclass(frozen=True)
class IntensityConstraint:
    """Upper bound on ``f0`` imposed by one profile of the target's spectrum.

    ``kind`` is ``"rwa"`` (target halfwidth vs. its center), ``"leakage"``
    (spectator height at the target resonance) or ``"spectator_rwa"`` (each
    spectator's own halfwidth vs. its center; an addition beyond the plain
    leakage criterion, kept so the spectator profiles themselves stay in the
    RWA regime).
    """

    kind: str
    transition: tuple[int, int]
    bound: float


def _check_limits(eps_leak, theta_rwa):
    if not 0 < eps_leak < 1:
        raise ConfigError(f"eps_leak must lie in (0, 1), got {eps_leak}")
    if not 0 < theta_rwa < 1:
        raise ConfigError(f"theta_rwa must lie in (0, 1), got {theta_rwa}")


def intensity_constraints(
    system: LevelSystem,
    target,
    eps_leak: float = DEFAULT_EPS_LEAK,
    theta_rwa: float = DEFAULT_THETA_RWA,
) -> list[IntensityConstraint]:
    _check_limits(eps_leak, theta_rwa)
    a, b = _target(system, target)
    omega_t = system.omega_ij(a, b)
    if omega_t == 0:
        raise DegenerateTransition("target levels are degenerate; no resonance to drive")
    # P(omega_t) <= eps  <=>  f0 |I| <= |omega_s - omega_t| sqrt(eps / (1 - eps))
    leak_factor = math.sqrt(eps_leak / (1.0 - eps_leak))
    out = [IntensityConstraint("rwa", (a, b), theta_rwa * omega_t / abs(system.couplings[a, b]))]
    for i, j in system.coupled_pairs():
        if (i, j) == (a, b) or not {a, b} & {i, j}:
            continue
        coupling = abs(float(system.couplings[i, j]))
        omega_s = system.omega_ij(i, j)
        out.append(IntensityConstraint("leakage", (i, j), abs(omega_s - omega_t) * leak_factor / coupling))
        out.append(IntensityConstraint("spectator_rwa", (i, j), theta_rwa * omega_s / coupling))
    return out


def max_clean_intensity(
    system: LevelSystem,
    target,
    eps_leak: float = DEFAULT_EPS_LEAK,
    theta_rwa: float = DEFAULT_THETA_RWA,
) -> float:
    """Largest drive intensity that keeps the target transfer clean.

    Returns ``0.0`` when a spectator is degenerate with the target (or sits at
    the origin), since then no positive intensity satisfies every constraint.
    """
    return min(c.bound for c in intensity_constraints(system, target, eps_leak, theta_rwa))


def min_transfer_time(
    system: LevelSystem,
    target,
    eps_leak: float = DEFAULT_EPS_LEAK,
    theta_rwa: float = DEFAULT_THETA_RWA,
) -> float:
    """Resonant transfer period at the clean-intensity limit; ``inf`` if none exists."""
    f0 = max_clean_intensity(system, target, eps_leak, theta_rwa)
    if f0 == 0:
        return math.inf
    a, b = (system.index(x) for x in target)
    return math.pi / (f0 * abs(float(system.couplings[a, b])))
