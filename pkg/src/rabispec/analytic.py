"""Closed-form predictions of the rotating-wave (RWA) two-level solution.

A Rabi profile is the Lorentzian RWA oscillation amplitude of one transition
as a function of drive frequency,

    P(omega) = 1 / (1 + ((omega - omega_ij) / D_ij)**2),

with halfwidth at half maximum ``|D_ij| = f0 |I_ij|``. The population-transfer
period (first maximum of the target level) is ``T = pi sqrt(P) / |D_ij|``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import Drive, LevelSystem, TransitionParams, transition_params
from .exceptions import ConfigError

__all__ = [
    "Regime",
    "RabiProfile",
    "RwaPrediction",
    "DEFAULT_THRESHOLDS",
    "profile_height",
    "transfer_period",
    "rwa_population",
    "classify_regime",
    "rwa_prediction",
    "extreme_coupling_period",
]

# (gamma_valid, gamma_extreme)
DEFAULT_THRESHOLDS = (20.0, 0.2)


class Regime(str, enum.Enum):
    RWA_VALID = "RWA_VALID"
    MARGINAL = "MARGINAL"
    BROKEN = "BROKEN"
    EXTREME = "EXTREME"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RabiProfile:
    """Lorentzian RWA amplitude curve of the transition ``source``.

    ``center`` may be 0 for a degenerate pair; such a profile is only ever a
    spectator, analyses that need a resonance reject it.
    """

    center: float
    halfwidth: float
    source: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if not (self.center >= 0 and math.isfinite(self.center)):
            raise ConfigError(f"profile center must be >= 0, got {self.center}")
        if not (self.halfwidth > 0 and math.isfinite(self.halfwidth)):
            raise ConfigError(f"profile halfwidth must be > 0, got {self.halfwidth}")

    @classmethod
    def of(cls, system: LevelSystem, f0: float, i, j) -> RabiProfile:
        p = transition_params(system, Drive(f0, 1.0), i, j)
        return cls(p.omega_ij, p.coupling, (p.i, p.j))

    def __call__(self, omega):
        return profile_height(self, omega)


def profile_height(profile: RabiProfile, omega):
    """RWA oscillation amplitude at drive frequency ``omega`` (scalar or array)."""
    x = (np.asarray(omega, dtype=float) - profile.center) / profile.halfwidth
    out = 1.0 / (1.0 + x * x)
    return float(out) if out.ndim == 0 else out


def transfer_period(profile: RabiProfile, omega):
    """Time from the source level's first maximum to the target level's first maximum."""
    out = math.pi * np.sqrt(profile_height(profile, omega)) / profile.halfwidth
    return float(out) if np.ndim(out) == 0 else out


def _profile_from_params(params: TransitionParams) -> RabiProfile:
    return RabiProfile(params.omega_ij, params.coupling, (params.i, params.j))


def rwa_population(params: TransitionParams, t):
    """Target-level population of the generalized Rabi solution at time ``t``.

    The whole population starts in the source level. Returns
    ``A sin^2(pi t / (2 T))`` with ``A`` the profile height at the drive
    frequency and ``T`` the transfer period.
    """
    profile = _profile_from_params(params)
    amplitude = profile_height(profile, params.drive.omega)
    period = transfer_period(profile, params.drive.omega)
    out = amplitude * np.sin(np.pi * np.asarray(t, dtype=float) / (2.0 * period)) ** 2
    return float(out) if out.ndim == 0 else out


def classify_regime(params, thresholds=DEFAULT_THRESHOLDS) -> Regime:
    """Tag how well the RWA describes a transition, from ``|gamma|``.

    ``params`` is a :class:`TransitionParams` or a bare gamma value.
    """
    gamma_valid, gamma_extreme = thresholds
    gamma = abs(params.gamma if isinstance(params, TransitionParams) else float(params))
    if gamma >= gamma_valid:
        return Regime.RWA_VALID
    if gamma <= gamma_extreme:
        return Regime.EXTREME
    if gamma <= 2.0:
        return Regime.BROKEN
    return Regime.MARGINAL


@dataclass(frozen=True)
class RwaPrediction:
    amplitude: float
    transfer_period: float
    gamma: float
    bloch_siegert_amplitude: float
    regime: Regime

    def gridlines(self, t_end: float) -> list[float]:
        """Multiples of the transfer period within ``[0, t_end]``."""
        n = int(math.floor(t_end / self.transfer_period + 1e-12))
        return [k * self.transfer_period for k in range(n + 1)]


def rwa_prediction(params: TransitionParams, thresholds=DEFAULT_THRESHOLDS) -> RwaPrediction:
    profile = _profile_from_params(params)
    gamma = abs(params.gamma)
    return RwaPrediction(
        amplitude=profile_height(profile, params.drive.omega),
        transfer_period=transfer_period(profile, params.drive.omega),
        gamma=gamma,
        bloch_siegert_amplitude=1.0 / gamma,
        regime=classify_regime(gamma, thresholds),
    )


def extreme_coupling_period(tau, delta: float, gamma: float, eps: float = 1e-12):
    """Modulated scaled-time period ``pi / |1 + cos(2 (delta + gamma) tau)|``.

    Only meaningful for ``gamma << 1``. Where the denominator drops below
    ``eps`` the period is unbounded and ``inf`` is returned.
    """
    denom = np.abs(1.0 + np.cos(2.0 * (delta + gamma) * np.asarray(tau, dtype=float)))
    with np.errstate(divide="ignore"):
        out = np.where(denom < eps, np.inf, np.pi / np.maximum(denom, eps))
    return float(out) if out.ndim == 0 else out
