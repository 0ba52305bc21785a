"""Data model for driven discrete-level systems.

Units follow hbar = 1 throughout: level energies are stored directly as angular
frequencies, and ``f0 * I[i][j]`` is an angular frequency as well. The bundled
fixtures use reduced units with the lowest transition at ``omega = 1``; atomic
units work unchanged.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    AsymmetricCoupling,
    ConfigError,
    DuplicateLabel,
    FewerThanTwoLevels,
    InvalidDrive,
    LevelOutOfRange,
    NegativeEnergy,
    NonzeroDiagonal,
    UncoupledTransition,
)

__all__ = [
    "LevelSystem",
    "Drive",
    "TransitionParams",
    "validate_system",
    "system_to_dict",
    "transition_params",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LevelSystem:
    """Level energies plus the symmetric coupling-integral matrix.

    Parameters
    ----------
    labels : sequence of str
        Distinct level identifiers, in level order.
    omegas : array-like, shape (n,)
        Level energies as angular frequencies (>= 0).
    couplings : array-like, shape (n, n)
        Real symmetric matrix of coupling integrals with zero diagonal. Entries
        may be negative; only ``|I|`` enters populations.
    units : str
        Informational only.
    """

    labels: tuple[str, ...]
    omegas: np.ndarray
    couplings: np.ndarray
    units: str = "reduced"

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        omegas = np.asarray(self.omegas, dtype=float)
        couplings = np.asarray(self.couplings, dtype=float)
        n = len(labels)
        if n < 2:
            raise FewerThanTwoLevels(f"need at least 2 levels, got {n}")
        if len(set(labels)) != n:
            dup = sorted({lab for lab in labels if labels.count(lab) > 1})
            raise DuplicateLabel(f"duplicate level labels: {dup}")
        if omegas.shape != (n,):
            raise ConfigError(f"expected {n} level energies, got shape {omegas.shape}")
        if couplings.shape != (n, n):
            raise ConfigError(f"coupling matrix must be {n}x{n}, got {couplings.shape}")
        if not np.all(np.isfinite(omegas)) or not np.all(np.isfinite(couplings)):
            raise ConfigError("energies and couplings must be finite")
        neg = np.flatnonzero(omegas < 0)
        if neg.size:
            k = int(neg[0])
            raise NegativeEnergy(f"level {labels[k]!r} has negative omega {omegas[k]}")
        diag = np.flatnonzero(np.diag(couplings) != 0)
        if diag.size:
            k = int(diag[0])
            raise NonzeroDiagonal(f"I[{labels[k]}][{labels[k]}] = {couplings[k, k]} must be 0")
        bad = np.argwhere(couplings != couplings.T)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            raise AsymmetricCoupling(
                f"I[{labels[i]}][{labels[j]}] = {couplings[i, j]} but "
                f"I[{labels[j]}][{labels[i]}] = {couplings[j, i]}"
            )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "omegas", _frozen(omegas))
        object.__setattr__(self, "couplings", _frozen(couplings))

    @classmethod
    def from_arrays(cls, omegas, couplings, labels=None, units="reduced") -> LevelSystem:
        """Build a system from dense arrays; labels default to "1".."n"."""
        if labels is None:
            labels = [str(k + 1) for k in range(len(omegas))]
        return cls(tuple(labels), omegas, couplings, units)

    @property
    def n_levels(self) -> int:
        return len(self.labels)

    def index(self, level) -> int:
        """Resolve a label (str) or a 0-based index (int) to an index."""
        if isinstance(level, (int, np.integer)) and not isinstance(level, bool):
            k = int(level)
            if not 0 <= k < self.n_levels:
                raise LevelOutOfRange(f"level index {k} outside 0..{self.n_levels - 1}")
            return k
        try:
            return self.labels.index(str(level))
        except ValueError:
            raise LevelOutOfRange(f"unknown level label {level!r}") from None

    def omega_ij(self, i: int, j: int) -> float:
        return abs(float(self.omegas[i] - self.omegas[j]))

    def coupled_pairs(self) -> list[tuple[int, int]]:
        """All pairs ``(i, j)`` with ``i < j`` and nonzero coupling."""
        iu, ju = np.nonzero(np.triu(self.couplings, k=1))
        return [(int(i), int(j)) for i, j in zip(iu, ju)]

    def degenerate_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in self.coupled_pairs() if self.omegas[i] == self.omegas[j]]

    def __eq__(self, other):
        if not isinstance(other, LevelSystem):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.units == other.units
            and np.array_equal(self.omegas, other.omegas)
            and np.array_equal(self.couplings, other.couplings)
        )

    __hash__ = None


@dataclass(frozen=True)
class Drive:
    """Monochromatic drive ``f0 * cos(omega * t)``."""

    f0: float
    omega: float

    def __post_init__(self):
        for name in ("f0", "omega"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float, np.floating)) and math.isfinite(v) and v > 0):
                raise InvalidDrive(f"drive {name} must be a finite positive number, got {v!r}")
        object.__setattr__(self, "f0", float(self.f0))
        object.__setattr__(self, "omega", float(self.omega))


@dataclass(frozen=True)
class TransitionParams:
    i: int
    j: int
    omega_ij: float
    d_ij: float
    delta: float
    gamma: float
    s_ij: int
    drive: Drive = field(repr=False)

    @property
    def coupling(self) -> float:
        """Magnitude of the total coupling, i.e. the profile halfwidth."""
        return abs(self.d_ij)


def transition_params(system: LevelSystem, drive: Drive, i, j) -> TransitionParams:
    """Detuning and counter-rotating scale of transition ``i <-> j`` under ``drive``.

    ``delta = (omega - omega_ij) / (f0 I_ij)`` and
    ``gamma = (omega + omega_ij) / (f0 I_ij)``; both carry the sign of ``I_ij``.
    """
    i, j = system.index(i), system.index(j)
    coupling = float(system.couplings[i, j])
    if i == j or coupling == 0.0:
        raise UncoupledTransition(
            f"levels {system.labels[i]!r} and {system.labels[j]!r} are not coupled"
        )
    omega_ij = system.omega_ij(i, j)
    d_ij = drive.f0 * coupling
    # sign(omega_i - omega_j); a degenerate pair has no ordering, take +1
    s_ij = -1 if system.omegas[i] < system.omegas[j] else 1
    return TransitionParams(
        i=i,
        j=j,
        omega_ij=omega_ij,
        d_ij=d_ij,
        delta=(drive.omega - omega_ij) / d_ij,
        gamma=(drive.omega + omega_ij) / d_ij,
        s_ij=s_ij,
        drive=drive,
    )


def _lookup(labels: list[str], ident, where: str) -> int:
    key = str(ident)
    if key not in labels:
        raise ConfigError(f"{where}: unknown level {ident!r}")
    return labels.index(key)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def validate_system(raw: Mapping) -> LevelSystem:
    """Parse a structured system description into a :class:`LevelSystem`.

    ``raw`` has ``levels: [{label, omega}, ...]`` and ``couplings`` either as a
    sparse list ``[{i, j, value}, ...]`` (entries reference level labels and are
    stored once) or as a dense nested list. Nothing is symmetrized: a sparse
    list naming both ``(i, j)`` and ``(j, i)`` with different values, or a dense
    matrix that is not symmetric, is rejected.
    """
    if not isinstance(raw, Mapping):
        raise ConfigError("system description must be a mapping")
    levels = raw.get("levels")
    if not isinstance(levels, Sequence) or isinstance(levels, str):
        raise ConfigError("'levels' must be a list of {label, omega}")
    labels, omegas = [], []
    for k, entry in enumerate(levels):
        where = f"levels[{k}]"
        if not isinstance(entry, Mapping) or "omega" not in entry:
            raise ConfigError(f"{where}: expected {{label, omega}}")
        labels.append(str(entry.get("label", k + 1)))
        omegas.append(_number(entry["omega"], f"{where}.omega"))
    if len(labels) < 2:
        raise FewerThanTwoLevels(f"need at least 2 levels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"duplicate level labels in {labels}")
    n = len(labels)

    spec = raw.get("couplings", [])
    if spec and isinstance(spec[0], Sequence) and not isinstance(spec[0], (str, Mapping)):
        try:
            matrix = np.array(spec, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"couplings: not a numeric matrix ({exc})") from None
    else:
        matrix = np.zeros((n, n))
        seen: dict[tuple[int, int], float] = {}
        for k, entry in enumerate(spec):
            where = f"couplings[{k}]"
            if not isinstance(entry, Mapping) or not {"i", "j", "value"} <= entry.keys():
                raise ConfigError(f"{where}: expected {{i, j, value}}")
            i = _lookup(labels, entry["i"], f"{where}.i")
            j = _lookup(labels, entry["j"], f"{where}.j")
            value = _number(entry["value"], f"{where}.value")
            if i == j and value != 0:
                raise NonzeroDiagonal(f"{where}: diagonal coupling {value} must be 0")
            for key in ((i, j), (j, i)):
                if key in seen and seen[key] != value:
                    raise AsymmetricCoupling(
                        f"{where}: I[{labels[i]}][{labels[j]}] = {value} conflicts "
                        f"with earlier value {seen[key]}"
                    )
            seen[(i, j)] = value
            matrix[i, j] = matrix[j, i] = value
    return LevelSystem(tuple(labels), omegas, matrix, str(raw.get("units", "reduced")))


def system_to_dict(system: LevelSystem) -> dict:
    """Inverse of :func:`validate_system` (sparse coupling list, upper triangle)."""
    return {
        "units": system.units,
        "levels": [
            {"label": lab, "omega": float(w)} for lab, w in zip(system.labels, system.omegas)
        ],
        "couplings": [
            {"i": system.labels[i], "j": system.labels[j], "value": float(system.couplings[i, j])}
            for i, j in system.coupled_pairs()
        ],
    }
