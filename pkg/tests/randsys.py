"""Seeded random level systems shared by the spectra/pathway tests."""

import numpy as np

from rabispec.core import LevelSystem


def random_system(rng: np.random.Generator, n: int, density: float = 0.6) -> LevelSystem:
    omegas = np.sort(rng.uniform(0.0, 3.0, n))
    omegas[0] = 0.0
    m = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                m[i, j] = m[j, i] = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
    # keep at least a chain so most pairs are reachable
    for i in range(n - 1):
        if m[i, i + 1] == 0 and rng.random() < 0.8:
            m[i, i + 1] = m[i + 1, i] = rng.uniform(0.2, 2.0)
    if not m.any():
        m[0, 1] = m[1, 0] = 1.0
    return LevelSystem.from_arrays(omegas, m)
