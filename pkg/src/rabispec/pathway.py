"""Fastest clean population-transfer route through a coupling graph.

Every coupled pair is an edge weighted by its minimum clean transfer time
(:func:`rabispec.spectra.min_transfer_time`). Hops are driven one at a time,
each at its own resonance and clean-intensity limit, so the route time is the
sum of edge weights and Dijkstra's algorithm applies. Edges whose clean
intensity is zero are left out of the graph.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .core import LevelSystem
from .exceptions import ConfigError
from .spectra import DEFAULT_EPS_LEAK, DEFAULT_THETA_RWA, max_clean_intensity

__all__ = ["PathStep", "PathResult", "edge_weights", "fastest_path", "shortest_route"]


@dataclass(frozen=True)
class PathStep:
    transition: tuple[int, int]
    """``(from, to)`` in route order."""
    f0: float
    drive_omega: float
    transfer_time: float
    leakage_budget: float


@dataclass(frozen=True)
class PathResult:
    route: tuple[int, ...]
    steps: tuple[PathStep, ...]
    total_time: float

    def to_dict(self, labels=None) -> dict:
        name = (lambda k: labels[k]) if labels else (lambda k: k)
        return {
            "route": [name(k) for k in self.route],
            "steps": [
                {
                    "transition": [name(s.transition[0]), name(s.transition[1])],
                    "f0": s.f0,
                    "drive_omega": s.drive_omega,
                    "transfer_time": s.transfer_time,
                    "leakage_budget": s.leakage_budget,
                }
                for s in self.steps
            ],
            "total_time": self.total_time,
        }


def edge_weights(
    system: LevelSystem, eps_leak=DEFAULT_EPS_LEAK, theta_rwa=DEFAULT_THETA_RWA
) -> dict[tuple[int, int], tuple[float, float]]:
    """``(i, j) -> (f0_max, transfer_time)`` for every usable coupled pair, ``i < j``."""
    out = {}
    for i, j in system.coupled_pairs():
        if system.omegas[i] == system.omegas[j]:
            continue
        f0 = max_clean_intensity(system, (i, j), eps_leak, theta_rwa)
        if f0 > 0:
            out[(i, j)] = (f0, math.pi / (f0 * abs(float(system.couplings[i, j]))))
    return out


def shortest_route(n: int, weights: dict[tuple[int, int], float], source: int, dest: int):
    """Dijkstra over an undirected graph with nonnegative weights.

    Routes are ranked by ``(total, hops, route)``, so equal-time routes resolve
    to the one with fewer hops, then the lexicographically smallest. Returns
    ``(route, total)`` or ``None`` when ``dest`` is unreachable.
    """
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (i, j), w in sorted(weights.items()):
        adj[i].append((j, w))
        adj[j].append((i, w))
    start = (0.0, 0, (source,))
    best = {source: start}
    heap = [start]
    while heap:
        key = heapq.heappop(heap)
        total, hops, route = key
        u = route[-1]
        if best.get(u) != key:
            continue
        if u == dest:
            return route, total
        for v, w in adj[u]:
            if v in route:
                continue
            cand = (total + w, hops + 1, route + (v,))
            if v not in best or cand < best[v]:
                best[v] = cand
                heapq.heappush(heap, cand)
    return None


def fastest_path(
    system: LevelSystem,
    source,
    dest,
    eps_leak: float = DEFAULT_EPS_LEAK,
    theta_rwa: float = DEFAULT_THETA_RWA,
) -> PathResult | None:
    """Quickest sequence of clean resonant hops from ``source`` to ``dest``.

    Returns ``None`` if no route of usable edges connects the two levels.
    Each hop is modelled as a complete transfer within its own ``eps_leak``
    budget; losses compounded over several hops are not tracked.
    """
    s, d = system.index(source), system.index(dest)
    if s == d:
        raise ConfigError("source and dest must differ")
    weights = edge_weights(system, eps_leak, theta_rwa)
    found = shortest_route(system.n_levels, {k: w[1] for k, w in weights.items()}, s, d)
    if found is None:
        return None
    route, total = found
    steps = []
    for u, v in zip(route, route[1:]):
        f0, t = weights[(min(u, v), max(u, v))]
        steps.append(PathStep((u, v), f0, system.omega_ij(u, v), t, eps_leak))
    return PathResult(tuple(route), tuple(steps), total)
