"""Simulation runs with their RWA annotations, and the bundled regime datasets.

A :class:`RunSpec` fully determines one integration; :func:`run` is what both
``rabispec simulate`` and ``rabispec figures`` execute. Independent runs can be
fanned out over worker processes; results always come back in input order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import RabiProfile, profile_height, rwa_prediction
from .core import Drive, LevelSystem, system_to_dict, transition_params, validate_system
from .dynamics import AmplitudeState, IntegratorOptions, PopulationTrace, integrate, peak_population
from .io import system_hash, write_curves, write_json, write_trace
from .spectra import rabi_spectrum
from .svg import line_plot

__all__ = ["RunSpec", "run", "run_many", "annotations", "fixture", "REGIME_RUNS", "write_figures"]


def fixture(name: str) -> LevelSystem:
    """Load a bundled system (``two_level``, ``ladder``, ``ladder_hf``, ``chain4``)."""
    import json

    text = resources.files("rabispec.data").joinpath(f"{name}.json").read_text()
    return validate_system(json.loads(text))


@dataclass(frozen=True)
class RunSpec:
    name: str
    system: dict
    f0: float
    omega: float
    initial: int
    t_end: float
    samples: int = 2001
    target: tuple[int, int] | None = None
    options: dict = field(default_factory=dict)

    def level_system(self) -> LevelSystem:
        return validate_system(self.system)


def annotations(system: LevelSystem, drive: Drive, t_end: float, target=None) -> list[dict]:
    """RWA amplitude, transfer period and period gridlines per coupled transition."""
    pairs = [tuple(system.index(x) for x in target)] if target else system.coupled_pairs()
    out = []
    for i, j in pairs:
        if system.omegas[i] == system.omegas[j]:
            continue
        p = transition_params(system, drive, i, j)
        pred = rwa_prediction(p)
        out.append(
            {
                "transition": [system.labels[i], system.labels[j]],
                "delta": p.delta,
                "gamma": pred.gamma,
                "amplitude": pred.amplitude,
                "transfer_period": pred.transfer_period,
                "bloch_siegert_amplitude": pred.bloch_siegert_amplitude,
                "regime": pred.regime.value,
                "gridlines": pred.gridlines(t_end),
            }
        )
    return out


def run(spec: RunSpec) -> tuple[PopulationTrace, dict]:
    """Integrate one run on a uniform output grid; return the trace and its metadata."""
    system = spec.level_system()
    drive = Drive(spec.f0, spec.omega)
    grid = np.linspace(0.0, spec.t_end, spec.samples)
    opts = IntegratorOptions(dense_grid=grid, include_steps=False, **spec.options)
    trace = integrate(system, drive, AmplitudeState.basis(system.n_levels, spec.initial), spec.t_end, opts)
    peaks = {}
    for k, lab in enumerate(system.labels):
        t_pk, v = peak_population(trace, k)
        peaks[lab] = {"t": t_pk, "value": v}
    meta = {
        "name": spec.name,
        "version": __version__,
        "system_hash": system_hash(system),
        "system": system_to_dict(system),
        "drive": {"f0": drive.f0, "omega": drive.omega},
        "initial_level": system.labels[spec.initial],
        "t_end": spec.t_end,
        "samples": spec.samples,
        "tolerances": trace.metadata["options"],
        "norm_drift": trace.metadata["norm_drift"],
        "degenerate_pairs": trace.metadata["degenerate_pairs"],
        "peak_populations": peaks,
        "rwa": annotations(system, drive, spec.t_end, spec.target),
    }
    return trace, meta


def run_many(specs, jobs: int = 1):
    if jobs <= 1 or len(specs) <= 1:
        return [run(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run, specs))


def _two_level_runs() -> list[RunSpec]:
    two = system_to_dict(fixture("two_level"))
    specs = []
    # resonant drive at four coupling strengths, gamma = 2 omega_12 / D
    for gamma in (50, 5, 1, 0.1):
        d = 2.0 / gamma
        t_end = max(3 * math.pi / d, 2 * math.pi)
        specs.append(RunSpec(f"fig2_gamma_{gamma:g}", two, d, 1.0, 0, t_end, 4001))
    # one profile with D = 0.05, probed at four heights
    for case, w in zip("abcd", (1.050, 0.850, 0.503, 2.580)):
        period = math.pi * math.sqrt(profile_height(RabiProfile(1.0, 0.05), w)) / 0.05
        specs.append(RunSpec(f"fig3_{case}", two, 0.05, w, 0, 3 * period, 4001))
    return specs


def _ladder_runs() -> list[RunSpec]:
    ladder = system_to_dict(fixture("ladder"))
    specs = []
    for fig, f0 in (("fig4", 0.005), ("fig5", 0.02), ("fig6", 0.1)):
        specs.append(RunSpec(f"{fig}_f0_{f0:g}", ladder, f0, 1.0, 1, 4 * math.pi / f0, 4001, (0, 1)))
    return specs


REGIME_RUNS = _two_level_runs() + _ladder_runs()


def write_run(out: Path, spec: RunSpec, trace: PopulationTrace, meta: dict, formats=("csv", "json", "svg")):
    out.mkdir(parents=True, exist_ok=True)
    files = []
    if "csv" in formats:
        files.append(write_trace(out / f"{spec.name}.csv", trace))
    files.append(write_json(out / f"{spec.name}.meta.json", meta))
    if "svg" in formats:
        system = spec.level_system()
        pops = trace.populations
        series = {f"Pi_{lab}": pops[:, k] for k, lab in enumerate(system.labels)}
        ann = meta["rwa"][0] if meta["rwa"] else None
        files.append(
            line_plot(
                out / f"{spec.name}.svg",
                trace.times,
                series,
                title=spec.name,
                xlabel="t",
                ylabel="population",
                vlines=ann["gridlines"] if ann else (),
                hlines=[ann["amplitude"]] if ann else (),
            )
        )
    return files


def _profile_figures(out: Path, formats) -> dict:
    summary = {}
    omega = np.linspace(0.0, 3.0, 1201)
    curves = {}
    for gamma in (50, 5, 1, 0.1):
        d = 2.0 / gamma
        curves[f"P_D={d:g}"] = profile_height(RabiProfile(1.0, d), omega)
    if "csv" in formats:
        write_curves(out / "fig1_profiles.csv", "omega", omega, curves)
    if "svg" in formats:
        line_plot(out / "fig1_profiles.svg", omega, curves, title="fig1", xlabel="omega", ylabel="P")
    summary["fig1"] = {name: {"halfwidth": float(name.split("=")[1])} for name in curves}

    ladder = fixture("ladder")
    for fig, f0 in (("fig4", 0.005), ("fig5", 0.02), ("fig6", 0.1)):
        spec = rabi_spectrum(ladder, f0, (0, 1))
        w = np.linspace(0.8, 1.2, 1601)
        cols = {
            f"P_{ladder.labels[p.source[0]]}{ladder.labels[p.source[1]]}": profile_height(p, w)
            for p in spec.profiles
        }
        if "csv" in formats:
            write_curves(out / f"{fig}_spectrum.csv", "omega", w, cols)
        if "svg" in formats:
            line_plot(out / f"{fig}_spectrum.svg", w, cols, title=f"{fig} spectrum", xlabel="omega",
                      ylabel="P", vlines=[1.0])
        summary[f"{fig}_spectrum"] = {
            "leakage_at_drive": {name: float(c[np.argmin(abs(w - 1.0))]) for name, c in cols.items()}
        }
    return summary


def write_figures(out, jobs: int = 1, formats=("csv", "json", "svg")) -> dict:
    """Regenerate every regime dataset under ``out``; returns the summary document."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    summary = _profile_figures(out, formats)
    results = run_many(REGIME_RUNS, jobs)
    for spec, (trace, meta) in zip(REGIME_RUNS, results):
        write_run(out, spec, trace, meta, formats)
        summary[spec.name] = {
            "peak_populations": meta["peak_populations"],
            "norm_drift": meta["norm_drift"],
            "rwa": [{k: a[k] for k in ("transition", "amplitude", "transfer_period", "gamma", "regime")}
                    for a in meta["rwa"]],
        }
    write_json(out / "summary.json", summary)
    return summary
