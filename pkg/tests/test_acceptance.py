"""Acceptance suite: one test per numbered criterion, each printing a PASS/FAIL line."""

import math
from functools import lru_cache

import numpy as np
import pytest
from scipy.signal import find_peaks

from conftest import record
from oracle import brute_force_fastest
from randsys import random_system
from rabispec.analytic import RabiProfile, profile_height, rwa_population, transfer_period
from rabispec.core import Drive, system_to_dict, transition_params
from rabispec.dynamics import (
    AmplitudeState,
    IntegratorOptions,
    fit_sinusoid,
    integrate_sequence,
    measured_transfer_period,
    peak_population,
)
from rabispec.figures import REGIME_RUNS, RunSpec, fixture, run
from rabispec.pathway import fastest_path
from rabispec.spectra import intensity_constraints, max_clean_intensity, rabi_spectrum, validity_report

pytestmark = pytest.mark.acceptance

SPECS = {s.name: s for s in REGIME_RUNS}
TWO = system_to_dict(fixture("two_level"))
for _g in (37, 20):
    _d = 2.0 / _g
    SPECS[f"gamma_{_g}"] = RunSpec(f"gamma_{_g}", TWO, _d, 1.0, 0, 3 * math.pi / _d, 4001)

# every run that criteria 1-5 look at; criterion 6 audits all of them
CRITERIA_RUNS = {
    1: ["fig2_gamma_50"],
    2: ["fig2_gamma_50", "gamma_37", "gamma_20"],
    3: ["fig3_a", "fig3_b", "fig3_c", "fig3_d"],
    4: ["fig2_gamma_1", "fig2_gamma_0.1"],
    5: ["fig4_f0_0.005", "fig5_f0_0.02", "fig6_f0_0.1"],
}


@lru_cache(maxsize=None)
def simulated(name):
    return run(SPECS[name])


def test_criterion_01_rwa_agreement():
    trace, _ = simulated("fig2_gamma_50")
    system = fixture("two_level")
    p = transition_params(system, Drive(0.04, 1.0), 0, 1)
    deviation = np.max(np.abs(trace.populations[:, 1] - rwa_population(p, trace.times)))
    t_max = measured_transfer_period(trace, 1)
    expected = math.pi / 0.04
    rel = abs(t_max - expected) / expected
    ok = deviation <= 0.06 and rel <= 0.03
    record(1, "RWA agreement at gamma=50", ok, f"max dev {deviation:.4f} <= 0.06, first max {t_max:.3f} vs {expected:.3f} ({rel:.2%})")
    assert ok


def test_criterion_02_bloch_siegert_scaling():
    details, ok = [], True
    for name, gamma in (("fig2_gamma_50", 50), ("gamma_37", 37), ("gamma_20", 20)):
        trace, _ = simulated(name)
        d = 2.0 / gamma
        fit = fit_sinusoid(trace.times, trace.populations[:, 1], 0.8 * d, 1.2 * d)
        ripple = fit.max_residual
        good = 0.3 / gamma <= ripple <= 3.0 / gamma
        ok &= good
        details.append(f"G={gamma}: {ripple * gamma:.3f}/G")
    record(2, "ripple amplitude in [0.3/G, 3/G]", ok, ", ".join(details))
    assert ok


def test_criterion_03_off_resonant_amplitudes():
    details, ok = [], True
    targets = {"a": 0.5, "b": 0.1, "c": 0.01, "d": 0.001}
    for case, w in zip("abcd", (1.050, 0.850, 0.503, 2.580)):
        trace, _ = simulated(f"fig3_{case}")
        _, peak = peak_population(trace, 1)
        gamma = (w + 1.0) / 0.05
        good = abs(peak - targets[case]) <= 1 / gamma + 0.01
        msg = f"{case}: peak {peak:.4f}"
        if case in "ab":
            expected = float(transfer_period(RabiProfile(1.0, 0.05), w))
            rel = abs(measured_transfer_period(trace, 1) - expected) / expected
            good &= rel <= 0.03
            msg += f", period off {rel:.2%}"
        ok &= good
        details.append(msg)
    record(3, "off-resonant peaks and periods", ok, "; ".join(details))
    assert ok


def test_criterion_04_strong_coupling_regimes():
    trace, _ = simulated("fig2_gamma_1")
    fit = fit_sinusoid(trace.times, trace.populations[:, 1], 0.02, 20.0, n_grid=20000)
    doubly = fit.max_residual >= 0.15

    trace, _ = simulated("fig2_gamma_0.1")
    pi2 = trace.populations[:, 1]
    peak = pi2.max()
    idx, _ = find_peaks(pi2, prominence=0.05)
    intervals = np.diff(trace.times[idx])
    variation = np.max(np.abs(np.diff(intervals)) / intervals[:-1]) if len(intervals) > 1 else 0.0
    ok = doubly and peak >= 0.9 and variation >= 0.2
    record(
        4,
        "gamma=1 not a single sinusoid; gamma=0.1 full but modulated",
        ok,
        f"best residual {fit.max_residual:.3f}, peak {peak:.4f}, interval variation {variation:.0%}",
    )
    assert ok


def test_criterion_05_ladder_selectivity():
    ladder = fixture("ladder")
    p23 = lambda f0: float(profile_height(rabi_spectrum(ladder, f0, (0, 1)).profiles[1], 1.0))
    weak, _ = simulated("fig4_f0_0.005")
    mid, _ = simulated("fig5_f0_0.02")
    strong, _ = simulated("fig6_f0_0.1")
    w3, w1 = weak.populations[:, 2].max(), weak.populations[:, 0].max()
    m3 = mid.populations[:, 2].max()
    s1 = strong.populations[:, 0].max()
    ok = (
        w3 <= 0.011
        and w1 >= 0.98
        and 0.5 * p23(0.02) <= m3 <= 1.5 * p23(0.02)
        and p23(0.1) >= 0.5
        and s1 <= 0.9
    )
    record(
        5,
        "ladder selectivity",
        ok,
        f"f0=0.005: Pi3 {w3:.4f}, Pi1 {w1:.4f}; f0=0.02: Pi3/P23 {m3 / p23(0.02):.3f}; "
        f"f0=0.1 (P23 {p23(0.1):.2f}): Pi1 {s1:.3f}",
    )
    assert ok


def test_criterion_06_norm_conservation():
    names = sorted({n for group in CRITERIA_RUNS.values() for n in group})
    worst = {n: float(np.max(np.abs(simulated(n)[0].populations.sum(axis=1) - 1.0))) for n in names}
    name, value = max(worst.items(), key=lambda kv: kv[1])
    ok = value <= 1e-8
    record(6, f"norm drift over {len(names)} runs", ok, f"worst {value:.2e} in {name}")
    assert ok


def test_criterion_07_analytic_identities():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        center = float(rng.uniform(0.1, 10.0))
        width = center * float(10 ** rng.uniform(-3, 1))
        prof = RabiProfile(center, width)
        x = float(rng.uniform(0, 5 * width))
        w = float(rng.uniform(0, 3 * center))
        errs = [
            abs(profile_height(prof, center + x) - profile_height(prof, center - x)),
            abs(profile_height(prof, center) - 1.0),
            abs(profile_height(prof, center + width) - 0.5),
            abs(profile_height(prof, center - width) - 0.5),
            abs(transfer_period(prof, w) ** 2 * width**2 / math.pi**2 - profile_height(prof, w)),
        ]
        worst = max(worst, *errs)
    ok = worst <= 1e-12
    record(7, "analytic identities over 1000 draws", ok, f"worst error {worst:.1e}")
    assert ok


def _metrics(system, f0, target, eps):
    """Measured quantities at ``f0`` independent of the bound formulas."""
    rep = validity_report(system, f0, target, eps_leak=eps)
    spectators = rabi_spectrum(system, f0, target).spectators
    spec_rwa = max((p.halfwidth / p.center for p in spectators if p.center > 0), default=0.0)
    return rep.rwa_ratio, rep.worst_leakage, spec_rwa


def test_criterion_08_max_clean_intensity_maximality():
    rng = np.random.default_rng(8)
    eps, theta = 0.01, 0.05
    checked, failures, kinds = 0, [], {}
    while checked < 100:
        system = random_system(rng, int(rng.integers(3, 6)))
        pairs = [p for p in system.coupled_pairs() if system.omega_ij(*p) > 0]
        target = pairs[int(rng.integers(len(pairs)))]
        f0 = max_clean_intensity(system, target, eps, theta)
        if f0 == 0:
            continue
        checked += 1
        rwa, leak, spec_rwa = _metrics(system, f0, target, eps)
        binding = min(intensity_constraints(system, target, eps, theta), key=lambda c: c.bound)
        kinds[binding.kind] = kinds.get(binding.kind, 0) + 1
        satisfied = rwa <= theta + 1e-12 and leak <= eps + 1e-9 and spec_rwa <= theta + 1e-12
        measured = {"rwa": rwa, "leakage": leak, "spectator_rwa": spec_rwa}[binding.kind]
        limit = eps if binding.kind == "leakage" else theta
        tight = abs(measured - limit) <= 1e-9
        rwa2, leak2, spec2 = _metrics(system, f0 * (1 + 1e-6), target, eps)
        violated = rwa2 > theta or leak2 > eps or spec2 > theta
        if not (satisfied and tight and violated):
            failures.append((system_to_dict(system), target))
    ok = not failures
    record(8, "max_clean_intensity maximal on 100 systems", ok, f"{len(failures)} failures, binding {dict(sorted(kinds.items()))}")
    assert ok, failures[:3]


def test_criterion_09_pathway_oracle():
    rng = np.random.default_rng(9)
    eps, theta = 0.01, 0.05
    mismatches, routes = 0, 0
    for _ in range(50):
        n = int(rng.integers(3, 7))
        system = random_system(rng, n, density=float(rng.uniform(0.3, 0.9)))
        source, dest = (int(k) for k in rng.choice(n, 2, replace=False))
        got = fastest_path(system, source, dest, eps, theta)
        again = fastest_path(system, source, dest, eps, theta)
        want = brute_force_fastest(system, source, dest, eps, theta)
        if want is None:
            good = got is None and again is None
        else:
            routes += 1
            good = got is not None and got == again and (got.total_time, got.route) == (want[0], want[2])
        mismatches += not good
    ok = mismatches == 0
    record(9, "pathway matches exhaustive search on 50 systems", ok, f"{mismatches} mismatches, {routes} routed")
    assert ok


def test_criterion_10_end_to_end_pathway():
    ladder = fixture("ladder")
    path = fastest_path(ladder, "1", "3", eps_leak=0.01)
    pulses = [(Drive(s.f0, s.drive_omega), s.transfer_time) for s in path.steps]
    trace = integrate_sequence(ladder, pulses, AmplitudeState.basis(3, 0), IntegratorOptions(include_steps=False))
    final = trace.populations[-1, 2]
    elapsed = trace.times[-1] - trace.times[0]
    ok = final >= 0.97 and elapsed <= 1.1 * path.total_time
    record(
        10,
        "ladder 1->3 transfer along the fastest path",
        ok,
        f"final Pi3 {final:.4f}, time {elapsed:.2f} vs bound {1.1 * path.total_time:.2f}",
    )
    assert ok
