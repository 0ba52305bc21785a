"""Command-line front end.

    rabispec simulate --system ladder.json --f0 0.02 --target 1,2 --initial 2 --t-end 600
    rabispec profile  --system two.json --target 1,2 --f0 0.04,0.4,2,20
    rabispec spectrum --system ladder.json --target 1,2 --f0 0.02
    rabispec validate --system ladder.json --target 1,2 --f0 0.005
    rabispec pathway  --system ladder.json --source 1 --dest 3
    rabispec figures  --out figures/

Levels are referred to by their labels. Exit status is 0 on success, 2 for
configuration errors and 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analytic import RabiProfile, profile_height
from .core import system_to_dict
from .exceptions import ConfigError, NumericalError
from .figures import RunSpec, run, write_figures, write_run
from .io import load_system, write_curves, write_json, write_trace
from .pathway import fastest_path
from .spectra import (
    DEFAULT_EPS_LEAK,
    DEFAULT_THETA_RWA,
    intensity_constraints,
    max_clean_intensity,
    min_transfer_time,
    rabi_spectrum,
    validity_report,
)
from .svg import line_plot

FORMATS = ("csv", "json", "svg")


@dataclass
class RunConfig:
    command: str
    system_path: Path | None
    out: Path
    formats: tuple[str, ...]
    params: dict = field(default_factory=dict)


def _formats(value: str) -> tuple[str, ...]:
    items = tuple(v.strip() for v in value.split(",") if v.strip())
    bad = [v for v in items if v not in FORMATS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown format(s) {bad}; choose from {FORMATS}")
    return items


def _floats(value: str) -> list[float]:
    try:
        return [float(v) for v in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {value!r}") from None


def _pair(value: str) -> tuple[str, str]:
    parts = [v.strip() for v in value.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected two level labels 'a,b', got {value!r}")
    return parts[0], parts[1]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rabispec", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, system=True):
        if system:
            p.add_argument("--system", type=Path, required=True, help="JSON system document")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--format", type=_formats, default=FORMATS, help="comma list of csv,json,svg")

    def limits(p):
        p.add_argument("--eps-leak", type=float, default=DEFAULT_EPS_LEAK)
        p.add_argument("--theta-rwa", type=float, default=DEFAULT_THETA_RWA)

    p = sub.add_parser("simulate", help="integrate the full amplitude equations")
    common(p)
    p.add_argument("--f0", type=float, required=True)
    p.add_argument("--omega", type=float, help="drive frequency (default: resonance of --target)")
    p.add_argument("--target", type=_pair, help="transition annotated with RWA predictions")
    p.add_argument("--initial", help="initially populated level (default: first level)")
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--samples", type=int, default=2001, help="uniform output samples")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-11)
    p.add_argument("--norm-tol", type=float, default=1e-8)
    p.add_argument("--name", default="trace", help="output file stem")

    for name, helptext in (("profile", "Rabi profile of one transition"),
                           ("spectrum", "Rabi spectrum of a targeted transition")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--target", type=_pair, required=True)
        p.add_argument("--f0", type=_floats, required=True,
                       help="intensity; profile accepts a comma list for several curves")
        p.add_argument("--omega", type=float, help="drive frequency marker (default: resonance)")
        p.add_argument("--omega-min", type=float)
        p.add_argument("--omega-max", type=float)
        p.add_argument("--points", type=int, default=1001)

    p = sub.add_parser("validate", help="RWA and selectivity report for a target transition")
    common(p)
    p.add_argument("--target", type=_pair, required=True)
    p.add_argument("--f0", type=float, help="default: the maximum clean intensity")
    p.add_argument("--omega", type=float, help="default: target resonance")
    limits(p)

    p = sub.add_parser("pathway", help="fastest clean transfer route between two levels")
    common(p)
    p.add_argument("--source", required=True)
    p.add_argument("--dest", required=True)
    limits(p)

    p = sub.add_parser("figures", help="regenerate all regime datasets")
    common(p, system=False)
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    return parser


def _config(args) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "system", "out", "format")}
    return RunConfig(args.command, getattr(args, "system", None), args.out, tuple(args.format), params)


def _grid(args, profiles):
    lo = args.omega_min
    hi = args.omega_max
    if lo is None:
        lo = max(0.0, min(p.center - 6 * p.halfwidth for p in profiles))
    if hi is None:
        hi = max(p.center + 6 * p.halfwidth for p in profiles)
    if args.points < 1:
        raise ConfigError("--points must be >= 1")
    if args.points == 1:
        return np.array([lo])
    return np.linspace(lo, hi, args.points)


def cmd_simulate(cfg: RunConfig, args) -> list[Path]:
    system = load_system(cfg.system_path)
    target = tuple(system.index(x) for x in args.target) if args.target else None
    omega = args.omega
    if omega is None:
        if target is None:
            raise ConfigError("--omega is required unless --target is given")
        omega = system.omega_ij(*target)
    initial = system.index(args.initial) if args.initial is not None else 0
    if args.t_end < 0:
        raise ConfigError("--t-end must be >= 0")
    if args.samples < 2:
        raise ConfigError("--samples must be >= 2")
    spec = RunSpec(
        args.name,
        system_to_dict(system),
        args.f0,
        omega,
        initial,
        args.t_end,
        args.samples,
        target,
        {"rel_tol": args.rel_tol, "abs_tol": args.abs_tol, "norm_tolerance": args.norm_tol},
    )
    cfg.out.mkdir(parents=True, exist_ok=True)
    if args.t_end == 0:
        # nothing to integrate: header-only trace
        meta = {"name": args.name, "t_end": 0.0, "samples": 0, "drive": {"f0": args.f0, "omega": omega}}
        files = [write_json(cfg.out / f"{args.name}.meta.json", meta)]
        if "csv" in cfg.formats:
            files.append(write_trace(cfg.out / f"{args.name}.csv", None, system.n_levels))
        return files
    trace, meta = run(spec)
    return write_run(cfg.out, spec, trace, meta, cfg.formats)


def cmd_profile(cfg: RunConfig, args) -> list[Path]:
    system = load_system(cfg.system_path)
    a, b = (system.index(x) for x in args.target)
    profiles = [RabiProfile.of(system, f0, a, b) for f0 in args.f0]
    w = _grid(args, profiles)
    cols = {f"P_f0={f0:g}": profile_height(p, w) for f0, p in zip(args.f0, profiles)}
    return _write_curves(cfg, "profile", w, cols, [args.omega] if args.omega else [],
                         {"profiles": [{"f0": f0, "center": p.center, "halfwidth": p.halfwidth}
                                       for f0, p in zip(args.f0, profiles)]})


def cmd_spectrum(cfg: RunConfig, args) -> list[Path]:
    system = load_system(cfg.system_path)
    if len(args.f0) != 1:
        raise ConfigError("spectrum takes a single --f0")
    spec = rabi_spectrum(system, args.f0[0], args.target)
    drive = args.omega if args.omega is not None else spec.target_profile.center
    w = _grid(args, spec.profiles)
    lab = system.labels
    cols = {f"P_{lab[p.source[0]]}-{lab[p.source[1]]}": profile_height(p, w) for p in spec.profiles}
    doc = {
        "target": [lab[spec.target[0]], lab[spec.target[1]]],
        "f0": spec.f0,
        "drive_omega": drive,
        "profiles": [
            {"transition": [lab[p.source[0]], lab[p.source[1]]], "center": p.center,
             "halfwidth": p.halfwidth, "height_at_drive": profile_height(p, drive)}
            for p in spec.profiles
        ],
    }
    return _write_curves(cfg, "spectrum", w, cols, [drive], doc)


def _write_curves(cfg, stem, w, cols, vlines, doc):
    cfg.out.mkdir(parents=True, exist_ok=True)
    files = []
    if "csv" in cfg.formats:
        files.append(write_curves(cfg.out / f"{stem}.csv", "omega", w, cols))
    if "json" in cfg.formats:
        files.append(write_json(cfg.out / f"{stem}.json", doc))
    if "svg" in cfg.formats:
        files.append(line_plot(cfg.out / f"{stem}.svg", w, cols, title=stem, xlabel="omega",
                               ylabel="P", vlines=vlines))
    return files


def _table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def cmd_validate(cfg: RunConfig, args) -> list[Path]:
    system = load_system(cfg.system_path)
    lab = system.labels
    f0_max = max_clean_intensity(system, args.target, args.eps_leak, args.theta_rwa)
    f0 = args.f0 if args.f0 is not None else f0_max
    if not f0 > 0:
        raise ConfigError("no positive clean intensity exists; pass --f0 explicitly")
    report = validity_report(system, f0, args.target, args.omega, args.eps_leak)
    doc = report.to_dict(lab)
    doc["max_clean_intensity"] = f0_max
    doc["min_transfer_time"] = min_transfer_time(system, args.target, args.eps_leak, args.theta_rwa)
    doc["theta_rwa"] = args.theta_rwa
    doc["constraints"] = [
        {"kind": c.kind, "transition": f"{lab[c.transition[0]]}-{lab[c.transition[1]]}", "bound": c.bound,
         "artifact_addition": c.kind == "spectator_rwa"}
        for c in intensity_constraints(system, args.target, args.eps_leak, args.theta_rwa)
    ]
    rows = [
        ("target", doc["target"]),
        ("f0", f"{f0:.6g}"),
        ("drive omega", f"{report.drive_omega:.6g}"),
        ("gamma at resonance", f"{report.gamma_at_resonance:.6g}"),
        ("|D|/omega", f"{report.rwa_ratio:.6g}"),
        ("regime", report.regime.value),
    ]
    rows += [(f"leakage {n['transition']}", f"{n['leakage']:.6g}") for n in doc["spectator_leakage"]]
    rows += [
        ("worst leakage", f"{report.worst_leakage:.6g}"),
        ("selective", "yes" if report.selective else "no"),
        ("max clean f0", f"{f0_max:.6g}"),
        ("min transfer time", f"{doc['min_transfer_time']:.6g}"),
    ]
    return _write_report(cfg, "validate", doc, _table(rows))


def cmd_pathway(cfg: RunConfig, args) -> list[Path]:
    system = load_system(cfg.system_path)
    result = fastest_path(system, args.source, args.dest, args.eps_leak, args.theta_rwa)
    if result is None:
        doc = {"route": None, "steps": [], "total_time": math.inf}
        text = f"no clean route from {args.source} to {args.dest}\n"
    else:
        doc = result.to_dict(system.labels)
        rows = [("route", " -> ".join(doc["route"]))]
        for s in doc["steps"]:
            rows.append((f"hop {s['transition'][0]}->{s['transition'][1]}",
                         f"f0={s['f0']:.6g} omega={s['drive_omega']:.6g} T={s['transfer_time']:.6g}"))
        rows.append(("total time", f"{doc['total_time']:.6g}"))
        text = _table(rows)
    doc["eps_leak"] = args.eps_leak
    doc["theta_rwa"] = args.theta_rwa
    return _write_report(cfg, "pathway", doc, text)


def _write_report(cfg, stem, doc, text):
    cfg.out.mkdir(parents=True, exist_ok=True)
    sys.stdout.write(text)
    files = [write_json(cfg.out / f"{stem}.json", doc)]
    (cfg.out / f"{stem}.txt").write_text(text)
    files.append(cfg.out / f"{stem}.txt")
    return files


def cmd_figures(cfg: RunConfig, args) -> list[Path]:
    write_figures(cfg.out, args.jobs, cfg.formats)
    return sorted(cfg.out.iterdir())


COMMANDS = {
    "simulate": cmd_simulate,
    "profile": cmd_profile,
    "spectrum": cmd_spectrum,
    "validate": cmd_validate,
    "pathway": cmd_pathway,
    "figures": cmd_figures,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"rabispec: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"rabispec: numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
