"""Batch front end: `modkinetic <command> --config <file> --out <dir>`.

One command per invocation.  Every run writes `<command>.csv` plus a
`manifest.json` recording the config hash, library versions, and summary
scalars.  Outputs are deterministic for a given config and build: fixed row
ordering, floats printed with 17 significant digits (round-trip exact for
doubles), no timestamps.  There is no plotting here; the CSV columns are
plot-ready.

Exit codes: 0 success, 1 configuration error, 2 solver error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import scipy

from . import __version__, dirac, dynamics, eigensolver, scattering, spectra, wkb
from .config import COMMANDS, load_config_file, validate_config
from .core import (
    Grid1D,
    ModelParams,
    Variant,
    gaussian_packet,
    normalize,
    presence_density,
    sobolev_inner,
)
from .errors import ConfigError, ModkineticError


def _fmt(value) -> str:
    """17 significant digits: round-trip exact for IEEE doubles."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _config_hash(raw: dict) -> str:
    canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _write_manifest(out_dir: Path, command: str, raw: dict, outputs: list[str], summary: dict) -> None:
    manifest = {
        "command": command,
        "config_sha256": _config_hash(raw),
        "outputs": outputs,
        "summary": summary,
        "versions": {
            "modkinetic": __version__,
            "numpy": np.__version__,
            "python": ".".join(str(v) for v in sys.version_info[:3]),
            "scipy": scipy.__version__,
        },
    }
    text = json.dumps(manifest, indent=2, sort_keys=True)
    (out_dir / "manifest.json").write_text(text + "\n", encoding="utf-8", newline="\n")


def _sweep_map(fn, values, threads: int):
    """Ordered map over sweep points, optionally on a thread pool."""
    if threads <= 1 or len(values) < 2:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, values))


# ----------------------------------------------------------------- commands


def _run_spectrum(cfg, out_dir: Path, threads: int) -> dict:
    del threads
    count = cfg.options["count"]
    ops = eigensolver.build_operators(cfg.potential, cfg.grid, cfg.model)
    result = eigensolver.solve_spectrum(ops, count)

    analytic = _analytic_levels(cfg, count)
    rows = []
    for i, energy in enumerate(result.energies):
        ref = analytic[i] if analytic is not None else float("nan")
        rows.append((i, ref, energy, abs(energy - ref) if analytic is not None else float("nan")))
    _write_csv(out_dir / "spectrum.csv", ["n", "E_analytic", "E_numeric", "abs_diff"], rows)

    summary = {
        "energies": [float(e) for e in result.energies],
        "max_residual": float(result.residuals.max()),
        "levels_above_bound": int(result.above_bound.sum()),
    }
    if analytic is not None:
        rel = np.abs(result.energies - np.asarray(analytic)) / np.abs(analytic)
        summary["max_rel_diff_vs_analytic"] = float(rel.max())
    return summary


def _analytic_levels(cfg, count: int):
    """Closed-form reference levels where one exists, else None."""
    model, pot, grid = cfg.model, cfg.potential, cfg.grid
    if pot.kind.value == "HARMONIC" and model.variant is Variant.GRADIENT:
        return [spectra.ho_energy(n, model.m, pot.spring, model.a) for n in range(count)]
    if pot.kind.value == "CONSTANT" and pot.v0 == 0.0:
        # V = 0 in a Dirichlet box: both variants coincide with the well form
        L = grid.x_max - grid.x_min
        return [spectra.well_energy(n, model.m, L, model.a) for n in range(1, count + 1)]
    return None


def _run_density(cfg, out_dir: Path, threads: int) -> dict:
    del threads
    index = cfg.options["state_index"]
    a_values = cfg.options["a_values"]
    header = ["x"]
    columns = [cfg.grid.points]
    summary_norms = {}
    node_floor = {}
    for a in a_values:
        params = ModelParams(m=cfg.model.m, a=a, variant=cfg.model.variant)
        ops = eigensolver.build_operators(cfg.potential, cfg.grid, params)
        result = eigensolver.solve_spectrum(ops, index + 1)
        rho = eigensolver.stationary_density(result, index, params)
        state = normalize(result.states[index], params)
        label = repr(float(a))
        header.append(f"rho_a{label}")
        columns.append(rho)
        summary_norms[label] = float(sobolev_inner(state, state, params).real)
        node_floor[label] = _density_at_nodes(state.values.real, rho)
    rows = list(zip(*columns))
    _write_csv(out_dir / "density.csv", header, rows)
    return {
        "state_index": index,
        "normalization": "corrected norm integral = 1 per column",
        "corrected_norm_integral": summary_norms,
        "min_density_near_nodes": node_floor,
    }


def _density_at_nodes(psi_real: np.ndarray, rho: np.ndarray) -> float | None:
    """Smallest density at the genuine interior nodes of the state, if any.

    Sign flips in the exponentially small tails are round-off, not nodes, so
    the search is confined to where the state carries real amplitude.
    """
    peak = np.max(np.abs(psi_real))
    alive = np.where(np.abs(psi_real) > 1e-3 * peak)[0]
    if len(alive) < 2:
        return None
    lo, hi = alive[0], alive[-1]
    seg = psi_real[lo : hi + 1]
    flips = np.where(np.sign(seg[:-1]) * np.sign(seg[1:]) < 0)[0]
    if len(flips) == 0:
        return None
    vals = [min(rho[lo + i], rho[lo + i + 1]) for i in flips]
    return float(min(vals))


def _run_evolve(cfg, out_dir: Path, threads: int) -> dict:
    del threads
    opts = cfg.options
    psi0 = normalize(
        gaussian_packet(cfg.grid, x0=opts["x0"], sigma=opts["sigma"], k0=opts["k0"]),
        cfg.model,
    )
    traj = dynamics.evolve(
        psi0,
        cfg.potential,
        cfg.model,
        dt=opts["dt"],
        steps=opts["steps"],
        store_every=opts["store_every"],
    )
    rows = []
    x = cfg.grid.points
    for fi, frame in enumerate(traj.frames):
        rho = presence_density(frame, cfg.model)
        for i in range(cfg.grid.n):
            rows.append((fi, frame.time, x[i], frame.values[i].real, frame.values[i].imag, rho[i]))
    _write_csv(out_dir / "evolve.csv", ["frame", "t", "x", "re_psi", "im_psi", "rho"], rows)
    sob = traj.sobolev_norms
    l2 = traj.l2_norms
    return {
        "frames": len(traj.frames),
        "steps": opts["steps"],
        "corrected_norm_drift": float(np.max(np.abs(sob - sob[0])) / sob[0]),
        "l2_norm_change": float(np.max(np.abs(l2 - l2[0])) / l2[0]),
    }


def _run_scatter(cfg, out_dir: Path, threads: int) -> dict:
    energies = cfg.options["energies"]
    incidence = cfg.options["incidence"]
    segments = cfg.potential.segments

    def one(E):
        res = scattering.scatter(E, cfg.potential, cfg.model, incidence=incidence)
        ks = [scattering.local_wavenumber(E, v, cfg.model) for _, _, v in segments]
        return res, ks

    results = _sweep_map(one, energies, threads)
    header = ["E", "R", "T"]
    for i in range(len(segments)):
        header += [f"re_k{i}", f"im_k{i}"]
    rows = []
    defect = 0.0
    for E, (res, ks) in zip(energies, results):
        row = [E, res.R, res.T]
        for k in ks:
            row += [k.real, k.imag]
        rows.append(tuple(row))
        if res.T > 0.0:
            defect = max(defect, abs(res.R + res.T - 1.0))
    _write_csv(out_dir / "scatter.csv", header, rows)
    Ts = [res.T for res, _ in results]
    return {
        "incidence": incidence,
        "max_T": float(max(Ts)),
        "min_T": float(min(Ts)),
        "max_unitarity_defect": float(defect),
    }


def _run_wkb(cfg, out_dir: Path, threads: int) -> dict:
    del threads
    E = cfg.options["energy"]
    sol = wkb.solve(
        E, cfg.potential, cfg.grid, cfg.model, threshold=cfg.options["validity_threshold"]
    )
    wave = wkb.wkb_wavefunction(
        E, cfg.potential, cfg.grid, cfg.model, reference_point=cfg.options["reference_point"]
    )
    rows = list(
        zip(
            cfg.grid.points,
            sol.k_of_x,
            sol.A_of_x,
            sol.validity,
            wave.values.real,
            wave.values.imag,
        )
    )
    _write_csv(out_dir / "wkb.csv", ["x", "k", "A", "validity", "re_psi", "im_psi"], rows)
    return {
        "energy": E,
        "max_validity": float(np.max(sol.validity)),
        "danger_zones": [[float(a), float(b)] for a, b in sol.danger_zones],
    }


def _run_dispersion(cfg, out_dir: Path, threads: int) -> dict:
    del threads
    ks = np.asarray(cfg.options["k_values"])
    omega, v_p, v_g = spectra.dispersion(ks, cfg.model)
    momentum = spectra.plane_wave_momentum(ks, cfg.model)
    rows = list(zip(ks, omega, v_p, v_g, momentum))
    _write_csv(
        out_dir / "dispersion.csv", ["k", "omega", "v_phase", "v_group", "momentum"], rows
    )
    summary = {}
    if cfg.model.a > 0:
        k_p, v_p_max = spectra.limiting_phase_velocity(cfg.model)
        k_g, v_g_max = spectra.limiting_group_velocity(cfg.model)
        summary = {
            "phase_velocity_max": {"k": k_p, "value": v_p_max},
            "group_velocity_max": {"k": k_g, "value": v_g_max},
        }
    return summary


def _run_klein(cfg, out_dir: Path, threads: int) -> dict:
    m = cfg.options["m"]
    E = cfg.options["energy"]
    branches = [dirac.Branch(b) for b in cfg.options["branches"]]
    v0s = cfg.options["v0_values"]

    rows = []
    plateau = {}
    for branch in branches:
        results = _sweep_map(lambda v0: dirac.klein_step(E, v0, m, branch), v0s, threads)
        for v0, res in zip(v0s, results):
            rows.append((v0, branch.value, res.regime.value, res.R, res.T))
        ts = [r.T for r in results]
        plateau[branch.value] = {"min_T": float(min(ts)), "max_T": float(max(ts))}
    _write_csv(out_dir / "klein.csv", ["V0", "branch", "regime", "R", "T"], rows)
    return {"m": m, "energy": E, "transmission_range": plateau}


def _run_dirac_compare(cfg, out_dir: Path, threads: int) -> dict:
    del threads
    m = cfg.options["m"]
    ks = cfg.options["k_values"]
    rows = []
    for k in ks:
        exact = dirac.exact_free_density(k, m)
        reduced = 1.0 + k * k / (4.0 * m * m)
        spec_row = dirac.dirac_vs_modified_spectrum([k], m)[0]
        rows.append(
            (
                k,
                exact,
                reduced,
                reduced - exact,
                spec_row.dirac,
                spec_row.modified,
                spec_row.rel_diff,
            )
        )
    _write_csv(
        out_dir / "dirac-compare.csv",
        [
            "k",
            "density_exact",
            "density_reduced",
            "density_diff",
            "ekin_dirac",
            "ekin_modified",
            "ekin_rel_diff",
        ],
        rows,
    )

    ks_arr = np.asarray(ks, dtype=float)
    summary = {}
    if len(ks) >= 3 and np.all(ks_arr > 0):
        dens_diff = np.array([row[3] for row in rows], dtype=float)
        rel = np.array([row[6] for row in rows], dtype=float)
        if np.all(dens_diff > 0) and np.all(rel > 0):
            summary["density_diff_loglog_slope"] = float(
                np.polyfit(np.log(ks_arr), np.log(dens_diff), 1)[0]
            )
            summary["dispersion_rel_diff_loglog_slope"] = float(
                np.polyfit(np.log(ks_arr), np.log(rel), 1)[0]
            )
    return summary


_RUNNERS = {
    "spectrum": _run_spectrum,
    "density": _run_density,
    "evolve": _run_evolve,
    "scatter": _run_scatter,
    "wkb": _run_wkb,
    "dispersion": _run_dispersion,
    "klein": _run_klein,
    "dirac-compare": _run_dirac_compare,
}


def run(config_path, out_dir, command: str | None = None, threads: int = 1) -> int:
    """Execute one configured command; returns the process exit code."""
    try:
        cfg = load_config_file(config_path)
        if command is not None and cfg.command != command:
            raise ConfigError(
                [f"command: config file says '{cfg.command}', invoked as '{command}'"]
            )
    except ConfigError as exc:
        for violation in exc.violations:
            print(f"config error: {violation}", file=sys.stderr)
        return 1

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        summary = _RUNNERS[cfg.command](cfg, out, threads)
    except ModkineticError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    _write_manifest(out, cfg.command, cfg.raw, [f"{cfg.command}.csv"], summary)
    return 0


def validate(config_path) -> int:
    """Schema-check a config file; list violations, no side effects."""
    try:
        with open(config_path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: (file): {exc}", file=sys.stderr)
        return 1
    violations = validate_config(doc)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return 1
    print("configuration is valid")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="modkinetic",
        description="Batch solvers for 1-D quantum models with modified kinetic terms.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} command")
        p.add_argument("--config", required=True, help="path to the JSON configuration")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")

    pv = sub.add_parser("validate", help="schema-check a configuration file")
    pv.add_argument("--config", required=True, help="path to the JSON configuration")

    args = parser.parse_args(argv)
    if args.subcommand == "validate":
        return validate(args.config)
    return run(args.config, args.out, command=args.subcommand, threads=args.threads)


if __name__ == "__main__":
    sys.exit(main())
