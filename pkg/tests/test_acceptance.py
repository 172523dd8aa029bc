"""Acceptance suite: one test per release criterion, tolerances pinned.

Every test prints a single `[acceptance] criterion N: PASS/FAIL` line; run
with `pytest tests/test_acceptance.py -v -s` to see them live.
"""

import hashlib
import json
import time
from pathlib import Path

import numpy as np
import pytest

import modkinetic as mk
from modkinetic import cli
from modkinetic.dirac import Branch, Regime

GRAD = mk.Variant.GRADIENT
GAUGE = mk.Variant.GAUGE
INF = np.inf
CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def report(number, name, checks):
    ok = all(checks.values())
    detail = "; ".join(f"{key}={'ok' if val else 'FAIL'}" for key, val in checks.items())
    print(f"[acceptance] criterion {number} ({name}): {'PASS' if ok else 'FAIL'} [{detail}]")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_01_oscillator_spectrum():
    start = time.perf_counter()
    params = mk.ModelParams(m=1.0, a=0.1, variant=GRAD)
    pot = mk.Potential.harmonic(1.0)
    exact = np.array([mk.ho_energy(n, 1.0, 1.0, 0.1) for n in range(6)])

    errors = {}
    for n in (2000, 3999):  # 3999 halves the spacing of the n=2000 grid
        grid = mk.Grid1D(-10.0, 10.0, n)
        result = mk.solve_spectrum(mk.build_operators(pot, grid, params), 6)
        errors[n] = np.abs(result.energies - exact) / exact
    elapsed = time.perf_counter() - start
    ratios = errors[2000] / errors[3999]

    report(
        1,
        "oscillator spectrum",
        {
            "frozen E0": abs(exact[0] - 0.4756246098625196) < 1e-10,
            "frozen E5": abs(exact[5] - 3.2519917157823297) < 1e-10,
            "rel err < 1e-3": bool(np.max(errors[2000]) < 1e-3),
            "refinement x4 +/- 20%": bool(np.all(ratios > 3.2) and np.all(ratios < 4.8)),
            "runtime < 5 s": elapsed < 5.0,
        },
    )


def test_criterion_02_infinite_well():
    params = mk.ModelParams(m=1.0, a=0.5, variant=GRAD)
    pot = mk.Potential.constant(0.0)
    errs = []
    for n in (1001, 2001):
        grid = mk.Grid1D(0.0, 3.0, n)
        result = mk.solve_spectrum(mk.build_operators(pot, grid, params), 12)
        errs.append(abs(result.energies[0] - 0.3541350734315977))
    spacings = np.diff(result.energies)

    report(
        2,
        "infinite well",
        {
            "E1 -> 0.354135": errs[-1] < 1e-5,
            "converging": errs[1] < errs[0] / 3.0,
            "all below bound 1.0": bool(np.all(result.energies < 1.0)),
            "spacing shrinks with n": bool(np.all(np.diff(spacings) < 0)),
        },
    )


def test_criterion_03_spectral_bound():
    checks = {}
    cases = [
        ("oscillator", mk.Potential.harmonic(1.0), mk.Grid1D(-10.0, 10.0, 3001)),
        ("well", mk.Potential.constant(0.0), mk.Grid1D(0.0, 3.0, 3001)),
    ]
    for label, pot, grid in cases:
        for a in (0.1, 0.5):
            params = mk.ModelParams(m=1.0, a=a, variant=GRAD)
            bound = mk.spectral_bound(params)
            tops = []
            below = True
            for count in (4, 8, 16):
                result = mk.solve_spectrum(mk.build_operators(pot, grid, params), count)
                below = below and bool(np.all(result.energies < bound))
                tops.append(result.energies[-1])
            checks[f"{label} a={a} below bound"] = below
            checks[f"{label} a={a} monotone approach"] = bool(
                tops[0] < tops[1] < tops[2] < bound
            )
    report(3, "spectral bound", checks)


def test_criterion_04_norm_dichotomy():
    grid = mk.Grid1D(-12.0, 12.0, 1201)
    params = mk.ModelParams(m=1.0, a=0.1, variant=GRAD)
    psi0 = mk.normalize(mk.gaussian_packet(grid, x0=2.0, sigma=1.0), params)
    traj = mk.evolve(
        psi0, mk.Potential.harmonic(1.0), params, dt=0.005, steps=10_000, store_every=10_000
    )
    sob, l2 = traj.sobolev_norms, traj.l2_norms
    drift = float(np.max(np.abs(sob - sob[0])) / sob[0])
    change = float(np.max(np.abs(l2 - l2[0])) / l2[0])

    report(
        4,
        "norm dichotomy",
        {
            "corrected norm drift < 1e-8": drift < 1e-8,
            "plain |psi|^2 change > 1e-4": change > 1e-4,
        },
    )


def test_criterion_05_continuity_residual_orders():
    start = time.perf_counter()
    piecewise = mk.Potential.piecewise(
        [(-INF, 0.5, 0.0), (0.5, 1.5, 0.4), (1.5, INF, 0.0)]
    )
    cases = [
        (GRAD, mk.Potential.harmonic(0.5), 0.0),
        (GAUGE, mk.Potential.harmonic(0.5), 0.0),
        (GRAD, piecewise, 0.3),
        (GAUGE, piecewise, 0.3),
    ]
    checks = {}
    for variant, pot, margin in cases:
        params = mk.ModelParams(m=1.0, a=0.15, variant=variant)
        residuals = []
        for level in range(4):
            n = 200 * 2 ** level + 1
            grid = mk.Grid1D(-10.0, 10.0, n)
            psi0 = mk.normalize(
                mk.gaussian_packet(grid, x0=-2.0, sigma=1.5, k0=1.0), params
            )
            traj = mk.evolve(psi0, pot, params, dt=0.02 / 2 ** level, steps=10)
            residuals.append(mk.continuity_residuals(traj, margin=margin))
        residuals = np.array(residuals)  # levels x (charge, energy, momentum)
        levels = np.arange(4)
        for idx, law in enumerate(("charge", "energy", "momentum")):
            slope = -np.polyfit(levels, np.log2(residuals[:, idx]), 1)[0]
            label = f"{variant.value}/{pot.kind.value}/{law}"
            checks[label] = bool(1.8 <= slope <= 2.2)
    elapsed = time.perf_counter() - start
    checks["runtime < 60 s"] = elapsed < 60.0
    report(5, "continuity residual orders", checks)


def test_criterion_06_total_reflection():
    params = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
    blocked = mk.Potential.piecewise([(-INF, 0.0, 0.0), (0.0, INF, 1.5)])
    open_step = mk.Potential.piecewise([(-INF, 0.0, 0.0), (0.0, INF, 0.5)])

    worst_T = 0.0
    worst_defect = 0.0
    for E in np.linspace(0.01, 0.99, 40):  # lower band, incident from the left
        res = mk.scatter(E, blocked, params)
        worst_T = max(worst_T, res.T)
    for E in np.linspace(1.51, 2.49, 40):  # upper band, incident from the right
        res = mk.scatter(E, blocked, params, incidence="right")
        worst_T = max(worst_T, res.T)

    best_open = 0.0
    for E in np.linspace(0.52, 0.98, 30):
        res = mk.scatter(E, open_step, params)
        best_open = max(best_open, res.T)
        if res.T > 0:
            worst_defect = max(worst_defect, abs(res.R + res.T - 1.0))

    report(
        6,
        "total reflection",
        {
            "blocked step T < 1e-12": worst_T < 1e-12,
            "overlapping bands reach T > 0.5": best_open > 0.5,
            "unitarity 1e-10": worst_defect < 1e-10,
        },
    )


def test_criterion_07_dispersion_extrema_and_packet():
    from scipy.optimize import minimize_scalar

    params = mk.ModelParams(m=1.0, a=1.0, variant=GRAD)
    scan_p = minimize_scalar(
        lambda k: -mk.dispersion(k, params)[1],
        bounds=(0.05, 20.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    scan_g = minimize_scalar(
        lambda k: -mk.dispersion(k, params)[2],
        bounds=(0.05, 20.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    k_p, v_p = 1.0, 0.25  # 1/sqrt(a), 1/(4 m sqrt(a))
    k_g, v_g = 1.0 / np.sqrt(3.0), 3.0 * np.sqrt(3.0) / 16.0

    packet_params = mk.ModelParams(m=1.0, a=0.1, variant=GRAD)
    grid = mk.Grid1D(-80.0, 80.0, 4001)
    k0 = 1.2
    psi0 = mk.normalize(mk.gaussian_packet(grid, x0=-30.0, sigma=12.0, k0=k0), packet_params)
    traj = mk.evolve(
        psi0, mk.Potential.constant(0.0), packet_params, dt=0.02, steps=2000, store_every=250
    )
    cents, times = [], []
    for frame in traj.frames:
        rho = mk.presence_density(frame, packet_params)
        cents.append(float(np.sum(grid.points * rho) / np.sum(rho)))
        times.append(frame.time)
    v_fit = np.polyfit(times, cents, 1)[0]
    v_expect = mk.dispersion(k0, packet_params)[2]

    report(
        7,
        "dispersion extrema",
        {
            "phase max location 1e-6": abs(scan_p.x - k_p) < 1e-6 * k_p,
            "phase max value 1e-6": abs(-scan_p.fun - v_p) < 1e-6 * v_p,
            "group max location 1e-6": abs(scan_g.x - k_g) < 1e-6 * k_g,
            "group max value 1e-6": abs(-scan_g.fun - v_g) < 1e-6 * v_g,
            "packet centroid within 1%": abs(v_fit - v_expect) < 0.01 * v_expect,
        },
    )


def test_criterion_08_wkb():
    params = mk.ModelParams(m=1.0, a=0.5, variant=GAUGE)
    grid = mk.Grid1D(0.0, 8.0, 1601)
    ramp = mk.Potential.sampled(0.1 + 0.05 * grid.points)
    E = 0.9
    amp = mk.wkb_amplitude(E, ramp, grid, params)
    ref = mk.wkb_amplitude_closed_form(E, ramp, grid, params)
    amp_err = float(np.max(np.abs(amp - ref) / ref))

    k = mk.wkb_wavenumber(E, ramp, grid, params)
    metric = mk.wkb_validity(E, ramp, grid, params)
    h_errs = []
    for n in (401, 801, 1601):
        g2 = mk.Grid1D(0.0, 8.0, n)
        ramp2 = mk.Potential.sampled(0.1 + 0.05 * g2.points)
        k2 = mk.wkb_wavenumber(E, ramp2, g2, params)
        m2 = mk.wkb_validity(E, ramp2, g2, params)
        numeric = np.abs(np.gradient(k2, g2.h) / k2 ** 2)
        h_errs.append(np.max(np.abs(numeric[4:-4] - m2[4:-4])))
    orders = np.log2(np.array(h_errs[:-1]) / np.array(h_errs[1:]))

    # envelope comparison against the eigensolver on a shallow smooth well
    well_params = mk.ModelParams(m=1.0, a=0.2, variant=GAUGE)
    depth, width = 0.25, 12.0
    big = mk.Grid1D(-45.0, 45.0, 4501)
    shape = lambda x: -depth * np.exp(-((x / width) ** 2))
    result = mk.solve_spectrum(
        mk.build_operators(mk.Potential.sampled(shape(big.points)), big, well_params), 6
    )
    E_state = result.energies[5]
    eps = E_state - shape(big.points)
    slope_v = np.abs(2 * big.points / width ** 2 * depth * np.exp(-((big.points / width) ** 2)))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(
            eps > 0,
            slope_v / (np.sqrt(1.0) * (2 * eps) ** 1.5 * np.sqrt(1 - 0.4 * eps)),
            np.inf,
        )
    xs = big.points[val < 0.08]
    window = mk.Grid1D(float(xs.min()), float(xs.max()), 601)
    pot_win = mk.Potential.sampled(shape(window.points))
    k_win = mk.wkb_wavenumber(E_state, pot_win, window, well_params)
    amp_win = mk.wkb_amplitude(E_state, pot_win, window, well_params)
    psi = np.interp(window.points, big.points, result.states[5].values.real)
    envelope = np.sqrt(psi ** 2 + (np.gradient(psi, window.h) / k_win) ** 2)
    scale = float(np.median(envelope / amp_win))
    env_err = float(np.max(np.abs(envelope - scale * amp_win) / (scale * amp_win)))

    report(
        8,
        "wkb",
        {
            "amplitude ODE vs closed form 1e-8": amp_err < 1e-8,
            "validity metric O(h^2)": bool(np.all(orders > 1.8) and np.all(orders < 2.2)),
            "envelope vs eigensolver < 5%": env_err < 0.05,
        },
    )


def test_criterion_09_dirac_cross_checks():
    naive_bad = all(
        mk.klein_step(2.0, v0, 1.0, Branch.NAIVE).R > 1.0
        and mk.klein_step(2.0, v0, 1.0, Branch.NAIVE).T < 0.0
        for v0 in (3.5, 10.0, 50.0)
    )

    rng = np.random.default_rng(101)
    unitary = True
    for _ in range(200):
        m = rng.uniform(0.5, 2.0)
        E = m * rng.uniform(1.05, 8.0)
        v0 = rng.uniform(0.0, 25.0) * m
        res = mk.klein_step(E, v0, m, Branch.KLEIN_PAULI)
        if res.regime is not Regime.EVANESCENT:
            unitary = unitary and abs(res.R + res.T - 1.0) < 1e-12

    ts = [
        mk.klein_step(10.0, v0, 1.0, Branch.KLEIN_PAULI).T
        for v0 in np.geomspace(1e2, 1e6, 13)
    ]
    plateau = max(ts) - min(ts)

    ks = np.geomspace(0.01, 0.1, 12)
    dens_gap = np.array([1.0 + k * k / 4.0 - mk.exact_free_density(k, 1.0) for k in ks])
    slope_density = np.polyfit(np.log(ks), np.log(dens_gap), 1)[0]
    rel = np.array([r.rel_diff for r in mk.dirac_vs_modified_spectrum(ks, 1.0)])
    slope_dispersion = np.polyfit(np.log(ks), np.log(rel), 1)[0]

    report(
        9,
        "dirac cross-checks",
        {
            "naive supercritical R>1, T<0": naive_bad,
            "klein-pauli unitarity 1e-12": unitary,
            "plateau variation < 1e-3": plateau < 1e-3,
            "density slope 4.0 +/- 0.2": abs(slope_density - 4.0) < 0.2,
            "dispersion slope 4.0 +/- 0.2": abs(slope_dispersion - 4.0) < 0.2,
        },
    )


def test_criterion_10_figure_reproduction(tmp_path):
    checks = {}
    for name in ("figure1a", "figure1b", "figure2a", "figure2b"):
        cfg = CONFIG_DIR / f"{name}.json"
        digests = []
        for attempt in ("a", "b"):
            out = tmp_path / f"{name}_{attempt}"
            code = cli.main(["density", "--config", str(cfg), "--out", str(out)])
            digests.append(
                hashlib.sha256((out / "density.csv").read_bytes()).hexdigest()
            )
            assert code == 0
        checks[f"{name} deterministic"] = digests[0] == digests[1]

        manifest = json.loads((tmp_path / f"{name}_a" / "manifest.json").read_text())
        norms = manifest["summary"]["corrected_norm_integral"]
        checks[f"{name} norm = 1 within 1e-8"] = all(
            abs(v - 1.0) < 1e-8 for v in norms.values()
        )
        node_floor = manifest["summary"]["min_density_near_nodes"]
        for a_label, floor in node_floor.items():
            if float(a_label) > 0 and floor is not None:
                checks[f"{name} a={a_label} nodes positive"] = floor > 1e-6
    report(10, "figure reproduction", checks)
