"""Semiclassical approximation for slowly varying potentials (gauge variant).

Local wavenumber from the band relation k^2 = 2 m eps / (1 - 2 m a eps) with
eps(x) = E - V(x), amplitude transport from the first-gradient equation

    0 = (1 + aV)(k' A + 2 k A') + a k V' A,

whose exact solution is A proportional to [k (1 + aV)]^(-1/2), and the
validity metric |k'/k^2|, which diverges both at classical turning points
(eps -> 0) and at the band edge (eps -> 1/(2ma)).  No connection formulas
are attempted through either kind of danger zone: operations fail loudly or
flag instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_ivp

from .core import Grid1D, ModelParams, Potential, Variant, WaveFunction
from .errors import OutOfBandError

DEFAULT_VALIDITY_THRESHOLD = 0.1


@dataclass(frozen=True)
class WkbSolution:
    """Assembled semiclassical data on a grid."""

    k_of_x: np.ndarray
    A_of_x: np.ndarray
    phase: np.ndarray
    validity: np.ndarray
    danger_zones: tuple[tuple[float, float], ...]


def _band_margin(E: float, potential: Potential, grid: Grid1D, params: ModelParams):
    """eps(x) and the in-band mask 0 < eps < 1/(2ma)."""
    eps = E - potential.sample(grid)
    if params.a > 0:
        width = 1.0 / (2.0 * params.m * params.a)
        inside = (eps > 0.0) & (eps < width)
    else:
        inside = eps > 0.0
    return eps, inside


def _offending_intervals(grid: Grid1D, bad: np.ndarray) -> list[tuple[float, float]]:
    x = grid.points
    intervals = []
    start = None
    for i, flag in enumerate(bad):
        if flag and start is None:
            start = x[i]
        elif not flag and start is not None:
            intervals.append((start, x[i - 1]))
            start = None
    if start is not None:
        intervals.append((start, x[-1]))
    return intervals


def _require_in_band(E, potential, grid, params):
    if params.variant is not Variant.GAUGE:
        raise ValueError("the semiclassical expansion here is for the GAUGE variant")
    eps, inside = _band_margin(E, potential, grid, params)
    if not np.all(inside):
        intervals = _offending_intervals(grid, ~inside)
        raise OutOfBandError(
            f"E - V leaves the pass band on {intervals}", intervals=intervals
        )
    return eps


def wkb_wavenumber(
    E: float, potential: Potential, grid: Grid1D, params: ModelParams
) -> np.ndarray:
    """Pointwise k(x) = sqrt(2 m eps / (1 - 2 m a eps)) over the grid."""
    eps = _require_in_band(E, potential, grid, params)
    m, a = params.m, params.a
    return np.sqrt(2.0 * m * eps / (1.0 - 2.0 * m * a * eps))


def wkb_amplitude_closed_form(
    E: float, potential: Potential, grid: Grid1D, params: ModelParams
) -> np.ndarray:
    """Reference amplitude [k (1 + aV)]^(-1/2), which solves the transport
    equation exactly."""
    k = wkb_wavenumber(E, potential, grid, params)
    v = potential.sample(grid)
    return 1.0 / np.sqrt(k * (1.0 + params.a * v))


def wkb_amplitude(
    E: float, potential: Potential, grid: Grid1D, params: ModelParams
) -> np.ndarray:
    """Amplitude from direct integration of the first-gradient transport equation.

    Integrated with a high-order ODE solver from the left grid edge (anchored
    to the closed form there); agrees with wkb_amplitude_closed_form to
    better than 1e-8 relative on smooth in-band potentials.
    """
    eps = _require_in_band(E, potential, grid, params)
    del eps
    m, a = params.m, params.a
    v_of, vp_of = potential.callables(grid)

    def k_of(x: float) -> float:
        e = E - float(v_of(x))
        return np.sqrt(2.0 * m * e / (1.0 - 2.0 * m * a * e))

    def rhs(x, y):
        v = float(v_of(x))
        vp = float(vp_of(x))
        e = E - v
        k = k_of(x)
        kp = -vp * m / (k * (1.0 - 2.0 * m * a * e) ** 2)
        return [-y[0] * ((1.0 + a * v) * kp + a * k * vp) / (2.0 * k * (1.0 + a * v))]

    x = grid.points
    a0 = 1.0 / np.sqrt(k_of(x[0]) * (1.0 + a * float(v_of(x[0]))))
    sol = solve_ivp(
        rhs,
        (x[0], x[-1]),
        [a0],
        t_eval=x,
        method="DOP853",
        rtol=1e-12,
        atol=1e-14,
    )
    if not sol.success:
        raise OutOfBandError(f"amplitude integration failed: {sol.message}")
    return sol.y[0]


def wkb_validity(
    E: float, potential: Potential, grid: Grid1D, params: ModelParams
) -> np.ndarray:
    """Slow-variation metric |k'/k^2| in closed form.

    Equals |V'| / (m^(1/2) (2 eps)^(3/2) (1 - 2 m a eps)^(1/2)); +inf outside
    the band instead of raising, so the caller can see where trouble lives.
    """
    if params.variant is not Variant.GAUGE:
        raise ValueError("the semiclassical expansion here is for the GAUGE variant")
    eps, inside = _band_margin(E, potential, grid, params)
    vgrad = potential.gradient_at(grid.points, grid)
    out = np.full(grid.n, np.inf)
    e_in = eps[inside]
    denom = np.sqrt(params.m) * (2.0 * e_in) ** 1.5
    if params.a > 0:
        denom = denom * np.sqrt(1.0 - 2.0 * params.m * params.a * e_in)
    out[inside] = np.abs(vgrad[inside]) / denom
    return out


def danger_zones(
    validity: np.ndarray, grid: Grid1D, threshold: float = DEFAULT_VALIDITY_THRESHOLD
) -> tuple[tuple[float, float], ...]:
    """Intervals where the validity metric exceeds the threshold."""
    return tuple(_offending_intervals(grid, validity > threshold))


def wkb_wavefunction(
    E: float,
    potential: Potential,
    grid: Grid1D,
    params: ModelParams,
    reference_point: float,
) -> WaveFunction:
    """Assembled traveling wave A(x) exp(i phase(x)), phase zero at reference_point."""
    if not grid.x_min <= reference_point <= grid.x_max:
        raise ValueError("reference point outside the grid domain")
    k = wkb_wavenumber(E, potential, grid, params)
    amp = wkb_amplitude(E, potential, grid, params)
    phase = cumulative_trapezoid(k, grid.points, initial=0.0)
    phase = phase - np.interp(reference_point, grid.points, phase)
    return WaveFunction(grid=grid, values=amp * np.exp(1j * phase), energy=E)


def solve(
    E: float,
    potential: Potential,
    grid: Grid1D,
    params: ModelParams,
    threshold: float = DEFAULT_VALIDITY_THRESHOLD,
) -> WkbSolution:
    """One-call bundle of wavenumber, amplitude, phase, and validity data."""
    k = wkb_wavenumber(E, potential, grid, params)
    amp = wkb_amplitude(E, potential, grid, params)
    phase = cumulative_trapezoid(k, grid.points, initial=0.0)
    validity = wkb_validity(E, potential, grid, params)
    return WkbSolution(
        k_of_x=k,
        A_of_x=amp,
        phase=phase,
        validity=validity,
        danger_zones=danger_zones(validity, grid, threshold),
    )
