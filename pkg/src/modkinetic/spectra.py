"""Closed-form stationary results: effective mass, benchmark spectra, dispersion.

Everything here is analytic.  The numerical eigensolver reproduces these
values, which is the main cross-validation route of the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ModelParams, Variant
from .errors import SingularMassError, UnboundedSpectrumError

# Relative window around the band edge 1 - 2amE = 0 where the stationary
# equation degenerates and the effective mass is reported as singular.
BAND_EDGE_RTOL = 1e-12


@dataclass(frozen=True)
class SpectrumAnalytic:
    """Closed-form levels (n, E_n) plus the limiting energy, if one exists."""

    levels: tuple[tuple[int, float], ...]
    bound: float | None = None

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.levels])


def effective_mass(E: float, params: ModelParams) -> float:
    """Energy-dependent mass m / (1 - 2 a m E) of the gradient-coupled variant.

    Negative above the limiting energy 1/(2am), where bound states give way
    to a continuum that oscillates in classically forbidden regions.
    """
    if params.variant is Variant.GAUGE:
        raise ValueError("effective mass is defined for the GRADIENT variant")
    denom = 1.0 - 2.0 * params.a * params.m * E
    if abs(denom) < BAND_EDGE_RTOL:
        raise SingularMassError(f"effective mass singular at E = {E}")
    return params.m / denom


def ho_energy(n: int, m: float, spring: float, a: float) -> float:
    """Oscillator level n of the gradient-coupled model.

    Solves E = (n + 1/2) sqrt(spring (1 - 2 a m E) / m); the physical root is
    the one that reduces to the unmodified level at a = 0.  Monotone in n and
    bounded above by 1/(2am).
    """
    if n < 0:
        raise ValueError("oscillator index must be >= 0")
    eps = (n + 0.5) * np.sqrt(spring / m)
    x = eps * a * m
    # sqrt(1+x^2) - x, written without cancellation for large x
    return eps / (np.sqrt(1.0 + x * x) + x)


def well_energy(n: int, m: float, L: float, a: float) -> float:
    """Box level n (n >= 1) of the gradient-coupled model: eps_n / (1 + 2 a m eps_n)."""
    if n < 1:
        raise ValueError("well index must be >= 1")
    eps = n * n * np.pi ** 2 / (2.0 * m * L * L)
    return eps / (1.0 + 2.0 * a * m * eps)


def spectral_bound(params: ModelParams) -> float:
    """Limiting energy 1/(2am) that the discrete spectrum approaches from below."""
    if params.a == 0.0:
        raise UnboundedSpectrumError("spectrum is unbounded at a = 0")
    return 1.0 / (2.0 * params.a * params.m)


def oscillator_spectrum(count: int, m: float, spring: float, a: float) -> SpectrumAnalytic:
    levels = tuple((n, ho_energy(n, m, spring, a)) for n in range(count))
    bound = 1.0 / (2.0 * a * m) if a > 0 else None
    return SpectrumAnalytic(levels=levels, bound=bound)


def well_spectrum(count: int, m: float, L: float, a: float) -> SpectrumAnalytic:
    levels = tuple((n, well_energy(n, m, L, a)) for n in range(1, count + 1))
    bound = 1.0 / (2.0 * a * m) if a > 0 else None
    return SpectrumAnalytic(levels=levels, bound=bound)


def dispersion(k, params: ModelParams):
    """Free-particle dispersion: (omega, v_phase, v_group).

    omega (1 + a k^2) = k^2 / 2m.  For a > 0 both velocities peak at finite k
    (1/sqrt(a) and 1/sqrt(3a)) and fall to zero as k grows.
    """
    k = np.asarray(k, dtype=float)
    m, a = params.m, params.a
    denom = 1.0 + a * k * k
    omega = k * k / (2.0 * m * denom)
    with np.errstate(divide="ignore", invalid="ignore"):
        v_phase = np.where(k != 0.0, k / (2.0 * m * denom), 0.0)
    v_group = (k / m) / denom ** 2
    if omega.ndim == 0:
        return float(omega), float(v_phase), float(v_group)
    return omega, v_phase, v_group


def limiting_phase_velocity(params: ModelParams) -> tuple[float, float]:
    """(k, value) of the phase-velocity maximum: k = 1/sqrt(a), v = 1/(4 m sqrt(a))."""
    if params.a == 0.0:
        raise UnboundedSpectrumError("phase velocity is unbounded at a = 0")
    k = 1.0 / np.sqrt(params.a)
    return k, 1.0 / (4.0 * params.m * np.sqrt(params.a))


def limiting_group_velocity(params: ModelParams) -> tuple[float, float]:
    """(k, value) of the group-velocity maximum: k = 1/sqrt(3a), v = 3 sqrt(3)/(16 m sqrt(a))."""
    if params.a == 0.0:
        raise UnboundedSpectrumError("group velocity is unbounded at a = 0")
    k = 1.0 / np.sqrt(3.0 * params.a)
    return k, 3.0 * np.sqrt(3.0) / (16.0 * params.m * np.sqrt(params.a))


def plane_wave_momentum(k, params: ModelParams):
    """Canonical momentum k (1 + a k^2) carried by a plane wave; odd in k.

    The momentum density integral of the dynamics module evaluates to twice
    this value per unit |psi|^2: the density expressions carry a factor 2
    relative to the single-particle normalization, and are left as is.
    """
    k = np.asarray(k, dtype=float)
    out = k * (1.0 + params.a * k * k)
    return float(out) if out.ndim == 0 else out


def pass_band(V: float, params: ModelParams) -> tuple[float, float]:
    """Energy window [V, V + 1/(2ma)) admitting real-wavenumber propagation.

    Property of the GAUGE variant; outside the window there is no
    propagating wave at all, which is what segregates regions whose bands
    do not overlap.
    """
    if params.variant is not Variant.GAUGE:
        raise ValueError("pass bands are defined for the GAUGE variant")
    if params.a == 0.0:
        raise UnboundedSpectrumError("pass band is [V, inf) at a = 0")
    return V, V + 1.0 / (2.0 * params.m * params.a)
