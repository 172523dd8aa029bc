"""Relativistic cross-checks: reduced density and the step-potential paradox.

The corrected density is not an ansatz: eliminating the lower component of a
free Dirac spinor to first order in D_t/2m gives exactly
|phi|^2 + |grad phi|^2 / (4 m^2), i.e. the package's presence density with
a = 1/(4 m^2), and the gauge-variant dispersion at that coupling agrees with
the exact relativistic kinetic energy through O(k^4/m^4).  The step problem
is solved at the full Dirac level with both momentum-branch prescriptions:
the naive one reproduces the R > 1 pathology in the supercritical regime,
the Klein-Pauli one restores R + T = 1 with a finite transmission limit as
the step grows without bound.

1-D conventions: two-component spinors (phi, eta), gamma^0 = diag(1, -1),
sigma -> 1; there is no magnetic field in one dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .core import ModelParams, Variant, WaveFunction, presence_density


class Branch(Enum):
    NAIVE = "NAIVE"
    KLEIN_PAULI = "KLEIN_PAULI"


class Regime(Enum):
    SUBCRITICAL = "SUBCRITICAL"
    SUPERCRITICAL = "SUPERCRITICAL"
    EVANESCENT = "EVANESCENT"


@dataclass(frozen=True)
class Spinor1D:
    """Two-component plane-wave spinor data (upper phi, lower eta)."""

    phi: complex
    eta: complex
    m: float
    E: float


def free_spinor(k: float, m: float) -> Spinor1D:
    """Positive-energy free spinor (1, k/(E+m)) with E = sqrt(k^2 + m^2)."""
    E = float(np.sqrt(k * k + m * m))
    return Spinor1D(phi=1.0 + 0.0j, eta=complex(k / (E + m)), m=m, E=E)


@dataclass(frozen=True)
class KleinResult:
    """Flux-normalized step coefficients under a given branch prescription."""

    R: float
    T: float
    branch: Branch
    regime: Regime
    r: complex = 0.0
    t: complex = 0.0


def reduce_density(phi: WaveFunction, m: float) -> np.ndarray:
    """Density |phi|^2 + |grad phi|^2/(4 m^2) of the reduced two-component theory.

    Exactly presence_density with coupling a = 1/(4 m^2); reused, not
    re-derived.
    """
    params = ModelParams(m=m, a=1.0 / (4.0 * m * m), variant=Variant.GRADIENT)
    return presence_density(phi, params)


def exact_free_density(k: float, m: float) -> float:
    """Exact free-spinor density per unit |phi|^2: 1 + k^2/(E_kin + 2m)^2.

    E_kin = sqrt(k^2 + m^2) - m.  Strictly below the reduced approximation
    for k != 0; the gap closes as O(k^4/m^4).
    """
    e_kin = np.sqrt(k * k + m * m) - m
    return float(1.0 + k * k / (e_kin + 2.0 * m) ** 2)


def klein_step(E: float, V0: float, m: float, branch: Branch) -> KleinResult:
    """Plane-wave step problem for the 1-D Dirac equation.

    E includes the rest mass and must exceed m (propagating incidence).  For
    |E - V0| < m the far side is evanescent and the result is labeled total
    reflection.  In the supercritical regime E - V0 < -m the far side
    propagates again: the NAIVE branch keeps q > 0 and yields R > 1, T < 0;
    KLEIN_PAULI flips the sign of q so the transmitted current flows to the
    right, restoring 0 < T and R + T = 1.
    """
    if not E > m:
        raise ValueError(f"incident energy must exceed the rest mass, got E = {E}")
    if not isinstance(branch, Branch):
        raise ValueError(f"unknown branch {branch!r}")

    k = np.sqrt(E * E - m * m)
    kappa = k / (E + m)
    e_far = E - V0

    if abs(e_far) < m:
        q = 1j * np.sqrt(m * m - e_far * e_far)
        lam = q / (e_far + m)
        r = (kappa - lam) / (kappa + lam)
        return KleinResult(
            R=1.0, T=0.0, branch=branch, regime=Regime.EVANESCENT, r=complex(r), t=0.0
        )

    supercritical = e_far < -m
    regime = Regime.SUPERCRITICAL if supercritical else Regime.SUBCRITICAL
    q = np.sqrt(e_far * e_far - m * m)
    if branch is Branch.KLEIN_PAULI and supercritical:
        q = -q
    lam = q / (e_far + m)

    r = (kappa - lam) / (kappa + lam)
    t = 2.0 * kappa / (kappa + lam)
    R = float(abs(r) ** 2)
    T = float((lam / kappa) * abs(t) ** 2)
    return KleinResult(R=R, T=T, branch=branch, regime=regime, r=complex(r), t=complex(t))


class DiracComparisonRow(NamedTuple):
    k: float
    dirac: float
    modified: float
    rel_diff: float


def dirac_vs_modified_spectrum(k_list, m: float) -> list[DiracComparisonRow]:
    """Exact relativistic kinetic energy vs the gauge dispersion at a = 1/(4m^2).

    Rows of (k, sqrt(k^2+m^2) - m, (k^2/2m)/(1 + k^2/4m^2), relative
    difference); the relative difference scales as k^4/(16 m^4).
    """
    rows = []
    for k in np.asarray(k_list, dtype=float):
        if k / m > 0.3:
            raise ValueError(
                f"comparison meaningful only for k/m <= 0.3, got {k / m}"
            )
        dirac = float(np.sqrt(k * k + m * m) - m)
        modified = float((k * k / (2.0 * m)) / (1.0 + k * k / (4.0 * m * m)))
        rel = abs(dirac - modified) / dirac if dirac > 0 else 0.0
        rows.append(DiracComparisonRow(k=float(k), dirac=dirac, modified=modified, rel_diff=rel))
    return rows
