"""Stationary scattering on piecewise-constant potentials via transfer matrices.

Within a constant-V segment the stationary equation of either variant reads
mu psi'' = (V - E) psi with an effective stiffness

    GRADIENT: mu = 1/2m - a E          (same in every segment)
    GAUGE:    mu = 1/2m + a (V - E)

so k^2 = (E - V)/mu.  Interfaces enforce continuity of psi and of mu psi',
the flux form of the stationary equation; the conserved current of a plane
wave is proportional to mu k |amplitude|^2, which is what makes unitarity a
theorem of the matrix algebra here.  For the gauge variant real k exists only
in the pass band [V, V + 1/(2ma)); for the gradient variant above the
limiting energy, forbidden regions (V > E) oscillate with real k instead of
decaying, the negative-effective-mass signature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ModelParams, Potential, PotentialKind, Variant
from .errors import BandEdgeError, NoIncidentChannelError

# Dimensionless window around the band-edge degeneracy (mu -> 0 or k -> inf)
# inside which evaluation is refused rather than regularized.
BAND_EDGE_WINDOW = 1e-10


@dataclass(frozen=True)
class SegmentSolution:
    """Plane-wave data of one constant-V segment at energy E.

    k is the principal local wavenumber (real >= 0 when propagating,
    +i|k| when evanescent).  kappa is the signed channel exponent actually
    used in the transfer basis: the "forward" amplitude multiplies
    exp(+i kappa x) and carries rightward flux mu*kappa > 0 when propagating,
    or decays rightward when evanescent.
    """

    x_left: float
    x_right: float
    v: float
    k: complex
    mu: float
    kappa: complex
    forward: complex = 0.0
    backward: complex = 0.0

    @property
    def propagating(self) -> bool:
        return self.k.imag == 0.0 and self.k.real > 0.0

    @property
    def flux_factor(self) -> float:
        """mu * kappa for propagating segments, else 0 (no carried current)."""
        if not self.propagating:
            return 0.0
        return float(self.mu * self.kappa.real)


@dataclass(frozen=True)
class ScatterResult:
    """Amplitudes and flux-normalized coefficients of a scattering run."""

    r: complex
    t: complex
    R: float
    T: float


def local_wavenumber(E: float, V: float, params: ModelParams) -> complex:
    """Local wavenumber of a constant-V region.

    GAUGE: k^2 = 2m(E-V) / (1 - 2ma(E-V)); real k only inside the pass band.
    GRADIENT: k^2 = 2 m_eff(E) (E-V); for m_eff < 0 and V > E the result is
    real (oscillation in the forbidden region).  Returns +i|k| on the
    evanescent branch (decaying to the right).
    """
    m, a = params.m, params.a
    if params.variant is Variant.GAUGE:
        denom = 1.0 - 2.0 * m * a * (E - V)
        if abs(denom) < BAND_EDGE_WINDOW:
            raise BandEdgeError(f"band edge at E - V = {E - V}")
        k2 = 2.0 * m * (E - V) / denom
    else:
        denom = 1.0 - 2.0 * a * m * E
        if abs(denom) < BAND_EDGE_WINDOW:
            raise BandEdgeError(f"effective mass singular at E = {E}")
        k2 = 2.0 * (m / denom) * (E - V)
    if k2 >= 0.0:
        return complex(np.sqrt(k2))
    return 1j * np.sqrt(-k2)


def _stiffness(E: float, V: float, params: ModelParams) -> float:
    if params.variant is Variant.GAUGE:
        return 1.0 / (2.0 * params.m) + params.a * (V - E)
    return 1.0 / (2.0 * params.m) - params.a * E


def _segment(x_left: float, x_right: float, V: float, E: float, params: ModelParams) -> SegmentSolution:
    k = local_wavenumber(E, V, params)
    mu = _stiffness(E, V, params)
    if k.imag == 0.0:
        kappa = complex(np.copysign(k.real, mu))  # forward = positive flux
    else:
        kappa = k  # +i|k|: forward = rightward decay
    return SegmentSolution(
        x_left=x_left, x_right=x_right, v=V, k=k, mu=mu, kappa=kappa
    )


def transfer_step(E: float, left: SegmentSolution, right: SegmentSolution) -> np.ndarray:
    """2x2 map of (forward, backward) amplitudes across one interface.

    Enforces continuity of psi and of mu psi'.  Its determinant is the flux
    ratio mu_L kappa_L / (mu_R kappa_R), which is what conserves current
    under composition.
    """
    del E  # energy already baked into the segment data
    if right.kappa == 0 or left.kappa == 0:
        raise BandEdgeError("zero wavenumber at an interface")
    ratio = (left.mu * left.kappa) / (right.mu * right.kappa)
    return 0.5 * np.array(
        [[1.0 + ratio, 1.0 - ratio], [1.0 - ratio, 1.0 + ratio]], dtype=complex
    )


def _propagation(seg: SegmentSolution) -> np.ndarray:
    width = seg.x_right - seg.x_left
    phase = np.exp(1j * seg.kappa * width)
    return np.array([[phase, 0.0], [0.0, 1.0 / phase]], dtype=complex)


def scatter(
    E: float,
    potential: Potential,
    params: ModelParams,
    incidence: str = "left",
) -> ScatterResult:
    """Reflection and transmission through a piecewise-constant structure.

    The first and last segments must be semi-infinite.  Returns flux
    normalized R and T; when the outgoing side is evanescent the result is
    exact total reflection (R = 1, T = 0).  Raises NoIncidentChannelError if
    the incident side has no propagating wave at E (for the gauge variant,
    E outside its pass band).
    """
    if potential.kind is not PotentialKind.PIECEWISE:
        raise ValueError("scattering needs a piecewise-constant potential")
    segs = potential.segments
    if not (np.isneginf(segs[0][0]) and np.isposinf(segs[-1][1])):
        raise ValueError("first and last segments must be semi-infinite")
    if incidence not in ("left", "right"):
        raise ValueError("incidence must be 'left' or 'right'")
    if incidence == "right":
        segs = tuple((-xr, -xl, v) for xl, xr, v in reversed(segs))

    solutions = [_segment(xl, xr, v, E, params) for xl, xr, v in segs]
    first = solutions[0]
    if not first.propagating or first.flux_factor <= 0.0:
        raise NoIncidentChannelError(
            f"no propagating incident wave at E = {E} on the incident side"
        )

    # Beyond ~300 accumulated decay lengths the far side is unreachable at
    # double precision; truncate there so the growing exponentials of the
    # transfer matrices cannot overflow.  The truncated structure ends in an
    # evanescent segment, i.e. exact total reflection.
    attenuation = 0.0
    for idx, seg in enumerate(solutions[1:-1], start=1):
        attenuation += seg.kappa.imag * (seg.x_right - seg.x_left)
        if attenuation > 300.0:
            solutions = solutions[: idx + 1]
            break
    last = solutions[-1]

    M = np.eye(2, dtype=complex)
    det = complex(1.0)
    for prev, cur in zip(solutions, solutions[1:]):
        M = transfer_step(E, prev, cur) @ M
        det *= (prev.mu * prev.kappa) / (cur.mu * cur.kappa)  # interface determinant
        if cur is not last:
            M = _propagation(cur) @ M  # unit determinant

    if M[1, 1] == 0:
        raise BandEdgeError("degenerate transfer matrix")
    r = -M[1, 0] / M[1, 1]
    # t via the determinant avoids the catastrophic cancellation of
    # M00 + M01*r when interior segments are strongly evanescent.
    t = det / M[1, 1]

    if last.propagating:
        T = (last.flux_factor / first.flux_factor) * float(abs(t) ** 2)
        R = float(abs(r) ** 2)
    else:
        T = 0.0
        R = 1.0
    return ScatterResult(r=complex(r), t=complex(t), R=R, T=T)
