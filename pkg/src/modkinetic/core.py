"""Grids, complex fields, potentials, and the gradient-corrected inner product.

This module is the substrate for every solver in the package.  The model
family replaces the plain L2 metric by a Sobolev-style inner product

    <psi, phi> = integral( conj(psi) phi + a grad(conj(psi)) . grad(phi) ) dx

whose density  rho = |psi|^2 + a |grad psi|^2  stays strictly positive at
nodes of psi.  Units: hbar = 1 throughout.

One discretization rule holds everywhere: the second-order central stencil
defines the discrete Laplacian, and the canonical norm is the matrix form
h * psi^dag (I - a D2) psi.  The quadrature view of the norm (forward
differences on links, ghost zeros beyond Dirichlet walls) is algebraically
identical, so eigensolver, propagator, and diagnostics all agree about what
"norm" means to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GridMismatchError, NegativeCouplingError, ZeroNormError


class Boundary(Enum):
    DIRICHLET = "DIRICHLET"
    PERIODIC = "PERIODIC"


class Variant(Enum):
    """Which modified kinetic term is active.

    STANDARD is the a = 0 Schroedinger limit.  GRADIENT couples a scalar
    potential V outside the gradient term; GAUGE threads the potential
    through the covariant time derivative, which makes the stationary
    problem depend on V inside the kinetic operator and produces pass bands.
    """

    STANDARD = "STANDARD"
    GRADIENT = "GRADIENT"
    GAUGE = "GAUGE"


# Wall values larger than this (relative to the field's peak) violate the
# Dirichlet boundary condition where one is required (e.g. by the propagator).
WALL_RTOL = 1e-9


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D lattice carrying all fields.

    For PERIODIC boundaries the n stored points tile one period of length
    n*h (the wrap step from the last point back to the first is also h), so
    quadrature over a period is the plain Riemann sum h * sum(values).
    """

    x_min: float
    x_max: float
    n: int
    boundary: Boundary = Boundary.DIRICHLET

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"grid needs n >= 3 points, got {self.n}")
        if not self.x_max > self.x_min:
            raise ValueError("grid needs x_max > x_min")
        if not isinstance(self.boundary, Boundary):
            raise ValueError(f"unknown boundary {self.boundary!r}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def length(self) -> float:
        """Integration domain length: the period n*h when periodic."""
        if self.boundary is Boundary.PERIODIC:
            return self.n * self.h
        return self.x_max - self.x_min

    def lattice_wavenumber(self, j: int) -> float:
        """j-th wavenumber commensurate with the periodic wrap."""
        if self.boundary is not Boundary.PERIODIC:
            raise ValueError("lattice wavenumbers are defined for periodic grids")
        return 2.0 * np.pi * j / (self.n * self.h)


@dataclass(frozen=True)
class ModelParams:
    """Mass, kinetic coupling, and the active Lagrangian variant.

    a >= 0 is required: the corrected norm is positive definite only then.
    STANDARD is by definition a = 0.
    """

    m: float
    a: float = 0.0
    variant: Variant = Variant.GRADIENT

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.a < 0:
            raise NegativeCouplingError(
                f"coupling a must be >= 0 for a positive norm, got {self.a}"
            )
        if not isinstance(self.variant, Variant):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant is Variant.STANDARD and self.a != 0.0:
            raise ValueError("STANDARD variant is defined by a = 0")


class PotentialKind(Enum):
    CONSTANT = "CONSTANT"
    HARMONIC = "HARMONIC"
    PIECEWISE = "PIECEWISE"
    SAMPLED = "SAMPLED"


@dataclass(frozen=True)
class Potential:
    """Scalar potential V(x); for the GAUGE variant this is the A0 coupling.

    PIECEWISE segments are (x_left, x_right, value) tuples, left-closed and
    right-open, contiguous and non-overlapping; the outermost bounds may be
    -inf/+inf for scattering structures.  SAMPLED stores node values and is
    only meaningful on a grid of matching size.
    """

    kind: PotentialKind
    v0: float = 0.0
    spring: float = 0.0
    center: float = 0.0
    segments: tuple[tuple[float, float, float], ...] = ()
    values: tuple[float, ...] = ()

    @classmethod
    def constant(cls, v0: float) -> "Potential":
        return cls(kind=PotentialKind.CONSTANT, v0=float(v0))

    @classmethod
    def harmonic(cls, spring: float, center: float = 0.0) -> "Potential":
        if spring < 0:
            raise ValueError("harmonic spring constant must be >= 0")
        return cls(kind=PotentialKind.HARMONIC, spring=float(spring), center=float(center))

    @classmethod
    def piecewise(cls, segments) -> "Potential":
        segs = tuple((float(a), float(b), float(v)) for a, b, v in segments)
        if not segs:
            raise ValueError("piecewise potential needs at least one segment")
        for xl, xr, _ in segs:
            if not xl < xr:
                raise ValueError(f"empty or inverted segment ({xl}, {xr})")
        for (_, xr, _), (xl2, _, _) in zip(segs, segs[1:]):
            if xr != xl2:
                raise ValueError(
                    f"segments must tile without gap or overlap: {xr} != {xl2}"
                )
        return cls(kind=PotentialKind.PIECEWISE, segments=segs)

    @classmethod
    def sampled(cls, values) -> "Potential":
        return cls(kind=PotentialKind.SAMPLED, values=tuple(float(v) for v in values))

    def callables(self, grid: Grid1D | None = None):
        """(V, dV/dx) as functions of position, consistent with each other.

        SAMPLED potentials are interpolated with one cubic spline on `grid`,
        so the returned derivative is exactly the derivative of the returned
        value; that consistency is what lets the semiclassical transport
        integration hit its tight agreement contract.  Piecewise-constant
        gradients are zero between jumps (the jumps are not sampled).
        """
        if self.kind is PotentialKind.CONSTANT:
            return (
                lambda x: np.full_like(np.asarray(x, dtype=float), self.v0),
                lambda x: np.zeros_like(np.asarray(x, dtype=float)),
            )
        if self.kind is PotentialKind.HARMONIC:
            return (
                lambda x: 0.5 * self.spring * (np.asarray(x, dtype=float) - self.center) ** 2,
                lambda x: self.spring * (np.asarray(x, dtype=float) - self.center),
            )
        if self.kind is PotentialKind.PIECEWISE:
            edges = np.array([s[0] for s in self.segments[1:]])
            vals = np.array([s[2] for s in self.segments])

            def step_value(x):
                idx = np.searchsorted(edges, np.asarray(x, dtype=float), side="right")
                return vals[idx]

            return step_value, lambda x: np.zeros_like(np.asarray(x, dtype=float))
        if grid is None:
            raise ValueError("sampled potential needs a grid for evaluation")
        if len(self.values) != grid.n:
            raise ValueError(
                f"sampled potential has {len(self.values)} values, grid has {grid.n}"
            )
        from scipy.interpolate import CubicSpline

        spline = CubicSpline(grid.points, np.asarray(self.values))
        return spline, spline.derivative()

    def value_at(self, x, grid: Grid1D | None = None) -> np.ndarray:
        """Evaluate V at arbitrary coordinates (SAMPLED interpolates on `grid`)."""
        return np.asarray(self.callables(grid)[0](x), dtype=float)

    def gradient_at(self, x, grid: Grid1D | None = None) -> np.ndarray:
        """dV/dx; zero inside piecewise-constant segments (jumps are not sampled)."""
        return np.asarray(self.callables(grid)[1](x), dtype=float)

    def sample(self, grid: Grid1D) -> np.ndarray:
        if self.kind is PotentialKind.PIECEWISE:
            lo, hi = self.segments[0][0], self.segments[-1][1]
            eps = 1e-9 * grid.h
            if grid.x_min < lo - eps or grid.x_max > hi + eps:
                raise ValueError("piecewise segments do not cover the grid domain")
        if self.kind is PotentialKind.SAMPLED:
            if len(self.values) != grid.n:
                raise ValueError(
                    f"sampled potential has {len(self.values)} values, grid has {grid.n}"
                )
            return np.asarray(self.values, dtype=float)
        return self.value_at(grid.points, grid)

    def sample_midpoints(self, grid: Grid1D) -> np.ndarray:
        """V at link midpoints x_i + h/2 (periodic grids include the wrap link)."""
        x = grid.points
        if self.kind is PotentialKind.SAMPLED:
            v = self.sample(grid)
            mids = 0.5 * (v[:-1] + v[1:])
            if grid.boundary is Boundary.PERIODIC:
                return np.append(mids, 0.5 * (v[-1] + v[0]))
            return mids
        mid_x = x[:-1] + 0.5 * grid.h
        if grid.boundary is Boundary.PERIODIC:
            mid_x = np.append(mid_x, x[-1] + 0.5 * grid.h)
        if self.kind is PotentialKind.PIECEWISE:
            mid_x = np.clip(mid_x, self.segments[0][0], self.segments[-1][1])
        return self.value_at(mid_x, grid)

    def interfaces(self) -> tuple[float, ...]:
        """Interior discontinuity locations (empty for smooth kinds)."""
        if self.kind is PotentialKind.PIECEWISE:
            return tuple(s[0] for s in self.segments[1:])
        return ()


@dataclass(frozen=True)
class WaveFunction:
    """Complex field samples on a grid, optionally stamped with E or t.

    Vectors of the Dirichlet Hilbert space vanish at both walls; the solvers
    produce and preserve that.  Construction itself does not require it, so
    the type can also hold sampled traveling waves (semiclassical output,
    plane-wave diagnostics).  `satisfies_boundary` reports the distinction.
    """

    grid: Grid1D
    values: np.ndarray
    energy: float | None = None
    time: float | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.n,):
            raise ValueError(
                f"field has {vals.shape} values for a grid of {self.grid.n} points"
            )
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def satisfies_boundary(self) -> bool:
        if self.grid.boundary is Boundary.PERIODIC:
            return True
        peak = float(np.max(np.abs(self.values)))
        if peak == 0.0:
            return True
        return max(abs(self.values[0]), abs(self.values[-1])) <= WALL_RTOL * peak


@dataclass(frozen=True)
class DensityFields:
    """Pointwise densities and fluxes entering the local conservation laws."""

    rho: np.ndarray
    j: np.ndarray
    eps: np.ndarray
    j_eps: np.ndarray
    pi: np.ndarray
    stress: np.ndarray


def laplacian_values(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Second-order central stencil; ghost zeros at Dirichlet walls, wrap if periodic."""
    v = np.asarray(values)
    out = np.empty_like(v)
    h2 = grid.h ** 2
    out[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h2
    if grid.boundary is Boundary.PERIODIC:
        out[0] = (v[1] - 2.0 * v[0] + v[-1]) / h2
        out[-1] = (v[0] - 2.0 * v[-1] + v[-2]) / h2
    else:
        out[0] = (v[1] - 2.0 * v[0]) / h2
        out[-1] = (-2.0 * v[-1] + v[-2]) / h2
    return out


def gradient_values(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Centered first derivative; one-sided second-order rows at Dirichlet walls."""
    v = np.asarray(values)
    out = np.empty_like(v)
    h = grid.h
    out[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    if grid.boundary is Boundary.PERIODIC:
        out[0] = (v[1] - v[-1]) / (2.0 * h)
        out[-1] = (v[0] - v[-2]) / (2.0 * h)
    else:
        out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        out[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)
    return out


def laplacian(psi: WaveFunction) -> np.ndarray:
    """Discrete Laplacian of a field; exact on quadratics away from walls."""
    return laplacian_values(psi.values, psi.grid)


def integrate(values: np.ndarray, grid: Grid1D) -> float | complex:
    """Quadrature consistent with the canonical norm.

    Periodic: Riemann sum over one period.  Dirichlet: trapezoid rule (the
    half-weighted walls matter only for integrands that do not vanish there).
    """
    v = np.asarray(values)
    if grid.boundary is Boundary.PERIODIC:
        return v.sum() * grid.h
    return (v.sum() - 0.5 * (v[0] + v[-1])) * grid.h


def sobolev_inner(psi: WaveFunction, phi: WaveFunction, params: ModelParams) -> complex:
    """Gradient-corrected inner product, canonical matrix form h * psi^dag (I - a D2) phi.

    Evaluated through link (forward) differences, which is algebraically the
    same thing: Dirichlet ghost links contribute conj(v0) w0 and
    conj(v_last) w_last terms, which vanish for fields honoring the wall
    condition.  Conjugate-symmetric; reduces exactly to the L2 product at a = 0.
    """
    if psi.grid != phi.grid:
        raise GridMismatchError("fields live on different grids")
    g = psi.grid
    v, w = psi.values, phi.values
    base = np.vdot(v, w)
    if params.a == 0.0:
        return complex(base * g.h)
    if g.boundary is Boundary.PERIODIC:
        dv = np.roll(v, -1) - v
        dw = np.roll(w, -1) - w
        grad = np.vdot(dv, dw)
    else:
        grad = np.vdot(np.diff(v), np.diff(w))
        grad += np.conj(v[0]) * w[0] + np.conj(v[-1]) * w[-1]
    return complex((base + params.a * grad / g.h ** 2) * g.h)


def presence_density(psi: WaveFunction, params: ModelParams) -> np.ndarray:
    """Pointwise rho = |psi|^2 + a |grad psi|^2 (centered gradients).

    Strictly positive wherever psi and its discrete gradient do not vanish
    together, in particular at interior nodes of excited states and at
    Dirichlet walls.  Its trapezoid integral approximates the canonical norm
    to O(h^2); the norm itself is sobolev_inner(psi, psi).
    """
    amp2 = np.abs(psi.values) ** 2
    if params.a == 0.0:
        return amp2
    grad = gradient_values(psi.values, psi.grid)
    return amp2 + params.a * np.abs(grad) ** 2


def normalize(psi: WaveFunction, params: ModelParams) -> WaveFunction:
    """Scale so the corrected norm integral equals one."""
    norm2 = sobolev_inner(psi, psi, params).real
    if norm2 <= 0.0 or not np.isfinite(norm2):
        raise ZeroNormError("cannot normalize a field with vanishing norm")
    return WaveFunction(
        grid=psi.grid,
        values=psi.values / np.sqrt(norm2),
        energy=psi.energy,
        time=psi.time,
    )


def bra_map(psi: WaveFunction, params: ModelParams) -> np.ndarray:
    """Dual-vector map (1 - a lap) conj(psi).

    The plain pairing h * sum(bra * phi) then reproduces sobolev_inner for
    matching boundaries, by discrete summation by parts.
    """
    c = np.conj(psi.values)
    if params.a == 0.0:
        return c
    return c - params.a * laplacian_values(c, psi.grid)


def gaussian_packet(
    grid: Grid1D, x0: float, sigma: float, k0: float = 0.0
) -> WaveFunction:
    """Unnormalized Gaussian wave packet exp(-(x-x0)^2/(2 sigma^2) + i k0 x).

    On Dirichlet grids the wall samples are clamped to exactly zero; callers
    should keep several sigma of clearance so the clamp is negligible.
    """
    x = grid.points
    vals = np.exp(-((x - x0) ** 2) / (2.0 * sigma ** 2) + 1j * k0 * x)
    if grid.boundary is Boundary.DIRICHLET:
        vals[0] = 0.0
        vals[-1] = 0.0
    return WaveFunction(grid=grid, values=vals)
