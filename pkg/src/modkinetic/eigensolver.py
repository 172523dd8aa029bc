"""Stationary states of the modified equations via the generalized eigenproblem.

The stationary problem for both variants is a symmetric-definite pencil
A psi = E B psi with tridiagonal A (energy units) and B = I - a D2 (positive
definite for a >= 0).  Eigenpairs are B-orthonormal in the corrected inner
product, which is what ties the numerics back to the Hilbert-space metric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .core import (
    Boundary,
    Grid1D,
    ModelParams,
    Potential,
    Variant,
    WaveFunction,
    normalize,
    presence_density,
)
from .errors import (
    ConvergenceFailureError,
    IndexRangeError,
    NegativeCouplingError,
    UnsupportedBoundaryError,
)
from .operators import assemble, embed

# Levels this close (relative) to the limiting energy 1/(2am) sit in the
# accumulation region of the spectrum and are flagged in the result.
NEAR_BOUND_RTOL = 1e-6

# Switch to a dense solve below this matrix dimension; ARPACK shift-invert
# needs k strictly less than the dimension and is overkill for tiny grids.
_DENSE_CUTOFF = 64


@dataclass(frozen=True)
class OperatorPair:
    """Assembled pencil (A, B) on the interior nodes of a Dirichlet grid."""

    a_matrix: sparse.csc_matrix
    b_matrix: sparse.csc_matrix
    grid: Grid1D
    params: ModelParams
    v_nodes: np.ndarray


@dataclass(frozen=True)
class EigenResult:
    """Ascending eigenpairs with residuals and band-edge diagnostics.

    States are B-orthonormal: sobolev_inner(psi_i, psi_j) = delta_ij within
    solver tolerance.  near_bound marks levels within NEAR_BOUND_RTOL of the
    limiting energy; above_bound marks levels the discrete pencil placed
    beyond it (reported, never suppressed).
    """

    energies: np.ndarray
    states: tuple[WaveFunction, ...]
    residuals: np.ndarray
    near_bound: np.ndarray
    above_bound: np.ndarray


def build_operators(
    potential: Potential, grid: Grid1D, params: ModelParams
) -> OperatorPair:
    """Assemble the stationary pencil for a Dirichlet grid.

    The infinite well is exactly this: Dirichlet walls with V = 0 inside,
    matching the closed-form spectrum.  Periodic assembly is reserved.
    """
    if grid.boundary is Boundary.PERIODIC:
        raise UnsupportedBoundaryError("periodic eigenproblems are not supported")
    if params.a < 0:
        raise NegativeCouplingError("a < 0 loses positive-definiteness of B")
    a_mat, b_mat, v_nodes = assemble(potential, grid, params)
    return OperatorPair(
        a_matrix=a_mat, b_matrix=b_mat, grid=grid, params=params, v_nodes=v_nodes
    )


def solve_spectrum(ops: OperatorPair, count: int) -> EigenResult:
    """Lowest `count` eigenpairs of A psi = E B psi.

    Shift-invert Lanczos with a deterministic start vector; dense fallback
    for small problems.  Residuals max|A psi - E B psi| are reported per pair.
    """
    A, B = ops.a_matrix, ops.b_matrix
    dim = A.shape[0]
    if not 1 <= count <= ops.grid.n - 2:
        raise IndexRangeError(f"count must be in [1, {ops.grid.n - 2}], got {count}")

    if count >= dim - 1 or dim < _DENSE_CUTOFF:
        vals, vecs = eigh(
            A.toarray(), B.toarray(), subset_by_index=[0, count - 1]
        )
    else:
        v_min = float(np.min(ops.v_nodes))
        sigma = v_min
        if ops.params.variant is not Variant.GAUGE and ops.params.a > 0:
            sigma = min(sigma, 1.0 / (2.0 * ops.params.a * ops.params.m))
        sigma -= 1.0 + 0.01 * abs(sigma)
        v0 = np.full(dim, 1.0 / np.sqrt(dim))
        try:
            vals, vecs = eigsh(A, k=count, M=B, sigma=sigma, which="LM", v0=v0, tol=0)
        except ArpackNoConvergence as exc:
            raise ConvergenceFailureError(
                f"eigensolver converged {len(exc.eigenvalues)} of {count} pairs",
                converged=len(exc.eigenvalues),
                requested=count,
            ) from exc

    order = np.argsort(vals)
    vals = vals[order]
    vecs = vecs[:, order]

    h = ops.grid.h
    states = []
    residuals = np.empty(count)
    for i in range(count):
        u = vecs[:, i]
        bu = B @ u
        u = u / np.sqrt(h * float(u @ bu))  # corrected-norm normalization
        anchor = np.argmax(np.abs(u))
        if u[anchor] < 0:
            u = -u
        residuals[i] = float(np.max(np.abs(A @ u - vals[i] * (B @ u))))
        states.append(
            WaveFunction(
                grid=ops.grid, values=embed(u.astype(complex), ops.grid), energy=vals[i]
            )
        )

    if ops.params.variant is not Variant.GAUGE and ops.params.a > 0:
        bound = 1.0 / (2.0 * ops.params.a * ops.params.m)
        near = np.abs(vals - bound) < NEAR_BOUND_RTOL * bound
        above = vals > bound
    else:
        near = np.zeros(count, dtype=bool)
        above = np.zeros(count, dtype=bool)

    return EigenResult(
        energies=vals,
        states=tuple(states),
        residuals=residuals,
        near_bound=near,
        above_bound=above,
    )


def stationary_density(result: EigenResult, index: int, params: ModelParams) -> np.ndarray:
    """Presence density of the selected eigenstate, normalized to unit mass."""
    if not 0 <= index < len(result.states):
        raise IndexRangeError(
            f"state index {index} outside computed range 0..{len(result.states) - 1}"
        )
    psi = normalize(result.states[index], params)
    return presence_density(psi, params)
