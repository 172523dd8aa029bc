"""Assembly of the discrete stationary operators A psi = E B psi.

Internal module: the eigensolver exposes the public contract (Dirichlet
only); the propagator and field diagnostics reuse the same assembly so every
consumer discretizes with the identical stencil, including periodic test
harnesses.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .core import Boundary, Grid1D, ModelParams, Potential, Variant


def assemble(
    potential: Potential, grid: Grid1D, params: ModelParams
) -> tuple[sparse.csc_matrix, sparse.csc_matrix, np.ndarray]:
    """Build (A, B, V_nodes) for the active variant.

    GRADIENT:  A = diag(V) - D2/2m,                B = I - a D2
    GAUGE:     A = diag(V) - D2/2m - a F[V],       B = I - a D2

    where F[V] is the flux-form discretization of grad(V grad .) with V
    sampled at link midpoints; the flux form keeps A symmetric and makes the
    constant-V lattice dispersion exact.  On Dirichlet grids the matrices act
    on the n-2 interior nodes (walls pinned to zero); on periodic grids on
    all n nodes with wrap couplings.
    """
    h2 = grid.h ** 2
    m, a = params.m, params.a
    v_nodes = potential.sample(grid)
    periodic = grid.boundary is Boundary.PERIODIC

    if periodic:
        v = v_nodes
        dim = grid.n
    else:
        v = v_nodes[1:-1]
        dim = grid.n - 2

    # Kinetic part -D2/2m: diagonal 1/(m h^2), off-diagonal -1/(2 m h^2).
    a_diag = v + 1.0 / (m * h2)
    a_off = np.full(dim - 1, -1.0 / (2.0 * m * h2))
    a_wrap = -1.0 / (2.0 * m * h2) if periodic else None

    b_diag = np.full(dim, 1.0 + 2.0 * a / h2)
    b_off = np.full(dim - 1, -a / h2)
    b_wrap = -a / h2 if periodic else None

    if params.variant is Variant.GAUGE and a != 0.0:
        v_mid = potential.sample_midpoints(grid)  # one value per link
        if periodic:
            left = v_mid[np.arange(dim) - 1]  # link into node i from the left
            right = v_mid
            a_diag = a_diag + a * (left + right) / h2
            a_off = a_off - a * v_mid[:-1][: dim - 1] / h2
            a_wrap += -a * v_mid[-1] / h2
        else:
            # Interior node i couples to links i-1/2 and i+1/2 of the full grid.
            left = v_mid[:-1]
            right = v_mid[1:]
            a_diag = a_diag + a * (left + right) / h2
            a_off = a_off - a * v_mid[1:-1] / h2

    def build(diag, off, wrap):
        mat = sparse.diags(
            [off, diag, off], offsets=[-1, 0, 1], shape=(dim, dim), format="lil"
        )
        if periodic and wrap is not None and dim > 2:
            mat[0, dim - 1] += wrap
            mat[dim - 1, 0] += wrap
        return mat.tocsc()

    return build(a_diag, a_off, a_wrap), build(b_diag, b_off, b_wrap), v_nodes


def interior_slice(grid: Grid1D) -> slice:
    """Slice of the full grid the assembled matrices act on."""
    if grid.boundary is Boundary.PERIODIC:
        return slice(None)
    return slice(1, -1)


def embed(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Lift an interior vector back onto the full grid (zero walls)."""
    if grid.boundary is Boundary.PERIODIC:
        return np.asarray(values)
    full = np.zeros(grid.n, dtype=values.dtype)
    full[1:-1] = values
    return full
