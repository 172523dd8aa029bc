"""Numerical laboratory for 1-D quantum models with modified kinetic terms.

The model family replaces the L2 norm by a gradient-corrected (Sobolev-style)
inner product, with two couplings of a scalar potential: outside the
gradient term (GRADIENT, energy-dependent effective mass, bounded discrete
spectra) or through a covariant time derivative (GAUGE, pass bands and
localization by energy).  Submodules:

    core         grids, fields, potentials, corrected inner product/density
    spectra      closed-form levels, dispersion, band bookkeeping
    eigensolver  generalized eigenproblem for stationary states
    dynamics     Crank-Nicolson evolution + conservation-law residuals
    scattering   transfer matrices on piecewise-constant potentials
    wkb          semiclassical approximation for the gauge variant
    dirac        relativistic reduction and the Klein step problem
    cli          batch front end (`modkinetic <command> --config ...`)
"""

from .core import (
    Boundary,
    DensityFields,
    Grid1D,
    ModelParams,
    Potential,
    PotentialKind,
    Variant,
    WaveFunction,
    bra_map,
    gaussian_packet,
    gradient_values,
    integrate,
    laplacian,
    laplacian_values,
    normalize,
    presence_density,
    sobolev_inner,
)
from .dirac import (
    Branch,
    KleinResult,
    Regime,
    Spinor1D,
    dirac_vs_modified_spectrum,
    exact_free_density,
    free_spinor,
    klein_step,
    reduce_density,
)
from .dynamics import (
    ContinuityResiduals,
    Trajectory,
    compute_fields,
    continuity_residuals,
    evolve,
)
from .eigensolver import (
    EigenResult,
    OperatorPair,
    build_operators,
    solve_spectrum,
    stationary_density,
)
from .scattering import (
    ScatterResult,
    SegmentSolution,
    local_wavenumber,
    scatter,
    transfer_step,
)
from .spectra import (
    SpectrumAnalytic,
    dispersion,
    effective_mass,
    ho_energy,
    limiting_group_velocity,
    limiting_phase_velocity,
    oscillator_spectrum,
    pass_band,
    plane_wave_momentum,
    spectral_bound,
    well_energy,
    well_spectrum,
)
from .wkb import (
    WkbSolution,
    wkb_amplitude,
    wkb_amplitude_closed_form,
    wkb_validity,
    wkb_wavefunction,
    wkb_wavenumber,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
