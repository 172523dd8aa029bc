"""Exception types shared across the package."""


class ModkineticError(Exception):
    """Base class for all errors raised by this package."""


class GridMismatchError(ModkineticError):
    """Two fields that must share a grid do not."""


class ZeroNormError(ModkineticError):
    """Normalization requested for a field with vanishing norm."""


class SingularMassError(ModkineticError):
    """Effective mass evaluated at the band edge where it diverges."""


class UnboundedSpectrumError(ModkineticError):
    """A spectral bound or band width was requested at a = 0 where none exists."""


class UnsupportedBoundaryError(ModkineticError):
    """Operation does not support the grid's boundary condition."""


class NegativeCouplingError(ModkineticError):
    """Kinetic coupling a < 0 breaks positivity of the norm."""


class ConvergenceFailureError(ModkineticError):
    """Iterative eigensolver failed to converge."""

    def __init__(self, message, converged=0, requested=0):
        super().__init__(message)
        self.converged = converged
        self.requested = requested


class IndexRangeError(ModkineticError):
    """State index outside the computed range."""


class SolveFailureError(ModkineticError):
    """Linear solver failure inside the time propagator."""


class TooFewFramesError(ModkineticError):
    """Continuity diagnostics need at least three stored frames."""


class BandEdgeError(ModkineticError):
    """Scattering or WKB evaluation at a band edge where the equation degenerates."""


class NoIncidentChannelError(ModkineticError):
    """Requested scattering energy admits no propagating incident wave."""


class OutOfBandError(ModkineticError):
    """WKB evaluation outside the local pass band."""

    def __init__(self, message, intervals=()):
        super().__init__(message)
        self.intervals = tuple(intervals)


class ConfigError(ModkineticError):
    """Invalid run configuration; carries the list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
