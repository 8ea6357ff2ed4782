"""Exception and warning types shared across the package."""


class VandermatError(Exception):
    """Base class for library-specific failures."""


class SingularMatrixError(VandermatError, ValueError):
    """Determinant too small for a stable explicit inverse.

    Carries the measured ``det_abs`` so callers can report how far below
    the threshold the matrix fell.
    """

    def __init__(self, message, det_abs):
        super().__init__(message)
        self.det_abs = float(det_abs)


class ConvergenceError(VandermatError, RuntimeError):
    """Iterative root search exhausted its budget; carries the residuals."""

    def __init__(self, message, residuals):
        super().__init__(message)
        self.residuals = residuals


class ClusteringError(VandermatError, ValueError):
    """Root clusters are too diffuse or too entangled for the given tolerance."""


class QuadratureError(VandermatError, RuntimeError):
    """Adaptive quadrature hit its depth cap before reaching tolerance."""


class ConditioningWarning(UserWarning):
    """Result computed, but heavy roundoff amplification is expected."""


class HermiticityWarning(UserWarning):
    """Operator deviates from Hermitian symmetry beyond tolerance."""


class CommutationWarning(UserWarning):
    """Sampled commutators violate the assumed time-commutation."""
