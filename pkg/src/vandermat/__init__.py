"""Analytic functions of complex matrices from their eigenvalues.

Any analytic f(A) of an n x n matrix reduces to a polynomial in A of
degree below n; the coefficients come from a confluent Vandermonde system
over the eigenvalues and their multiplicities.  This package builds that
machinery from explicit summation formulas (Fourier-sampled determinants,
elementary symmetric polynomials, factorial closed forms) and applies it
to unitary quantum time evolution, including single-qubit closed forms,
product-formula evolution, and Bloch-sphere path extraction.
"""

from .eigen import (
    EigenOptions,
    Spectrum,
    cluster_spectrum,
    default_cluster_tol,
    eigenvalues,
    partition_count,
    spectrum_of,
)
from .errors import (
    ClusteringError,
    CommutationWarning,
    ConditioningWarning,
    ConvergenceError,
    HermiticityWarning,
    QuadratureError,
    SingularMatrixError,
    VandermatError,
)
from .charpoly import (
    adjugate_fourier,
    charpoly_coeffs,
    esp_detform,
    inverse_charpoly,
    inverse_fourier,
    power_sums,
    q_matrix,
    singularity_threshold,
)
from .linalg import (
    as_square,
    cond_estimate,
    det_levicivita,
    det_lu,
    fro,
    inv_lu,
    levi_civita,
    lu_factor,
    mat_pow,
    solve_lu,
)
from .matfunc import (
    AnalyticFunction,
    ExpFunction,
    Monomial,
    PowerSeries,
    WDDecomposition,
    apply_function,
    apply_function_alt,
    as_function,
    bch_conjugate,
    bch_series_oracle,
    coeff_vector,
    exp_identity_check,
    expm,
    expm_degenerate,
    expm_distinct,
    expm_taylor,
    ftilde,
    wd_decomposition,
)
from .quantum import (
    BlochPath,
    HamiltonianSpec,
    QubitParams,
    TrotterPlan,
    bloch_coordinates,
    bloch_path,
    evolve_commuting,
    evolve_const,
    evolve_trotter,
    evolve_trotter_qubit,
    gate_design_check,
    hadamard_time,
    integrate_matrix,
    named_hamiltonian,
    phase_gate_time,
    qubit_coefficients,
    qubit_eigenvalues,
    qubit_u_commuting,
    qubit_u_const,
    seteo_residual,
)
from .vandermonde import (
    ConfluentVandermonde,
    RegisterMap,
    build_vandermonde,
    esp_classic,
    esp_fourier,
    inverse_register,
    register,
    vandermonde_matrix,
    vandermonde_matrix_flat,
    vinv_degenerate,
    vinv_distinct,
    vinv_general,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
