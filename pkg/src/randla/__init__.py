"""randla: randomized low-rank factorizations, random-feature kernels, and a
reproducible benchmark CLI, built on from-scratch dense linear algebra.

The hot factorization kernels exist as a compiled extension with a pure
NumPy fallback; ``backend_name()`` reports which one this process loaded.
"""

from randla.backend import ACTIVE_BACKEND
from randla.errors import ConvergenceError, DataError
from randla.factor import (
    ErrorReport,
    FixedPrecisionBound,
    IdResult,
    RsvdConfig,
    adaptive_rank,
    compare_decompositions,
    deterministic_id,
    fixed_precision_bound,
    projection_error,
    randomized_id,
    randomized_svd,
)
from randla.kernels import (
    KernelSpec,
    RffMap,
    bandwidth_averaged_rbf_kernel,
    center_kernel_matrix,
    exact_kernel_matrix,
    rff_features,
    rff_kernel_matrix,
    sample_range_rff,
    sample_rff,
)
from randla.linalg import (
    EigFactors,
    QrFactors,
    SvdFactors,
    as_matrix,
    column_pivoted_qr,
    frobenius_norm,
    gaussian_matrix,
    householder_qr,
    svd,
    sym_eig,
)
from randla.rng import RandomStream, check_seed, derive_seed
from randla.sketch import (
    JlParams,
    NormErrorStats,
    jl_min_dimension,
    jl_project,
    norm_preservation_experiment,
)

__version__ = "0.1.0"


def backend_name():
    """Name of the active kernel backend ("cython" or "python")."""
    return ACTIVE_BACKEND


__all__ = [
    "ConvergenceError",
    "DataError",
    "ErrorReport",
    "FixedPrecisionBound",
    "IdResult",
    "RsvdConfig",
    "adaptive_rank",
    "compare_decompositions",
    "deterministic_id",
    "fixed_precision_bound",
    "projection_error",
    "randomized_id",
    "randomized_svd",
    "KernelSpec",
    "RffMap",
    "bandwidth_averaged_rbf_kernel",
    "center_kernel_matrix",
    "exact_kernel_matrix",
    "rff_features",
    "rff_kernel_matrix",
    "sample_range_rff",
    "sample_rff",
    "EigFactors",
    "QrFactors",
    "SvdFactors",
    "as_matrix",
    "column_pivoted_qr",
    "frobenius_norm",
    "gaussian_matrix",
    "householder_qr",
    "svd",
    "sym_eig",
    "RandomStream",
    "check_seed",
    "derive_seed",
    "JlParams",
    "NormErrorStats",
    "jl_min_dimension",
    "jl_project",
    "norm_preservation_experiment",
    "backend_name",
]
