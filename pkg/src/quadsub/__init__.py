"""Sparse polynomial chaos recovery from randomly subsampled Gauss grids.

Pipeline: orthonormal families (``families``) feed Gauss rules
(``quadrature``); tensor grids are subsampled or replaced by iid draws
(``sampling``); the weighted design system (``design``) goes to the
basis pursuit solver (``solver``); sup-norm bounds and sample-count
diagnostics live in ``bounds``; ``targets`` and ``experiments`` drive
the study CLI (``cli``).
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    DomainError,
    NumericalError,
    QuadsubError,
    UsageError,
)
from .families import (
    Beta,
    Exponential,
    Gaussian,
    PolynomialFamily,
    build_family,
    marginal_from_name,
)
from .indexsets import MultiIndexSet, anisotropic_tensor, tensor, total_degree
from .quadrature import QuadratureRule, TensorRule, gauss_rule, tensor_rule, tridiag_eigen
from .sampling import SampleSet, chebyshev_weights, sample_iid, subsample_gauss
from .design import DesignSystem, assemble, basis_matrix, project_full_grid
from .solver import (
    RecoveryResult,
    SolverConfig,
    admm_basis_pursuit,
    basis_pursuit,
    best_s_term_error,
    recovery_success,
)
from .bounds import (
    BoundReport,
    SampleCountCriterion,
    mrs_number,
    product_bound,
    ric_bruteforce,
    sample_count,
    univariate_bound,
)
from .targets import make_sparse_target, make_target, ode_qoi, ode_solution

__all__ = [
    "__version__",
    "QuadsubError", "DomainError", "UsageError", "CapacityError", "NumericalError",
    "Beta", "Gaussian", "Exponential", "PolynomialFamily", "build_family",
    "marginal_from_name",
    "MultiIndexSet", "total_degree", "tensor", "anisotropic_tensor",
    "QuadratureRule", "TensorRule", "gauss_rule", "tensor_rule", "tridiag_eigen",
    "SampleSet", "subsample_gauss", "sample_iid", "chebyshev_weights",
    "DesignSystem", "assemble", "basis_matrix", "project_full_grid",
    "SolverConfig", "RecoveryResult", "basis_pursuit", "admm_basis_pursuit",
    "best_s_term_error", "recovery_success",
    "BoundReport", "SampleCountCriterion", "univariate_bound", "product_bound",
    "mrs_number", "sample_count", "ric_bruteforce",
    "make_sparse_target", "make_target", "ode_solution", "ode_qoi",
]
