"""Equality-constrained basis pursuit: minimize ||c||_1 subject to Dc = b.

Solved by ADMM: the x-update projects onto the affine feasible set through
a cached factorization of D D^T (with a tiny diagonal shift guarding rank
deficiency), the z-update is componentwise soft thresholding, and the
penalty is adapted from the primal/dual residual ratio.  The returned
iterate is z, whose entries are exactly sparse.
"""

import math
from dataclasses import dataclass

import numpy as np

from .design import DesignSystem
from .errors import NumericalError, UsageError


@dataclass(frozen=True)
class SolverConfig:
    abs_tol: float = 1e-8
    rel_tol: float = 1e-8
    max_iter: int = 20000
    penalty: float = 1.0

    def __post_init__(self):
        if min(self.abs_tol, self.rel_tol, self.penalty) <= 0 or self.max_iter <= 0:
            raise UsageError("solver tolerances, penalty and max_iter must be positive")


@dataclass
class RecoveryResult:
    coefficients: np.ndarray
    iterations: int
    primal_residual: float
    dual_residual: float
    converged: bool


# penalty adaptation stops here; an eventually-constant penalty is required
# for convergence, and perpetual rebalancing can cycle between nearly
# degenerate vertices
_ADAPT_HORIZON = 1000


def soft_threshold(v: np.ndarray, kappa: float) -> np.ndarray:
    return np.sign(v) * np.maximum(np.abs(v) - kappa, 0.0)


def admm_basis_pursuit(matrix: np.ndarray, rhs: np.ndarray,
                       config: SolverConfig = SolverConfig()) -> RecoveryResult:
    """Basis pursuit on an explicit M x N system with M <= N."""
    D = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    m, n = D.shape
    if m > n:
        raise UsageError(f"basis pursuit needs M <= N, got shape {D.shape}")
    gram = D @ D.T
    gram[np.diag_indices_from(gram)] += 1e-12
    try:
        # cached affine projector: x = v - proj^T (D v) + x_feas
        proj = np.linalg.solve(gram, D)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"factorization of the {m}x{m} Gram matrix failed") from exc
    x_feas = proj.T @ b

    rho = config.penalty
    x = np.zeros(n)
    z = np.zeros(n)
    u = np.zeros(n)
    norm_b = float(np.linalg.norm(b))
    feas_tol = config.abs_tol * (1.0 + norm_b)
    sqrt_n = math.sqrt(n)

    primal = dual = math.inf
    for it in range(1, config.max_iter + 1):
        v = z - u
        x = v - proj.T @ (D @ v) + x_feas
        z_prev = z
        z = soft_threshold(x + u, 1.0 / rho)
        u = u + x - z

        primal = float(np.linalg.norm(x - z))
        dual = float(rho * np.linalg.norm(z - z_prev))
        eps_pri = sqrt_n * config.abs_tol + config.rel_tol * max(
            float(np.linalg.norm(x)), float(np.linalg.norm(z))
        )
        eps_dual = sqrt_n * config.abs_tol + config.rel_tol * rho * float(np.linalg.norm(u))
        if primal <= eps_pri and dual <= eps_dual:
            if float(np.linalg.norm(D @ z - b)) <= feas_tol:
                return RecoveryResult(z, it, primal, dual, True)
        if it % 10 == 0 and it <= _ADAPT_HORIZON:
            # standard residual balancing; u is the scaled dual variable
            if primal > 10.0 * dual and rho < 1e4:
                rho *= 2.0
                u /= 2.0
            elif dual > 10.0 * primal and rho > 1e-4:
                rho /= 2.0
                u *= 2.0
    return RecoveryResult(z, config.max_iter, primal, dual, False)


def basis_pursuit(system: DesignSystem, config: SolverConfig = SolverConfig()) -> RecoveryResult:
    """Basis pursuit for an assembled design system."""
    return admm_basis_pursuit(system.matrix, system.rhs, config)


def best_s_term_error(c: np.ndarray, s: int, p: int = 2) -> float:
    """Distance of c from the nearest s-sparse vector in the l_p norm:
    the norm of c with its s largest-magnitude entries removed, ties
    broken toward the lower index."""
    c = np.asarray(c, dtype=float)
    if not 0 <= s <= c.size:
        raise UsageError(f"sparsity s={s} outside 0..{c.size}")
    if p not in (1, 2):
        raise UsageError(f"p must be 1 or 2, got {p}")
    if s == c.size:
        return 0.0
    keep = np.argsort(-np.abs(c), kind="stable")[s:]
    tail = c[keep]
    return float(np.sum(np.abs(tail))) if p == 1 else float(np.linalg.norm(tail))


def recovery_success(recovered: np.ndarray, reference: np.ndarray,
                     threshold: float = 1e-3) -> bool:
    """True when the max-norm coefficient error is at most the threshold
    (boundary counts as success)."""
    recovered = np.asarray(recovered, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if recovered.shape != reference.shape:
        raise UsageError(f"shape mismatch {recovered.shape} vs {reference.shape}")
    return bool(np.max(np.abs(recovered - reference)) <= threshold)
