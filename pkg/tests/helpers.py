"""Shared test utilities: independent oracles kept deliberately separate
from the production code paths they check."""

from itertools import combinations

import numpy as np

from quadsub import Beta, Exponential, Gaussian, build_family, gauss_rule


def reference_quad(dist, size: int):
    """Nodes/weights of a probability-normalized Gauss rule built from
    numpy.polynomial, independent of the package's eigensolver."""
    if isinstance(dist, Gaussian):
        x, w = np.polynomial.hermite_e.hermegauss(size)
        return x, w / w.sum()
    if isinstance(dist, Exponential):
        x, w = np.polynomial.laguerre.laggauss(size)
        return x, w / w.sum()
    if isinstance(dist, Beta) and dist.gamma == 0.0 and dist.delta == 0.0:
        x, w = np.polynomial.legendre.leggauss(size)
        return x, w / w.sum()
    if isinstance(dist, Beta) and dist.gamma == -0.5 and dist.delta == -0.5:
        # arcsine rule: Chebyshev nodes with equal weights
        k = np.arange(1, size + 1)
        x = np.cos((2 * k - 1) * np.pi / (2 * size))
        return np.sort(x), np.full(size, 1.0 / size)
    raise ValueError(f"no independent reference rule for {dist!r}")


def bp_bruteforce(matrix: np.ndarray, rhs: np.ndarray, tol: float = 1e-9):
    """Exhaustive minimum-l1 search over supports up to size M: solves the
    restricted system on every candidate support and keeps the feasible
    solution of least l1 norm.  Exponential cost, desk-scale inputs only."""
    D = np.asarray(matrix, float)
    b = np.asarray(rhs, float)
    m, n = D.shape
    best_norm = np.inf
    best = None
    for size in range(0, m + 1):
        for support in combinations(range(n), size):
            if size == 0:
                residual = np.linalg.norm(b)
                sol = np.zeros(0)
            else:
                block = D[:, support]
                sol, *_ = np.linalg.lstsq(block, b, rcond=None)
                residual = np.linalg.norm(block @ sol - b)
            if residual <= tol * (1.0 + np.linalg.norm(b)):
                l1 = np.sum(np.abs(sol))
                if l1 < best_norm - 1e-15:
                    best_norm = l1
                    full = np.zeros(n)
                    full[list(support)] = sol
                    best = full
    return best, best_norm


def standard_families(max_degree: int):
    """The five families every sweep exercises."""
    return {
        "uniform": build_family(Beta(0.0, 0.0), max_degree),
        "chebyshev": build_family(Beta(-0.5, -0.5), max_degree),
        "jacobi11": build_family(Beta(1.0, 1.0), max_degree),
        "hermite": build_family(Gaussian(), max_degree),
        "laguerre": build_family(Exponential(), max_degree),
    }


def gram_matrix(family, n: int, degree_cap: int) -> np.ndarray:
    """Quadrature Gram matrix of phi_0..phi_degree_cap under the family's
    own n-point rule."""
    rule = gauss_rule(family, n)
    table = family.vandermonde(degree_cap, rule.nodes)
    return table.T @ (rule.weights[:, None] * table)
