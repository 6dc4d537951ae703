"""Gauss quadrature rules from recurrence coefficients (Golub-Welsch).

Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix built
from the family's recurrence; weights are squared first components of the
unit eigenvectors.  Tensor-product rules expose point/weight accessors
without materializing the grid.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import UsageError
from .families import PolynomialFamily


def tridiag_eigen(diag, offdiag):
    """Eigenvalues (ascending) and first eigenvector components of a
    symmetric tridiagonal matrix with positive off-diagonal entries.

    Implicit-shift QL iteration capped at 30 sweeps per eigenvalue;
    deterministic for identical input.
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if diag.ndim != 1 or offdiag.ndim != 1 or offdiag.size != max(diag.size - 1, 0):
        raise UsageError(
            f"expected diag (n,) and offdiag (n-1,), got {diag.shape} and {offdiag.shape}"
        )
    if np.any(offdiag <= 0.0):
        raise UsageError("off-diagonal entries must be positive")
    return kernels.tridiag_eigen(diag, offdiag)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """n-point Gauss rule of one family: sorted nodes, positive weights."""

    family: PolynomialFamily
    n: int
    nodes: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=512)
def _gauss_rule_cached(family: PolynomialFamily, n: int) -> QuadratureRule:
    a = family.recurrence_a[:n]
    off = np.sqrt(family.recurrence_b[1:n])
    nodes, first = kernels.tridiag_eigen(a, off)
    weights = first**2
    # total mass is 1 for probability measures (recurrence_b[0])
    weights *= family.recurrence_b[0]
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(family, n, nodes, weights)


def gauss_rule(family: PolynomialFamily, n: int) -> QuadratureRule:
    """The n-point Gauss rule of ``family``; nodes ascending.

    Needs recurrence coefficients through index n-1, so n can be at most
    max_degree + 1.
    """
    if n < 1:
        raise UsageError(f"rule size n={n} must be >= 1")
    if n > family.max_degree + 1:
        raise UsageError(f"rule size n={n} exceeds max_degree+1={family.max_degree + 1}")
    return _gauss_rule_cached(family, n)


@dataclass(frozen=True, eq=False)
class TensorRule:
    """Tensor product of d univariate Gauss rules.

    Multi-index accessors use the 1-based quadrature convention:
    point((1, ..., 1)) is the vector of smallest nodes.  The full grid of
    prod(sizes) points is never materialized here.
    """

    rules: tuple

    @property
    def d(self) -> int:
        return len(self.rules)

    @property
    def sizes(self) -> tuple:
        return tuple(r.n for r in self.rules)

    @property
    def grid_size(self) -> int:
        return math.prod(self.sizes)

    def _check(self, k) -> tuple:
        k = tuple(int(v) for v in k)
        if len(k) != self.d:
            raise UsageError(f"multi-index length {len(k)} != dimension {self.d}")
        for i, (ki, ni) in enumerate(zip(k, self.sizes)):
            if not 1 <= ki <= ni:
                raise UsageError(f"index {ki} outside 1..{ni} in dimension {i}")
        return k

    def point(self, k) -> np.ndarray:
        k = self._check(k)
        return np.array([r.nodes[ki - 1] for r, ki in zip(self.rules, k)])

    def weight(self, k) -> float:
        k = self._check(k)
        return math.prod(r.weights[ki - 1] for r, ki in zip(self.rules, k))

    def points_from_indices(self, idx: np.ndarray) -> np.ndarray:
        """Points for an (M, d) array of 0-based node indices."""
        return np.column_stack([r.nodes[idx[:, i]] for i, r in enumerate(self.rules)])

    def weights_from_indices(self, idx: np.ndarray) -> np.ndarray:
        out = np.ones(idx.shape[0])
        for i, r in enumerate(self.rules):
            out *= r.weights[idx[:, i]]
        return out


def tensor_rule(families: Sequence[PolynomialFamily], sizes: Sequence[int]) -> TensorRule:
    """Tensor rule with sizes[i] Gauss points of families[i] per dimension."""
    if len(families) != len(sizes):
        raise UsageError(f"{len(families)} families but {len(sizes)} sizes")
    if any(n < 1 for n in sizes):
        raise UsageError(f"all rule sizes must be >= 1, got {tuple(sizes)}")
    return TensorRule(tuple(gauss_rule(f, int(n)) for f, n in zip(families, sizes)))


def integrate(rule: QuadratureRule, f: Callable) -> float:
    """Apply a univariate rule to a vectorized integrand."""
    return float(np.dot(rule.weights, f(rule.nodes)))
