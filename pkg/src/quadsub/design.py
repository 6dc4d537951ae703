"""Weighted design systems: D = sqrt(W) Psi and the right-hand side.

Entry (m, j) of the design matrix is sqrt(w_m) * phi_{k(j)}(x_m), where
phi_k is the product of univariate orthonormal polynomials and k(j) runs
through the enumeration of the multi-index set.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import UsageError
from .families import PolynomialFamily
from .indexsets import MultiIndexSet
from .quadrature import TensorRule
from .sampling import SampleSet


@dataclass(frozen=True, eq=False)
class DesignSystem:
    """Dense M x N design matrix with its weighted right-hand side."""

    matrix: np.ndarray
    rhs: np.ndarray
    sample_set: SampleSet
    index_set: MultiIndexSet

    @property
    def shape(self):
        return self.matrix.shape


def basis_matrix(families: Sequence[PolynomialFamily], index_set: MultiIndexSet,
                 points: np.ndarray) -> np.ndarray:
    """Unweighted Vandermonde-like matrix Psi[m, j] = phi_{k(j)}(x_m).

    One univariate recurrence table per dimension, then column products.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    d = index_set.d
    if points.shape[1] != d:
        raise UsageError(f"points have dimension {points.shape[1]}, index set has {d}")
    if len(families) != d:
        raise UsageError(f"{len(families)} families for dimension-{d} index set")
    env = index_set.envelope()
    tables = [fam.vandermonde(int(env[i]) - 1, points[:, i]) for i, fam in enumerate(families)]
    psi = np.ones((points.shape[0], index_set.size))
    ks = index_set.indices
    for i in range(d):
        psi *= tables[i][:, ks[:, i]]
    return psi


def assemble(samples: SampleSet, families: Sequence[PolynomialFamily],
             index_set: MultiIndexSet, f: Callable) -> DesignSystem:
    """Design system for a sample set, basis, and target function.

    ``f`` maps an (M, d) point array to M values.  For grid-subsampled
    samples the index set must fit inside the generating grid.
    """
    if samples.grid_sizes is not None:
        env = index_set.envelope()
        for i, (need, have) in enumerate(zip(env, samples.grid_sizes)):
            if need > have:
                raise UsageError(
                    f"index set needs {need} points in dimension {i} "
                    f"but the grid has only {have}"
                )
    psi = basis_matrix(families, index_set, samples.points)
    sw = np.sqrt(samples.weights)
    matrix = sw[:, None] * psi
    rhs = sw * np.asarray(f(samples.points), dtype=float)
    return DesignSystem(matrix, rhs, samples, index_set)


def full_grid_samples(rule: TensorRule) -> SampleSet:
    """Every grid point of a tensor rule with its product weight, in the
    canonical row-major enumeration."""
    sizes = rule.sizes
    total = rule.grid_size
    idx = np.column_stack(np.unravel_index(np.arange(total), sizes))
    return SampleSet(
        rule.points_from_indices(idx),
        rule.weights_from_indices(idx),
        "gauss",
        None,
        grid_sizes=sizes,
    )


def project_full_grid(families: Sequence[PolynomialFamily], rule: TensorRule,
                      index_set: MultiIndexSet, f: Callable) -> np.ndarray:
    """Discrete projection coefficients c_j = sum_k w_k phi_j(z_k) f(z_k)
    over the full tensor grid; the reference expansion for targets that an
    enveloping rule integrates exactly."""
    env = index_set.envelope()
    for i, (need, have) in enumerate(zip(env, rule.sizes)):
        if need > have:
            raise UsageError(
                f"index set needs {need} points in dimension {i} "
                f"but the rule has only {have}"
            )
    samples = full_grid_samples(rule)
    psi = basis_matrix(families, index_set, samples.points)
    vals = np.asarray(f(samples.points), dtype=float)
    return psi.T @ (samples.weights * vals)
