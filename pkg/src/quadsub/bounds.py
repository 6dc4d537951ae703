"""Sup-norm bounds of the weighted polynomials, sample-count criterion,
node localization radii, and brute-force restricted isometry diagnostics.

The central quantity is, per family and rule size n,

    L(n) = max over degrees k < n and nodes z_j of psi_{k,n}(z_j)^2,

the uniform bound of the discretely orthonormal system.  Products of
per-dimension bounds feed the sample-count criterion
M >= L * C1 * s * log^3(s) * log(N).
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import UsageError
from .families import Beta, Exponential, Gaussian, Marginal, PolynomialFamily
from .quadrature import gauss_rule


@dataclass(frozen=True)
class BoundReport:
    """Empirical sup bound of one family at rule size n, with the degree
    (arg_degree) and node position (arg_node) attaining it."""

    family: PolynomialFamily
    n: int
    bound: float
    arg_degree: int
    arg_node: int


def univariate_bound(family: PolynomialFamily, n: int) -> BoundReport:
    """Scan psi_{k,n} over all n Gauss nodes and all degrees k < n."""
    if n < 1:
        raise UsageError(f"rule size n={n} must be >= 1")
    rule = gauss_rule(family, n)
    psi = family.weighted_matrix(n, rule.nodes)  # (nodes, degrees)
    sq = psi**2
    flat = int(np.argmax(sq))
    arg_node, arg_degree = np.unravel_index(flat, sq.shape)
    return BoundReport(family, n, float(sq[arg_node, arg_degree]), int(arg_degree), int(arg_node))


def product_bound(reports: Sequence[BoundReport]) -> float:
    """Product of per-dimension bounds L(n) = prod_i L_i(n_i)."""
    if not reports:
        raise UsageError("need at least one bound report")
    return math.prod(r.bound for r in reports)


def mrs_number(n: int, alpha: float, one_sided: bool = False) -> float:
    """Mhaskar-Rakhmanov-Saff number for the exponential weight with
    exponent alpha: the radius that localizes weighted polynomials of
    degree n.

    Two-sided: (n sqrt(pi) Gamma(a/2) / Gamma(a/2 + 1/2))^(1/a).
    One-sided: (n sqrt(pi) Gamma(a)   / Gamma(a + 1/2))^(1/a).
    """
    if alpha <= 0:
        raise UsageError(f"alpha={alpha} must be positive")
    if n < 1:
        raise UsageError(f"n={n} must be >= 1")
    if one_sided:
        ratio = math.gamma(alpha) / math.gamma(alpha + 0.5)
    else:
        ratio = math.gamma(alpha / 2.0) / math.gamma(alpha / 2.0 + 0.5)
    return (n * math.sqrt(math.pi) * ratio) ** (1.0 / alpha)


def localization_radius(dist: Marginal, n: int, c: float = 0.0) -> float:
    """Interval endpoint containing all n Gauss nodes of the family:
    1 for Beta laws, and the MRS radius rescaled to the family's actual
    density for the exponential-type laws, inflated by (1 + c n^{-2/3}).

    The standard normal density e^{-x^2/2} is the two-sided alpha=2 weight
    stretched by sqrt(2), and the rate-1 exponential e^{-x} carries twice
    the radius of its square root weight e^{-x/2}; both scale factors are
    applied here so a single flat constant c covers all n.
    """
    if isinstance(dist, Beta):
        return 1.0
    bump = 1.0 + c * n ** (-2.0 / 3.0)
    if isinstance(dist, Gaussian):
        return math.sqrt(2.0) * mrs_number(n, 2.0) * bump
    if isinstance(dist, Exponential):
        return 2.0 * mrs_number(n, 1.0, one_sided=True) * bump
    raise UsageError(f"no localization radius for {dist!r}")


def fit_localization_constant(family: PolynomialFamily, n_values: Sequence[int]) -> float:
    """Empirical constant c making [0 or -radius, radius(n, c)] the tightest
    envelope of the extreme Gauss nodes over the given rule sizes."""
    worst = -math.inf
    for n in n_values:
        rule = gauss_rule(family, int(n))
        extreme = float(np.max(np.abs(rule.nodes)))
        base = localization_radius(family.distribution, int(n))
        worst = max(worst, (extreme / base - 1.0) * n ** (2.0 / 3.0))
    return worst


@dataclass(frozen=True)
class SampleCountCriterion:
    bound_product: float
    sparsity: float
    basis_size: float
    constant: float
    required: float


def sample_count(bound_product: float, s: float, basis_size: float,
                 constant: float = 1.0) -> SampleCountCriterion:
    """Required sample count L * C1 * s * ln(s)^3 * ln(N); reported, never
    enforced.  s and N only feed logarithms, so real values are accepted."""
    if s < 2:
        raise UsageError(f"sparsity s={s} must be >= 2 for the log^3 factor")
    if basis_size < 2:
        raise UsageError(f"basis size N={basis_size} must be >= 2")
    required = bound_product * constant * s * math.log(s) ** 3 * math.log(basis_size)
    return SampleCountCriterion(bound_product, s, basis_size, constant, required)


def ric_bruteforce(matrix: np.ndarray, s: int) -> float:
    """Restricted isometry constant delta_s of a small matrix by exhaustive
    support enumeration: the largest spectral deviation of any s-column
    Gram block from the identity."""
    D = np.asarray(matrix, dtype=float)
    n = D.shape[1]
    if n > 16:
        raise UsageError(f"brute-force RIC limited to N <= 16 columns, got {n}")
    if not 1 <= s <= 4:
        raise UsageError(f"brute-force RIC limited to 1 <= s <= 4, got {s}")
    s = min(s, n)
    worst = 0.0
    for support in combinations(range(n), s):
        block = D[:, support]
        eigvals = np.linalg.eigvalsh(block.T @ block)
        worst = max(worst, float(eigvals[-1] - 1.0), float(1.0 - eigvals[0]))
    return worst
