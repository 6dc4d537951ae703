"""Orthonormal univariate polynomial families for the supported input laws.

Each family is defined by the three-term recurrence of the polynomials
orthonormal against the *probability-normalized* density:

    phi_{k+1}(x) = ((x - a_k) phi_k(x) - sqrt(b_k) phi_{k-1}(x)) / sqrt(b_{k+1})

with phi_0 = 1 and b_0 = 1 (unit total mass).  Off-diagonal coefficients
are strictly positive, which fixes every phi_k to have a positive leading
coefficient.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from . import kernels
from .errors import DomainError, UsageError


@dataclass(frozen=True)
class Beta:
    """Beta law on [-1, 1] with density proportional to (1-x)^delta (1+x)^gamma.

    gamma = delta = 0 is the uniform law, gamma = delta = -1/2 the
    Chebyshev (arcsine) law.  Both shape parameters must be >= -1/2.
    """

    gamma: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if self.gamma < -0.5:
            raise DomainError(f"Beta shape gamma={self.gamma} violates gamma >= -1/2")
        if self.delta < -0.5:
            raise DomainError(f"Beta shape delta={self.delta} violates delta >= -1/2")

    @property
    def support(self):
        return (-1.0, 1.0)

    @property
    def log_mass(self):
        """log of integral of (1-x)^delta (1+x)^gamma over [-1, 1]."""
        g, d = self.gamma, self.delta
        return (
            (g + d + 1.0) * math.log(2.0)
            + math.lgamma(g + 1.0)
            + math.lgamma(d + 1.0)
            - math.lgamma(g + d + 2.0)
        )

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = (x > -1.0) & (x < 1.0)
        xi = x[inside]
        out[inside] = np.exp(
            self.delta * np.log1p(-xi) + self.gamma * np.log1p(xi) - self.log_mass
        )
        return out


@dataclass(frozen=True)
class Gaussian:
    """Standard normal law on the real line."""

    @property
    def support(self):
        return (-math.inf, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Exponential:
    """Rate-1 exponential law, density e^{-x} on [0, inf)."""

    @property
    def support(self):
        return (0.0, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, np.exp(-np.minimum(x, 745.0)), 0.0)


Marginal = Union[Beta, Gaussian, Exponential]

UNIFORM = Beta(0.0, 0.0)
CHEBYSHEV = Beta(-0.5, -0.5)


def marginal_name(dist: Marginal) -> str:
    """Canonical registry name of a marginal, inverse of marginal_from_name."""
    if dist == UNIFORM:
        return "uniform"
    if dist == CHEBYSHEV:
        return "chebyshev"
    if isinstance(dist, Beta):
        return f"jacobi:{dist.gamma:g}:{dist.delta:g}"
    if isinstance(dist, Gaussian):
        return "gaussian"
    if isinstance(dist, Exponential):
        return "exponential"
    raise UsageError(f"unknown marginal {dist!r}")


def marginal_from_name(name: str) -> Marginal:
    """Parse a marginal spec such as 'uniform', 'hermite' or 'jacobi:1:1'."""
    key = name.strip().lower()
    if key in ("uniform", "legendre"):
        return UNIFORM
    if key == "chebyshev":
        return CHEBYSHEV
    if key in ("gaussian", "normal", "hermite"):
        return Gaussian()
    if key in ("exponential", "laguerre"):
        return Exponential()
    if key.startswith(("jacobi:", "beta:")):
        parts = key.split(":")
        if len(parts) != 3:
            raise UsageError(f"expected '{parts[0]}:<gamma>:<delta>', got '{name}'")
        try:
            return Beta(float(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise UsageError(f"bad shape parameters in '{name}'") from exc
    raise UsageError(
        f"unknown marginal '{name}' (expected uniform, chebyshev, gaussian, "
        "exponential, or jacobi:<gamma>:<delta>)"
    )


@dataclass(frozen=True, eq=False)
class PolynomialFamily:
    """Recurrence data of one orthonormal family, immutable after build.

    ``recurrence_a`` and ``recurrence_b`` have length ``max_degree + 1``;
    ``recurrence_b[0]`` is 1 by probability normalization.
    """

    distribution: Marginal
    recurrence_a: np.ndarray
    recurrence_b: np.ndarray
    max_degree: int

    def evaluate(self, k: int, x):
        """phi_k at x (scalar or array) by forward recurrence."""
        if not 0 <= k <= self.max_degree:
            raise UsageError(f"degree {k} outside 0..max_degree={self.max_degree}")
        V = kernels.poly_vandermonde(self.recurrence_a, self.recurrence_b, k, x)
        vals = V[:, k]
        return float(vals[0]) if np.isscalar(x) else vals

    def vandermonde(self, kmax: int, x) -> np.ndarray:
        """Table of phi_0..phi_kmax at the points x, shape (len(x), kmax+1)."""
        if not 0 <= kmax <= self.max_degree:
            raise UsageError(f"degree {kmax} outside 0..max_degree={self.max_degree}")
        return kernels.poly_vandermonde(self.recurrence_a, self.recurrence_b, kmax, x)

    def christoffel(self, n: int, x):
        """lambda_n(x) = 1 / sum_{k<n} phi_k(x)^2."""
        if n < 1:
            raise UsageError(f"christoffel order n={n} must be >= 1")
        if n > self.max_degree + 1:
            raise UsageError(f"christoffel order n={n} exceeds max_degree+1={self.max_degree + 1}")
        lam = kernels.christoffel_weights(self.recurrence_a, self.recurrence_b, n, x)
        return float(lam[0]) if np.isscalar(x) else lam

    def weighted_poly(self, k: int, n: int, x):
        """psi_{k,n}(x) = sqrt(n * lambda_n(x)) * phi_k(x), defined for k < n.

        Computed in one fused rescaled pass so the result stays finite
        where raw phi_k values would overflow.
        """
        if k < 0 or k >= n:
            raise UsageError(f"weighted polynomial needs 0 <= k < n, got k={k}, n={n}")
        if n > self.max_degree + 1:
            raise UsageError(f"order n={n} exceeds max_degree+1={self.max_degree + 1}")
        P = kernels.weighted_vandermonde(self.recurrence_a, self.recurrence_b, n, x)
        vals = P[:, k]
        return float(vals[0]) if np.isscalar(x) else vals

    def weighted_matrix(self, n: int, x) -> np.ndarray:
        """Table of psi_{k,n} for all k < n at the points x."""
        if n < 1 or n > self.max_degree + 1:
            raise UsageError(f"order n={n} outside 1..max_degree+1={self.max_degree + 1}")
        return kernels.weighted_vandermonde(self.recurrence_a, self.recurrence_b, n, x)


def _jacobi_coefficients(gamma: float, delta: float, max_degree: int):
    # Gautschi's closed forms with al = exponent of (1-x), be = exponent of (1+x)
    al, be = delta, gamma
    a = np.zeros(max_degree + 1)
    b = np.ones(max_degree + 1)
    ab = al + be
    a[0] = (be - al) / (ab + 2.0)
    if max_degree >= 1:
        b[1] = 4.0 * (al + 1.0) * (be + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
    for k in range(1, max_degree + 1):
        a[k] = (be * be - al * al) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
    for k in range(2, max_degree + 1):
        b[k] = (
            4.0 * k * (k + al) * (k + be) * (k + ab)
            / ((2.0 * k + ab) ** 2 * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0))
        )
    return a, b


def _hermite_coefficients(max_degree: int):
    a = np.zeros(max_degree + 1)
    b = np.ones(max_degree + 1)
    b[1:] = np.arange(1, max_degree + 1, dtype=float)
    return a, b


def _laguerre_coefficients(max_degree: int):
    k = np.arange(max_degree + 1, dtype=float)
    a = 2.0 * k + 1.0
    b = np.ones(max_degree + 1)
    b[1:] = k[1:] ** 2
    return a, b


@lru_cache(maxsize=None)
def build_family(dist: Marginal, max_degree: int) -> PolynomialFamily:
    """Construct the orthonormal family for ``dist`` up to ``max_degree``.

    Beta laws yield Jacobi recurrences, the Gaussian law the probabilists'
    Hermite recurrence, the exponential law the Laguerre recurrence; all in
    the probability-orthonormal normalization.
    """
    if max_degree < 0:
        raise UsageError(f"max_degree must be >= 0, got {max_degree}")
    if isinstance(dist, Beta):
        a, b = _jacobi_coefficients(dist.gamma, dist.delta, max_degree)
    elif isinstance(dist, Gaussian):
        a, b = _hermite_coefficients(max_degree)
    elif isinstance(dist, Exponential):
        a, b = _laguerre_coefficients(max_degree)
    else:
        raise UsageError(f"unsupported distribution {dist!r}")
    a.setflags(write=False)
    b.setflags(write=False)
    return PolynomialFamily(dist, a, b, max_degree)
