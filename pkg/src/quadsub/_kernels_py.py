"""Pure-Python implementations of the numerical kernels.

Same contracts as the compiled extension ``_kernels``; selected by
``quadsub.kernels`` when the extension is unavailable or explicitly
disabled.  The Vandermonde fills are vectorized over evaluation points,
the QL eigensolver runs as scalar loops.
"""

import math

import numpy as np

from .errors import NumericalError

_EPS = 2.220446049250313e-16
_MAX_QL_SWEEPS = 30
# rescale threshold for the weighted recurrence; doubles hold ~1e308
_RESCALE_AT = 1e140


def tridiag_eigen(diag, offdiag):
    """Eigenvalues and first eigenvector components of a symmetric
    tridiagonal matrix, by implicit-shift QL iteration.

    Parameters
    ----------
    diag : (n,) diagonal entries.
    offdiag : (n-1,) sub/super-diagonal entries.

    Returns
    -------
    (eigenvalues, first_components), eigenvalues ascending, each first
    component taken from the corresponding unit-norm eigenvector.

    Only the first row of the eigenvector matrix is accumulated, which is
    all Golub-Welsch quadrature needs.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    if n == 0:
        return d, d.copy()
    e = np.zeros(n)
    e[: n - 1] = np.asarray(offdiag, dtype=float)
    z = np.zeros(n)
    z[0] = 1.0
    if n == 1:
        return d, z

    for l in range(n):
        sweeps = 0
        while True:
            for m in range(l, n):
                if m == n - 1:
                    break
                if abs(e[m]) <= _EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
            if m == l:
                break
            if sweeps == _MAX_QL_SWEEPS:
                raise NumericalError(
                    f"tridiagonal QL failed to converge for eigenvalue {l} "
                    f"after {_MAX_QL_SWEEPS} sweeps"
                )
            sweeps += 1

            # Wilkinson-style shift from the leading 2x2 block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) >= abs(g):
                    c = g / f
                    r = math.hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                else:
                    s = f / g
                    r = math.hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                # plane rotation applied to the tracked first row
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    return d[order], z[order]


def poly_vandermonde(rec_a, rec_b, kmax, x):
    """Table V[j, k] = phi_k(x_j) for k = 0..kmax by forward three-term
    recurrence in the orthonormal normalization.

    ``rec_a``/``rec_b`` are the recurrence arrays of the family
    (``rec_b[0]`` is the measure mass, 1 for probability measures).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    a = np.asarray(rec_a, dtype=float)
    b = np.asarray(rec_b, dtype=float)
    V = np.empty((x.size, kmax + 1))
    V[:, 0] = 1.0
    if kmax >= 1:
        V[:, 1] = (x - a[0]) / math.sqrt(b[1])
    for k in range(1, kmax):
        V[:, k + 1] = ((x - a[k]) * V[:, k] - math.sqrt(b[k]) * V[:, k - 1]) / math.sqrt(b[k + 1])
    return V


def weighted_vandermonde(rec_a, rec_b, n, x):
    """Table P[j, k] = sqrt(n * lambda_n(x_j)) * phi_k(x_j) for k < n.

    The recurrence and the running sum of squares are carried in a common
    scaling that is renormalized whenever entries grow past ~1e140, so the
    final ratio phi_k / sqrt(sum phi^2) never overflows even where the raw
    polynomial values would.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    a = np.asarray(rec_a, dtype=float)
    b = np.asarray(rec_b, dtype=float)
    m = x.size
    V = np.empty((m, n))
    V[:, 0] = 1.0
    ssum = np.ones(m)
    if n > 1:
        V[:, 1] = (x - a[0]) / math.sqrt(b[1])
        ssum += V[:, 1] ** 2
    for k in range(1, n - 1):
        V[:, k + 1] = ((x - a[k]) * V[:, k] - math.sqrt(b[k]) * V[:, k - 1]) / math.sqrt(b[k + 1])
        ssum += V[:, k + 1] ** 2
        big = np.abs(V[:, k + 1]) > _RESCALE_AT
        if np.any(big):
            scale = 1.0 / np.abs(V[big, k + 1])
            V[big, : k + 2] *= scale[:, None]
            ssum[big] *= scale**2
    V *= (math.sqrt(n) / np.sqrt(ssum))[:, None]
    return V


def christoffel_weights(rec_a, rec_b, n, x):
    """lambda_n at each point: reciprocal sum of squared orthonormal
    polynomials below degree n, computed through the rescaled pass."""
    P = weighted_vandermonde(rec_a, rec_b, n, x)
    return P[:, 0] ** 2 / n
