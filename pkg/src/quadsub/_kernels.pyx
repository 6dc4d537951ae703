# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Hot inner loops of the package: the tridiagonal QL eigensolver behind
Gauss rule construction, and the three-term-recurrence table fills used
for design matrices and sup-norm bound scans.  Contracts are identical
to the pure-Python fallbacks in ``_kernels_py``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot, copysign, sqrt

from .errors import NumericalError

cnp.import_array()

cdef double _EPS = 2.220446049250313e-16
cdef int _MAX_QL_SWEEPS = 30
cdef double _RESCALE_AT = 1e140


def tridiag_eigen(diag, offdiag):
    """Eigenvalues (ascending) and first eigenvector components of a
    symmetric tridiagonal matrix, by implicit-shift QL iteration."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.array(diag, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.zeros(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] z = np.zeros(n, dtype=np.float64)
    if n == 0:
        return d, z
    if n > 1:
        e[: n - 1] = np.asarray(offdiag, dtype=np.float64)
    z[0] = 1.0
    if n == 1:
        return d, z

    cdef Py_ssize_t l, m, i
    cdef int sweeps
    cdef double g, r, s, c, p, f, b
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if fabs(e[m]) <= _EPS * (fabs(d[m]) + fabs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if sweeps == _MAX_QL_SWEEPS:
                raise NumericalError(
                    f"tridiagonal QL failed to converge for eigenvalue {l} "
                    f"after {_MAX_QL_SWEEPS} sweeps"
                )
            sweeps += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if fabs(f) >= fabs(g):
                    c = g / f
                    r = hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c = c * s
                else:
                    s = f / g
                    r = hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s = s * c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    return d[order], z[order]


def poly_vandermonde(rec_a, rec_b, Py_ssize_t kmax, x):
    """Table V[j, k] = phi_k(x_j) for k = 0..kmax by forward three-term
    recurrence in the orthonormal normalization."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.atleast_1d(np.asarray(x, dtype=np.float64))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.asarray(rec_a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sb = np.sqrt(np.asarray(rec_b, dtype=np.float64))
    cdef Py_ssize_t mpts = xv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.empty((mpts, kmax + 1), dtype=np.float64)
    cdef Py_ssize_t j, k
    cdef double t
    for j in range(mpts):
        t = xv[j]
        V[j, 0] = 1.0
        if kmax >= 1:
            V[j, 1] = (t - a[0]) / sb[1]
        for k in range(1, kmax):
            V[j, k + 1] = ((t - a[k]) * V[j, k] - sb[k] * V[j, k - 1]) / sb[k + 1]
    return V


def weighted_vandermonde(rec_a, rec_b, Py_ssize_t n, x):
    """Table P[j, k] = sqrt(n * lambda_n(x_j)) * phi_k(x_j) for k < n,
    with periodic renormalization so the phi / sqrt(sum phi^2) ratio is
    formed without overflow."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.atleast_1d(np.asarray(x, dtype=np.float64))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.asarray(rec_a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sb = np.sqrt(np.asarray(rec_b, dtype=np.float64))
    cdef Py_ssize_t mpts = xv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.empty((mpts, n), dtype=np.float64)
    cdef Py_ssize_t j, k, q
    cdef double t, ssum, scale, val, sqn
    sqn = sqrt(<double> n)
    for j in range(mpts):
        t = xv[j]
        V[j, 0] = 1.0
        ssum = 1.0
        if n > 1:
            val = (t - a[0]) / sb[1]
            V[j, 1] = val
            ssum += val * val
        for k in range(1, n - 1):
            val = ((t - a[k]) * V[j, k] - sb[k] * V[j, k - 1]) / sb[k + 1]
            V[j, k + 1] = val
            ssum += val * val
            if fabs(val) > _RESCALE_AT:
                scale = 1.0 / fabs(val)
                for q in range(k + 2):
                    V[j, q] *= scale
                ssum *= scale * scale
        scale = sqn / sqrt(ssum)
        for q in range(n):
            V[j, q] *= scale
    return V


def christoffel_weights(rec_a, rec_b, Py_ssize_t n, x):
    """lambda_n at each point, through the rescaled weighted pass."""
    P = weighted_vandermonde(rec_a, rec_b, n, x)
    return P[:, 0] ** 2 / n
