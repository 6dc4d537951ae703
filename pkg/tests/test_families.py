"""Family construction and evaluation, checked against closed forms, an
independent reference quadrature, and a high-precision monomial
Gram-Schmidt oracle."""

import math

import mpmath
import numpy as np
import pytest

from helpers import reference_quad, standard_families
from quadsub import (
    Beta,
    DomainError,
    Exponential,
    Gaussian,
    UsageError,
    build_family,
    gauss_rule,
)

FAMILIES = standard_families(120)


# -- build_family examples ---------------------------------------------------

def test_hermite_recurrence_values():
    fam = build_family(Gaussian(), 2)
    assert np.allclose(fam.recurrence_a, [0.0, 0.0, 0.0])
    assert np.allclose(fam.recurrence_b, [1.0, 1.0, 2.0])
    x = np.array([-1.3, 0.0, 0.4, 2.2])
    assert np.allclose(fam.evaluate(1, x), x)
    assert np.allclose(fam.evaluate(2, x), (x**2 - 1) / math.sqrt(2))


def test_hermite_orthonormal_under_reference_rule():
    fam = build_family(Gaussian(), 2)
    x, w = reference_quad(Gaussian(), 10)
    table = fam.vandermonde(2, x)
    gram = table.T @ (w[:, None] * table)
    assert np.allclose(gram, np.eye(3), atol=1e-12)


def test_uniform_degree_one_is_sqrt3_x():
    fam = build_family(Beta(0.0, 0.0), 1)
    x = np.array([-0.7, 0.1, 1.0])
    assert np.allclose(fam.evaluate(1, x), math.sqrt(3) * x, atol=1e-14)


def test_exponential_degree_one_moment_check():
    # orthonormal first Laguerre polynomial: unit norm against e^{-x}, the
    # positive-leading convention makes it x - 1 (same squares as 1 - x)
    fam = build_family(Exponential(), 1)
    x, w = reference_quad(Exponential(), 10)
    vals = fam.evaluate(1, x)
    assert abs(np.dot(w, vals**2) - 1.0) < 1e-12
    assert np.allclose(vals**2, (1.0 - x) ** 2, rtol=1e-12)
    assert fam.evaluate(1, 0.0) == pytest.approx(-1.0)


def test_bad_beta_shapes_rejected():
    with pytest.raises(DomainError, match="gamma"):
        Beta(-0.6, 0.0)
    with pytest.raises(DomainError, match="delta"):
        Beta(0.0, -0.51)


# -- evaluate examples -------------------------------------------------------

def test_degree_zero_is_one_everywhere():
    for fam in FAMILIES.values():
        for x in (-2.0, 0.0, 0.3, 17.0):
            assert fam.evaluate(0, x) == 1.0


def test_evaluate_examples():
    assert FAMILIES["uniform"].evaluate(1, 1.0) == pytest.approx(math.sqrt(3), rel=1e-14)
    assert FAMILIES["hermite"].evaluate(2, 0.0) == pytest.approx(-1 / math.sqrt(2), rel=1e-14)


def test_evaluate_degree_cap():
    fam = build_family(Gaussian(), 5)
    with pytest.raises(UsageError):
        fam.evaluate(6, 0.0)


# -- christoffel examples ----------------------------------------------------

def test_christoffel_examples():
    uni = FAMILIES["uniform"]
    for fam in FAMILIES.values():
        assert fam.christoffel(1, 0.37) == pytest.approx(1.0, rel=1e-14)
    assert uni.christoffel(2, 0.0) == pytest.approx(1.0, rel=1e-14)
    assert uni.christoffel(2, 1.0) == pytest.approx(0.25, rel=1e-12)


def test_christoffel_positive_and_monotone():
    xs = np.array([-0.9, -0.3, 0.0, 0.5, 0.99])
    for name, fam in FAMILIES.items():
        pts = xs if name != "laguerre" else xs + 1.0
        prev = None
        for n in (1, 2, 5, 10, 25):
            lam = fam.christoffel(n, pts)
            assert np.all(lam > 0)
            if prev is not None:
                assert np.all(lam <= prev + 1e-15)
            prev = lam


# -- weighted polynomial examples --------------------------------------------

def test_weighted_poly_examples():
    uni = FAMILIES["uniform"]
    for fam in FAMILIES.values():
        assert fam.weighted_poly(0, 1, 0.81) == pytest.approx(1.0, rel=1e-14)
    assert uni.weighted_poly(0, 2, 0.0) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert uni.weighted_poly(1, 2, 1 / math.sqrt(3)) == pytest.approx(1.0, rel=1e-12)


def test_weighted_poly_requires_k_below_n():
    with pytest.raises(UsageError):
        FAMILIES["uniform"].weighted_poly(2, 2, 0.0)


# -- invariants ---------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FAMILIES))
@pytest.mark.parametrize("n", [1, 2, 3, 7, 20, 50])
def test_discrete_orthonormality(name, n):
    # the weighted polynomials are orthonormal under the uniform measure
    # on the family's own n Gauss nodes
    fam = FAMILIES[name]
    rule = gauss_rule(fam, n)
    psi = fam.weighted_matrix(n, rule.nodes)
    gram = psi.T @ psi / n
    assert np.max(np.abs(gram - np.eye(n))) < 1e-9


@pytest.mark.parametrize("name", sorted(FAMILIES))
@pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
def test_continuous_orthonormality_via_gauss_exactness(name, n):
    fam = FAMILIES[name]
    rule = gauss_rule(fam, n)
    table = fam.vandermonde(2 * n - 1, rule.nodes)
    gram = table.T @ (rule.weights[:, None] * table)
    for j in range(2 * n):
        for k in range(2 * n - j):
            assert abs(gram[j, k] - (1.0 if j == k else 0.0)) < 1e-10


# -- monomial Gram-Schmidt oracle ---------------------------------------------

def _moments_mp(name, count):
    mpmath.mp.dps = 50
    if name == "uniform":
        return [mpmath.mpf(1 + (-1) ** j) / (2 * (j + 1)) for j in range(count)]
    if name == "chebyshev":
        return [
            mpmath.quad(lambda t, j=j: mpmath.cos(t) ** j / mpmath.pi, [0, mpmath.pi])
            for j in range(count)
        ]
    if name == "jacobi11":
        mass = mpmath.quad(lambda x: (1 - x) * (1 + x), [-1, 1])
        return [
            mpmath.quad(lambda x, j=j: x**j * (1 - x) * (1 + x), [-1, 1]) / mass
            for j in range(count)
        ]
    if name == "hermite":
        return [
            mpmath.quad(
                lambda x, j=j: x**j * mpmath.exp(-x * x / 2) / mpmath.sqrt(2 * mpmath.pi),
                [-mpmath.inf, mpmath.inf],
            )
            for j in range(count)
        ]
    if name == "laguerre":
        return [mpmath.factorial(j) for j in range(count)]
    raise ValueError(name)


def _gram_schmidt_mp(moments, kmax):
    """Orthonormal polynomial coefficient rows from raw monomial moments."""
    coeffs = []
    for k in range(kmax + 1):
        vec = [mpmath.mpf(0)] * (k + 1)
        vec[k] = mpmath.mpf(1)

        def inner(u, v):
            return mpmath.fsum(
                u[i] * v[j] * moments[i + j] for i in range(len(u)) for j in range(len(v))
            )

        for prev in coeffs:
            proj = inner(vec, prev)
            for i in range(len(prev)):
                vec[i] -= proj * prev[i]
        norm = mpmath.sqrt(inner(vec, vec))
        coeffs.append([v / norm for v in vec])
    return coeffs


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_recurrence_matches_gram_schmidt_oracle(name):
    kmax = 10
    moments = _moments_mp(name, 2 * kmax + 1)
    coeffs = _gram_schmidt_mp(moments, kmax)
    fam = FAMILIES[name]
    points = [-0.83, -0.21, 0.44, 0.97] if name != "laguerre" else [0.11, 0.9, 2.3, 6.7]
    for k in range(kmax + 1):
        for x in points:
            oracle = float(mpmath.fsum(c * mpmath.mpf(x) ** i for i, c in enumerate(coeffs[k])))
            got = fam.evaluate(k, x)
            assert abs(got - oracle) <= 1e-12 * max(1.0, abs(oracle))
