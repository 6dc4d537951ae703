"""Sampling strategies: determinism, distinctness, measure statistics and
preconditioning weights."""

import math

import numpy as np
import pytest

from helpers import standard_families
from quadsub import (
    Beta,
    DomainError,
    Gaussian,
    UsageError,
    chebyshev_weights,
    sample_iid,
    subsample_gauss,
    tensor_rule,
)
from quadsub.design import basis_matrix
from quadsub.indexsets import anisotropic_tensor
from quadsub.sampling import collocation

FAMILIES = standard_families(40)


def test_full_subsample_is_whole_grid():
    rule = tensor_rule([FAMILIES["uniform"]] * 2, (3, 3))
    out = subsample_gauss(rule, 9, seed=5)
    assert out.m == 9
    assert len({tuple(p) for p in out.points}) == 9
    assert out.weights.sum() == pytest.approx(1.0, abs=1e-12)


def test_subsample_weights_are_product_weights():
    rule = tensor_rule([FAMILIES["uniform"], FAMILIES["hermite"]], (4, 3))
    out = subsample_gauss(rule, 7, seed=11)
    for point, weight in zip(out.points, out.weights):
        i = int(np.argmin(np.abs(rule.rules[0].nodes - point[0])))
        j = int(np.argmin(np.abs(rule.rules[1].nodes - point[1])))
        assert weight == pytest.approx(
            rule.rules[0].weights[i] * rule.rules[1].weights[j], rel=1e-12
        )


def test_subsample_without_replacement_property():
    rule = tensor_rule([FAMILIES["uniform"]] * 2, (4, 4))
    for trial in range(1000):
        out = subsample_gauss(rule, 10, seed=trial)
        assert len({tuple(p) for p in out.points}) == 10


def test_subsample_huge_grid_not_materialized():
    # 4^10 grid goes through the rejection path
    rule = tensor_rule([FAMILIES["uniform"]] * 10, (4,) * 10)
    assert rule.grid_size == 4**10
    out = subsample_gauss(rule, 85, seed=0)
    assert out.m == 85
    assert len({tuple(p) for p in out.points}) == 85
    assert np.all(out.weights > 0)


def test_subsample_infeasible_m():
    rule = tensor_rule([FAMILIES["uniform"]], (4,))
    with pytest.raises(UsageError):
        subsample_gauss(rule, 5, seed=0)


def test_seed_determinism():
    rule = tensor_rule([FAMILIES["uniform"]] * 2, (5, 5))
    a = subsample_gauss(rule, 6, seed=42)
    b = subsample_gauss(rule, 6, seed=42)
    assert np.array_equal(a.points, b.points) and np.array_equal(a.weights, b.weights)
    c = sample_iid([Gaussian()] * 3, 100, seed=42)
    d = sample_iid([Gaussian()] * 3, 100, seed=42)
    assert np.array_equal(c.points, d.points)


def test_iid_chebyshev_second_moment():
    out = sample_iid([Beta(-0.5, -0.5)], 100_000, seed=1)
    assert np.mean(out.points**2) == pytest.approx(0.5, abs=0.01)


def test_iid_uniform_mean():
    out = sample_iid([Beta(0.0, 0.0)], 100_000, seed=2)
    assert np.mean(out.points) == pytest.approx(0.0, abs=0.01)


def test_iid_normal_variance():
    out = sample_iid([Gaussian()], 100_000, seed=3)
    assert np.var(out.points) == pytest.approx(1.0, abs=0.02)


def test_iid_beta_density_moments():
    # Beta(gamma=1, delta=1) on [-1,1]: mean 0, E x^2 = 1/5
    out = sample_iid([Beta(1.0, 1.0)], 200_000, seed=4)
    assert np.mean(out.points) == pytest.approx(0.0, abs=0.01)
    assert np.mean(out.points**2) == pytest.approx(0.2, abs=0.01)


def test_chebyshev_weights_values():
    assert chebyshev_weights([[0.0]])[0] == pytest.approx(2 / math.pi, rel=1e-14)
    assert chebyshev_weights([[0.0, 0.0]])[0] == pytest.approx(4 / math.pi**2, rel=1e-14)
    assert chebyshev_weights([[math.sqrt(3) / 2]])[0] == pytest.approx(1 / math.pi, rel=1e-14)


def test_chebyshev_weights_domain():
    with pytest.raises(DomainError):
        chebyshev_weights([[1.0]])
    with pytest.raises(DomainError):
        chebyshev_weights([[0.2, -1.3]])


def test_full_sampling_restores_orthonormality():
    # weighted empirical Gram over the whole grid reproduces the identity
    fams = [FAMILIES["uniform"], FAMILIES["hermite"]]
    rule = tensor_rule(fams, (4, 3))
    out = subsample_gauss(rule, rule.grid_size, seed=9)
    index_set = anisotropic_tensor([3, 2])
    psi = basis_matrix(fams, index_set, out.points)
    gram = psi.T @ (out.weights[:, None] * psi)
    assert np.max(np.abs(gram - np.eye(index_set.size))) < 1e-9


def test_collocation_strategies():
    fams = [FAMILIES["uniform"]] * 2
    marginals = [f.distribution for f in fams]
    rule = tensor_rule(fams, (5, 5))
    for strategy in ("gauss", "random", "pre-chebyshev", "chebyshev", "uniform"):
        out = collocation(strategy, marginals, 10, seed=3, rule=rule)
        assert out.m == 10 and out.strategy == strategy
        if strategy == "pre-chebyshev":
            assert np.allclose(out.weights, chebyshev_weights(out.points))
        elif strategy != "gauss":
            assert np.all(out.weights == 1.0)


def test_collocation_rejects_unbounded_preconditioning():
    with pytest.raises(UsageError):
        collocation("pre-chebyshev", [Gaussian()], 5, seed=0)
    with pytest.raises(UsageError):
        collocation("uniform", [Gaussian()], 5, seed=0)
    with pytest.raises(UsageError):
        collocation("warp", [Gaussian()], 5, seed=0)
