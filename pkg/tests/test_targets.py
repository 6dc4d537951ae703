"""Target functions: sparse synthetics, the decay ODE, and exact
representability of the analytic test functions."""

import math

import numpy as np
import pytest

from helpers import standard_families
from quadsub import (
    Gaussian,
    UsageError,
    build_family,
    make_sparse_target,
    make_target,
    ode_qoi,
    ode_solution,
    project_full_grid,
    tensor_rule,
    total_degree,
)
from quadsub.design import basis_matrix
from quadsub.targets import (
    hermite_exp_coefficients,
    memoize_pointwise,
    ode_moment_exact,
    reference_coefficients,
    rosenbrock_reference,
)

FAMILIES = standard_families(80)


# -- sparse synthetic targets ---------------------------------------------------

def test_sparse_target_exact_support_size():
    index_set = total_degree(10, 3)
    fams = [FAMILIES["uniform"]] * 10
    target = make_sparse_target(index_set, fams, 5, seed=4)
    assert index_set.size == 286
    assert np.count_nonzero(target.coefficients) == 5


def test_sparse_target_on_constant_index_is_constant():
    index_set = total_degree(2, 2)
    fams = [FAMILIES["uniform"]] * 2
    rng = np.random.default_rng(10)
    for _ in range(20):
        target = make_sparse_target(index_set, fams, 1, rng)
        if target.coefficients[0] != 0.0:
            pts = rng.uniform(-1, 1, size=(7, 2))
            vals = target.evaluate(pts)
            assert np.allclose(vals, target.coefficients[0], atol=1e-12)
            break
    else:
        pytest.fail("constant support never drawn")


def test_sparse_target_projection_recovers_coefficients():
    fams = [FAMILIES["hermite"]] * 2
    index_set = total_degree(2, 4)
    target = make_sparse_target(index_set, fams, 3, seed=99)
    rule = tensor_rule(fams, tuple(index_set.envelope()))
    projected = project_full_grid(fams, rule, index_set, target.evaluate)
    assert np.max(np.abs(projected - target.coefficients)) < 1e-9


def test_sparse_target_validates_sparsity():
    index_set = total_degree(2, 1)
    fams = [FAMILIES["uniform"]] * 2
    with pytest.raises(UsageError):
        make_sparse_target(index_set, fams, 4, seed=0)


def test_sparse_target_seed_reproducible():
    index_set = total_degree(3, 3)
    fams = [FAMILIES["uniform"]] * 3
    a = make_sparse_target(index_set, fams, 4, seed=7)
    b = make_sparse_target(index_set, fams, 4, seed=7)
    assert np.array_equal(a.coefficients, b.coefficients)


# -- decay ODE -------------------------------------------------------------------

def test_ode_initial_condition():
    assert np.allclose(ode_solution(-0.65, 0.0, [0.0, 1.0, -2.0]), 1.0)
    assert np.allclose(ode_solution(3.0, 0.0, [5.0]), 1.0)


def test_ode_examples():
    val = ode_solution(-0.65, 1.0, 1.0)[0]
    assert val == pytest.approx(math.exp(0.65), rel=1e-9)
    assert ode_solution(-0.65, 1.0, 0.0)[0] == pytest.approx(1.0, abs=1e-14)


def test_ode_accuracy_against_analytic():
    # across |beta x t| <= 20: absolute accuracy 1e-8 wherever the solution
    # is bounded, relative accuracy everywhere (the growing side reaches
    # e^20 ~ 5e8, whose double-precision spacing alone is 6e-8, so the
    # absolute bound is only meaningful on the bounded side)
    beta, t = -0.65, 1.0
    x = np.linspace(-20 / 0.65, 20 / 0.65, 41)
    got = ode_solution(beta, t, x)
    expected = np.exp(-beta * x * t)
    rel = np.abs(got - expected) / expected
    assert np.max(rel) < 1e-7
    bounded = expected <= 1.0
    assert np.max(np.abs(got[bounded] - expected[bounded])) < 1e-8


def test_ode_qoi_examples():
    e1 = np.zeros(10)
    e1[0] = 1.0
    assert ode_qoi(e1) == 1.0
    coeffs = hermite_exp_coefficients(0.65, 60)
    assert ode_qoi(coeffs) == pytest.approx(math.exp(0.845), rel=1e-12)
    assert ode_moment_exact(-0.65, 1.0) == pytest.approx(math.exp(0.845), rel=1e-14)
    # adding squared coefficients only increases the moment
    partial = [ode_qoi(coeffs[:k]) for k in (1, 3, 10, 30)]
    assert all(a <= b for a, b in zip(partial, partial[1:]))


def test_hermite_closed_form_matches_projection():
    fam = build_family(Gaussian(), 80)
    rule = tensor_rule([fam], (40,))
    index_set = total_degree(1, 15)

    def f(points):
        return np.exp(0.65 * points[:, 0])

    projected = project_full_grid([fam], rule, index_set, f)
    closed = hermite_exp_coefficients(0.65, 16)
    assert np.max(np.abs(projected - closed)) < 1e-8


# -- analytic targets --------------------------------------------------------------

def test_registry_names_and_defaults():
    target = make_target("monomial1010")
    assert target.d == 2 and target.degree == 20
    assert make_target("rosenbrock").d == 10
    assert make_target("gaussbump").degree == 25
    assert make_target("explinear").degree == 24
    with pytest.raises(UsageError):
        make_target("nope")


def test_monomial_exactly_representable_in_t20():
    fams = [FAMILIES["uniform"]] * 2
    target = make_target("monomial1010")
    index_set = total_degree(2, 20)
    rule = tensor_rule(fams, tuple(index_set.envelope()))
    coeffs = project_full_grid(fams, rule, index_set, target.evaluate)
    samples_eval = basis_matrix(fams, index_set, _grid_points(rule)) @ coeffs
    exact = target.evaluate(_grid_points(rule))
    assert np.max(np.abs(samples_eval - exact)) < 1e-8


def _grid_points(rule):
    from quadsub.design import full_grid_samples

    return full_grid_samples(rule).points


def test_rosenbrock_reference_reproduces_function():
    fam = FAMILIES["uniform"]
    index_set = total_degree(10, 4)
    coeffs = rosenbrock_reference(index_set, fam)
    target = make_target("rosenbrock")
    # check the expansion on a random subsample of the enveloping grid
    rule = tensor_rule([fam] * 10, tuple(index_set.envelope()))
    rng = np.random.default_rng(3)
    idx = np.column_stack([rng.integers(0, 5, size=3000) for _ in range(10)])
    points = rule.points_from_indices(idx)
    approx = basis_matrix([fam] * 10, index_set, points) @ coeffs
    exact = target.evaluate(points)
    assert np.max(np.abs(approx - exact)) < 1e-8


def test_reference_coefficients_dispatch():
    fams = [FAMILIES["uniform"]] * 2
    index_set = total_degree(2, 4)
    target = make_sparse_target(index_set, fams, 2, seed=1)
    rule = tensor_rule(fams, tuple(index_set.envelope()))
    ref = reference_coefficients(target, fams, index_set, rule)
    assert ref is target.coefficients
    other_set = total_degree(2, 3)
    with pytest.raises(UsageError):
        reference_coefficients(target, fams, other_set, rule)


def test_memoize_pointwise_counts_evaluations():
    calls = {"n": 0}

    def f(points):
        calls["n"] += points.shape[0]
        return points[:, 0] ** 2

    memo = memoize_pointwise(f)
    pts = np.array([[1.0], [2.0], [1.0]])
    out = memo(pts)
    assert np.allclose(out, [1.0, 4.0, 1.0])
    assert calls["n"] == 2
    memo(pts)
    assert calls["n"] == 2
