"""Collocation point generators for the recovery strategies.

Strategies:

* ``gauss``          - M grid points drawn uniformly without replacement
                       from a tensor Gauss grid, product quadrature weights.
* ``random``         - iid draws from the orthogonality measure, unit weights.
* ``pre-chebyshev``  - iid arcsine draws with the (2/pi)^d prod sqrt(1-x^2)
                       preconditioning weights.
* ``chebyshev``      - iid arcsine draws, unit weights.
* ``uniform``        - iid uniform draws on [-1,1]^d, unit weights.

All draws are deterministic given the seed (numpy PCG64 streams).
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError, UsageError
from .families import Beta, Exponential, Gaussian, Marginal
from .quadrature import TensorRule

STRATEGIES = ("gauss", "random", "pre-chebyshev", "chebyshev", "uniform")

# below this grid size a permutation of the materialized index range is
# cheaper than rejection sampling
_MATERIALIZE_LIMIT = 1_000_000

SeedLike = Union[int, Sequence[int], np.random.SeedSequence, np.random.Generator]


def _generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, eq=False)
class SampleSet:
    """M collocation points with their preconditioning weights.

    ``grid_sizes`` is set only for the gauss strategy and records the
    tensor grid the points were subsampled from.
    """

    points: np.ndarray
    weights: np.ndarray
    strategy: str
    seed: object
    grid_sizes: Optional[tuple] = None

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def subsample_gauss(rule: TensorRule, m: int, seed: SeedLike) -> SampleSet:
    """Draw m distinct points uniformly from the tensor Gauss grid.

    The grid is never materialized when large: multi-indices are drawn
    directly and duplicates rejected through a hash set.
    """
    total = rule.grid_size
    if not 1 <= m <= total:
        raise UsageError(f"sample count M={m} outside 1..grid size {total}")
    rng = _generator(seed)
    sizes = rule.sizes
    if total <= _MATERIALIZE_LIMIT:
        flat = rng.choice(total, size=m, replace=False)
        idx = np.column_stack(np.unravel_index(flat, sizes))
    else:
        seen = set()
        picks = []
        while len(picks) < m:
            cand = tuple(int(rng.integers(0, n)) for n in sizes)
            if cand not in seen:
                seen.add(cand)
                picks.append(cand)
        idx = np.array(picks, dtype=np.int64)
    points = rule.points_from_indices(idx)
    weights = rule.weights_from_indices(idx)
    return SampleSet(points, weights, "gauss", seed, grid_sizes=sizes)


def _draw_marginal(dist: Marginal, m: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(dist, Beta):
        if dist == Beta(-0.5, -0.5):
            # arcsine law via the cosine transform of a uniform
            return np.cos(math.pi * rng.uniform(0.0, 1.0, size=m))
        if dist == Beta(0.0, 0.0):
            return rng.uniform(-1.0, 1.0, size=m)
        return 2.0 * rng.beta(dist.gamma + 1.0, dist.delta + 1.0, size=m) - 1.0
    if isinstance(dist, Gaussian):
        return rng.standard_normal(size=m)
    if isinstance(dist, Exponential):
        return rng.standard_exponential(size=m)
    raise UsageError(f"unsupported marginal {dist!r} for iid sampling")


def sample_iid(marginals: Sequence[Marginal], m: int, seed: SeedLike,
               strategy: str = "random") -> SampleSet:
    """M iid vectors with independent components drawn per-dimension."""
    if m < 1:
        raise UsageError(f"sample count M={m} must be >= 1")
    rng = _generator(seed)
    cols = [_draw_marginal(dist, m, rng) for dist in marginals]
    points = np.column_stack(cols)
    return SampleSet(points, np.ones(m), strategy, seed)


def chebyshev_weights(points: np.ndarray) -> np.ndarray:
    """Preconditioning weights (2/pi)^d prod_i sqrt(1 - x_i^2) per point."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if np.any(np.abs(points) >= 1.0):
        worst = float(np.max(np.abs(points)))
        raise DomainError(f"chebyshev weights need |x_i| < 1, got max |x_i| = {worst}")
    d = points.shape[1]
    return (2.0 / math.pi) ** d * np.prod(np.sqrt(1.0 - points**2), axis=1)


def collocation(strategy: str, marginals: Sequence[Marginal], m: int, seed: SeedLike,
                rule: Optional[TensorRule] = None) -> SampleSet:
    """Build the sample set for one named strategy."""
    if strategy == "gauss":
        if rule is None:
            raise UsageError("gauss strategy needs a tensor rule to subsample")
        return subsample_gauss(rule, m, seed)
    if strategy == "random":
        return sample_iid(marginals, m, seed, strategy="random")
    bounded = all(isinstance(dist, Beta) for dist in marginals)
    if strategy in ("pre-chebyshev", "chebyshev"):
        if not bounded:
            raise UsageError(f"strategy '{strategy}' needs bounded marginals on [-1,1]")
        arcsine = [Beta(-0.5, -0.5)] * len(marginals)
        out = sample_iid(arcsine, m, seed, strategy=strategy)
        if strategy == "pre-chebyshev":
            return SampleSet(out.points, chebyshev_weights(out.points), strategy, seed)
        return out
    if strategy == "uniform":
        if not bounded:
            raise UsageError("strategy 'uniform' needs bounded marginals on [-1,1]")
        flat = [Beta(0.0, 0.0)] * len(marginals)
        return sample_iid(flat, m, seed, strategy="uniform")
    raise UsageError(f"unknown strategy '{strategy}' (choose from {', '.join(STRATEGIES)})")
