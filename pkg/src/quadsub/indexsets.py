"""Multi-index sets with a fixed, reproducible enumeration.

Total-degree sets are ordered graded-lexicographically: degree blocks in
increasing total degree, and within a block the leading component
decreasing.  Tensor sets reuse the same within-block convention.
"""

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, UsageError

# refuse index sets that would not fit comfortably in memory
_MAX_SET_SIZE = 20_000_000


@dataclass(frozen=True, eq=False)
class MultiIndexSet:
    """Ordered finite subset of N_0^d with a bijective enumeration."""

    d: int
    kind: str
    order: tuple
    indices: np.ndarray
    _lookup: dict = field(repr=False)

    @property
    def size(self) -> int:
        return self.indices.shape[0]

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, j: int) -> tuple:
        return tuple(int(v) for v in self.indices[j])

    def __iter__(self) -> Iterator[tuple]:
        for row in self.indices:
            yield tuple(int(v) for v in row)

    def index_of(self, k) -> int:
        """Position of multi-index k in the enumeration."""
        key = tuple(int(v) for v in k)
        try:
            return self._lookup[key]
        except KeyError:
            raise UsageError(f"multi-index {key} not in the set") from None

    def __contains__(self, k) -> bool:
        return tuple(int(v) for v in k) in self._lookup

    def envelope(self) -> np.ndarray:
        """Smallest n (componentwise) with every index below n, i.e.
        1 + componentwise maximum."""
        if self.size == 0:
            raise UsageError("envelope of an empty set is undefined")
        return self.indices.max(axis=0) + 1


def _make(d: int, kind: str, order: tuple, rows: np.ndarray) -> MultiIndexSet:
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    rows.setflags(write=False)
    lookup = {tuple(int(v) for v in row): j for j, row in enumerate(rows)}
    return MultiIndexSet(d, kind, order, rows, lookup)


def _degree_block(budget: int, d: int) -> list:
    """All multi-indices of total degree exactly ``budget``, leading
    component decreasing, recursively in the remaining components."""
    if d == 1:
        return [(budget,)]
    out = []
    for lead in range(budget, -1, -1):
        for rest in _degree_block(budget - lead, d - 1):
            out.append((lead,) + rest)
    return out


def total_degree(d: int, n: int) -> MultiIndexSet:
    """Total-degree set: all k with |k| <= n, size C(d+n, n)."""
    if d < 1:
        raise UsageError(f"dimension d={d} must be >= 1")
    if n < 0:
        raise UsageError(f"degree n={n} must be >= 0")
    size = math.comb(d + n, n)
    if size > _MAX_SET_SIZE:
        raise CapacityError(f"total-degree set of size {size} exceeds capacity {_MAX_SET_SIZE}")
    rows = [k for g in range(n + 1) for k in _degree_block(g, d)]
    return _make(d, "total-degree", (n,), np.array(rows, dtype=np.int64))


def tensor(d: int, n: int) -> MultiIndexSet:
    """Isotropic tensor set: all k with max_i k_i <= n, size (n+1)^d."""
    return anisotropic_tensor([n] * d)


def anisotropic_tensor(n: Sequence[int]) -> MultiIndexSet:
    """Anisotropic tensor set: all k with k_i <= n_i per dimension."""
    n = [int(v) for v in n]
    d = len(n)
    if d < 1:
        raise UsageError("need at least one dimension")
    if any(v < 0 for v in n):
        raise UsageError(f"degrees must be >= 0, got {tuple(n)}")
    size = math.prod(v + 1 for v in n)
    if size > _MAX_SET_SIZE:
        raise CapacityError(f"tensor set of size {size} exceeds capacity {_MAX_SET_SIZE}")
    rows = np.stack(
        np.meshgrid(*[np.arange(v + 1) for v in n], indexing="ij"), axis=-1
    ).reshape(-1, d)
    # order by total degree then leading component decreasing, matching
    # the total-degree convention so one set embeds in the other
    keys = sorted(range(size), key=lambda j: (int(rows[j].sum()), tuple(-rows[j])))
    kind = "tensor" if len(set(n)) == 1 else "anisotropic-tensor"
    return _make(d, kind, tuple(n), rows[keys])
