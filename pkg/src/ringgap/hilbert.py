"""Basis states of two rings of three-state sites.

Each site holds a trit: 0 and 1 span the qubit subspace, 2 is the mobile
hole state |x>.  A configuration of both rings is stored as a base-3
integer over the 2N trits, ordered left ring sites 1..N then right ring
sites 1..N, with left site 1 least significant.  With this ordering the
full index splits as  index = L + 3^N * R,  so the left/right cut is a
contiguous reshape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

Q0 = 0
Q1 = 1
X = 2

MIN_RING = 3


def _check_ring_size(n: int) -> None:
    if n < MIN_RING:
        raise ValueError(f"ring size must be >= {MIN_RING}, got {n}")


def powers_of_three(m: int) -> np.ndarray:
    return 3 ** np.arange(m, dtype=np.int64)


def encode(trits, n: int | None = None) -> int:
    """Base-3 index of a trit word (left ring first, site 1 least significant)."""
    t = np.asarray(trits, dtype=np.int64)
    if t.ndim != 1:
        raise ValueError("trits must be a flat sequence")
    if n is not None:
        _check_ring_size(n)
        if t.size != 2 * n:
            raise ValueError(f"expected {2 * n} trits, got {t.size}")
    elif t.size % 2 or t.size < 2 * MIN_RING:
        raise ValueError(
            f"need an even number of trits covering two rings of >= {MIN_RING} sites, got {t.size}"
        )
    if np.any((t < 0) | (t > 2)):
        raise ValueError("trit values must be 0, 1 or 2")
    return int(t @ powers_of_three(t.size))


def decode(index: int, n: int) -> np.ndarray:
    """Trit word of a full-space index, inverse of :func:`encode`."""
    _check_ring_size(n)
    if not 0 <= index < 3 ** (2 * n):
        raise ValueError(f"index {index} outside [0, 3^{2 * n})")
    return ((index // powers_of_three(2 * n)) % 3).astype(np.int8)


def trit_table(indices, n_trits: int) -> np.ndarray:
    """Trit digits of many indices at once, shape (len(indices), n_trits)."""
    idx = np.asarray(indices, dtype=np.int64)
    return ((idx[:, None] // powers_of_three(n_trits)[None, :]) % 3).astype(np.int8)


def sector_of(trits) -> tuple[int, int]:
    """Hole counts (a, b) of the left and right ring of a trit word."""
    t = np.asarray(trits)
    if t.size % 2:
        raise ValueError("trit word must cover two equal rings")
    n = t.size // 2
    return int(np.count_nonzero(t[:n] == X)), int(np.count_nonzero(t[n:] == X))


def sector_of_index(index: int, n: int) -> tuple[int, int]:
    return sector_of(decode(index, n))


def sector_dim(n: int, a: int, b: int) -> int:
    """Dimension of the subspace with a holes on the left ring, b on the right."""
    _check_sector(n, a, b)
    return comb(n, a) * 2 ** (n - a) * comb(n, b) * 2 ** (n - b)


def _check_sector(n: int, a: int, b: int) -> None:
    if not (0 <= a <= n and 0 <= b <= n):
        raise ValueError(f"hole counts ({a},{b}) outside [0,{n}]")


@lru_cache(maxsize=None)
def ring_states(n: int, a: int) -> np.ndarray:
    """Sorted base-3 indices of single-ring words with exactly a holes.

    Enumerated combinatorially (hole placements x qubit words), so the cost
    is proportional to the sector size rather than 3^N.
    """
    if not 0 <= a <= n:
        raise ValueError(f"hole count {a} outside [0,{n}]")
    from itertools import combinations

    q = n - a
    qubit_words = ((np.arange(2**q, dtype=np.int64)[:, None] >> np.arange(q)) & 1).astype(
        np.int64
    )
    parts = []
    for holes in combinations(range(n), a):
        rest = np.array([s for s in range(n) if s not in holes], dtype=np.int64)
        base = int(sum(2 * 3**s for s in holes))
        parts.append(base + qubit_words @ 3**rest)
    out = np.sort(np.concatenate(parts))
    out.setflags(write=False)
    return out


def enumerate_sector(n: int, a: int, b: int) -> np.ndarray:
    """Sorted full-space indices of the (a, b) hole sector."""
    _check_ring_size(n)
    _check_sector(n, a, b)
    left = ring_states(n, a)
    right = ring_states(n, b)
    # left varies fastest, so the raveled grid is already sorted
    return (left[None, :] + 3**n * right[:, None]).ravel()


@dataclass(frozen=True)
class Basis:
    """Either the full 3^(2N) space or one (a, b) hole sector, with row lookup."""

    n: int
    sector: tuple[int, int] | None
    indices: np.ndarray | None  # None for the full space

    @property
    def dim(self) -> int:
        if self.indices is None:
            return 3 ** (2 * self.n)
        return int(self.indices.size)

    @property
    def tag(self) -> str:
        if self.sector is None:
            return "full"
        return f"sector({self.sector[0]},{self.sector[1]})"

    def states(self) -> np.ndarray:
        if self.indices is None:
            return np.arange(self.dim, dtype=np.int64)
        return self.indices

    def positions(self, indices) -> np.ndarray:
        """Row numbers of full-space indices within this basis."""
        idx = np.asarray(indices, dtype=np.int64)
        if self.indices is None:
            return idx
        pos = np.searchsorted(self.indices, idx)
        if np.any(pos >= self.indices.size) or np.any(self.indices[pos] != idx):
            raise ValueError("state outside this basis")
        return pos


def full_basis(n: int) -> Basis:
    _check_ring_size(n)
    return Basis(n=n, sector=None, indices=None)


def sector_basis(n: int, a: int, b: int) -> Basis:
    return Basis(n=n, sector=(a, b), indices=enumerate_sector(n, a, b))
