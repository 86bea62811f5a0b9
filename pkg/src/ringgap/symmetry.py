"""Invariant subspaces of the one-hole-per-ring sector.

With one hole in each ring, a basis of the sector is obtained by fixing a
list of N-1 Bell states shared between corresponding qubit pairs of the
two rings (holes parked at site N of both rings) and then shifting the
holes to arbitrary positions (a, b).  The Hamiltonian never changes the
Bell list except by cyclic shifts, so the sector splits into invariant
subspaces labeled by necklaces: Bell lists modulo rotation.

Each necklace of period p yields a p*N^2-node graph model: p N-by-N grids
of hole positions chained cyclically by the joint junction hop, with a
diagonal penalty wherever the front Bell state of the shifted list is not
the singlet.  That graph depends on the necklace only through its period
and the set of penalized shifts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .hilbert import X, Basis, encode, sector_basis
from .hamiltonian import SparseOperator

PSI_MINUS = 0
PSI_PLUS = 1
PHI_PLUS = 2
PHI_MINUS = 3

BELL_NAMES = ("psi_minus", "psi_plus", "phi_plus", "phi_minus")

# two product-basis branches (left qubit, right qubit, sign) per Bell state,
# common amplitude 1/sqrt(2)
_BELL_BRANCHES = {
    PSI_MINUS: ((0, 1, 1.0), (1, 0, -1.0)),
    PSI_PLUS: ((0, 1, 1.0), (1, 0, 1.0)),
    PHI_PLUS: ((0, 0, 1.0), (1, 1, 1.0)),
    PHI_MINUS: ((0, 0, 1.0), (1, 1, -1.0)),
}

ENUMERATION_CAP = 9  # necklace enumeration walks 4^(N-1) lists


def _validate_bells(bells) -> tuple[int, ...]:
    bells = tuple(int(b) for b in bells)
    if not bells:
        raise ValueError("Bell list must be nonempty")
    if any(b not in (0, 1, 2, 3) for b in bells):
        raise ValueError("Bell indices must be 0..3")
    return bells


def period(bells) -> int:
    """Smallest cyclic shift returning the list to itself (divides its length)."""
    bells = _validate_bells(bells)
    length = len(bells)
    for d in range(1, length + 1):
        if length % d == 0 and bells[d:] + bells[:d] == bells:
            return d
    raise AssertionError("unreachable: full rotation always matches")


def canonical_rotation(bells) -> tuple[int, ...]:
    bells = _validate_bells(bells)
    return min(bells[i:] + bells[:i] for i in range(len(bells)))


@dataclass(frozen=True)
class NecklaceClass:
    """One invariant subspace: a Bell list, its rotation class, period, and
    the shifts at which the front Bell state is not the singlet."""

    n: int
    bells: tuple[int, ...]
    representative: tuple[int, ...]
    p: int
    bad_set: frozenset[int]

    @property
    def dim(self) -> int:
        return self.p * self.n**2

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "representative": list(self.representative),
            "p": self.p,
            "bad_set": sorted(self.bad_set),
            "dim": self.dim,
        }


def class_of(bells, n: int | None = None) -> NecklaceClass:
    """Invariant-subspace signature of a Bell list (as given, not rotated)."""
    bells = _validate_bells(bells)
    if n is None:
        n = len(bells) + 1
    elif len(bells) != n - 1:
        raise ValueError(f"expected {n - 1} Bell states, got {len(bells)}")
    p = period(bells)
    bad = frozenset(r for r in range(p) if bells[r] != PSI_MINUS)
    return NecklaceClass(
        n=n, bells=bells, representative=canonical_rotation(bells), p=p, bad_set=bad
    )


def singlet_class(n: int) -> NecklaceClass:
    return class_of((PSI_MINUS,) * (n - 1))


def necklace_classes(n: int, enumeration_cap: int = ENUMERATION_CAP) -> list[NecklaceClass]:
    """All rotation classes of Bell lists of length N-1, one representative each."""
    if n < 2:
        raise ValueError("need at least one Bell pair (n >= 2)")
    if n > enumeration_cap:
        raise CapacityError(
            f"necklace enumeration walks 4^{n - 1} lists; capped at n <= {enumeration_cap}. "
            "For larger rings build effective operators from (p, bad_set) signatures."
        )
    reps = {canonical_rotation(bells) for bells in itertools.product(range(4), repeat=n - 1)}
    return [class_of(rep, n) for rep in sorted(reps)]


def node_index(n: int, a: int, b: int, r: int) -> int:
    """Flat index of the graph node (a, b, r): r-major, then a, then b."""
    return (r * n + (a - 1)) * n + (b - 1)


def build_effective(n: int, p: int, bad_set, basis_tag: str | None = None) -> SparseOperator:
    """Graph-walk matrix of HL + HR + HB + HP on one invariant subspace.

    Nodes are hole positions (a, b) in 1..N and a shift index r in 0..p-1.
    HL/HR give path-Laplacian couplings in a and b within each grid, HB
    links (N, N, r) to (1, 1, r+1 mod p), and HP adds a unit diagonal where
    a > 1, b > 1 and r is a penalized shift.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if p < 1:
        raise ValueError("period must be positive")
    bad = frozenset(int(r) for r in bad_set)
    if any(not 0 <= r < p for r in bad):
        raise ValueError("bad shifts must lie in 0..p-1")
    dim = p * n * n
    weight = np.full(n, 2.0)
    weight[0] = weight[-1] = 1.0
    a_grid, b_grid = np.meshgrid(np.arange(1, n + 1), np.arange(1, n + 1), indexing="ij")
    grid_diag = (weight[a_grid - 1] + weight[b_grid - 1]).ravel()
    grid_diag[node_index(n, n, n, 0)] += 1.0  # junction penalty at (N, N)
    grid_diag[node_index(n, 1, 1, 0)] += 1.0  # and at (1, 1)
    penalty = ((a_grid > 1) & (b_grid > 1)).astype(np.float64).ravel()

    rows, cols, vals = [], [], []
    base = np.arange(n * n, dtype=np.int64)
    for r in range(p):
        offset = r * n * n
        rows.append(base + offset)
        cols.append(base + offset)
        vals.append(grid_diag + (penalty if r in bad else 0.0))
        # hops in a: (a, b) <-> (a+1, b), flat step n
        src = (base.reshape(n, n)[:-1, :]).ravel() + offset
        for step in (n,):
            rows.append(src)
            cols.append(src + step)
            vals.append(np.full(src.size, -1.0))
        # hops in b: (a, b) <-> (a, b+1), flat step 1
        src = (base.reshape(n, n)[:, :-1]).ravel() + offset
        rows.append(src)
        cols.append(src + 1)
        vals.append(np.full(src.size, -1.0))
        # junction hop to the next grid
        rows.append(np.array([node_index(n, n, n, r)], dtype=np.int64))
        cols.append(np.array([node_index(n, 1, 1, (r + 1) % p)], dtype=np.int64))
        vals.append(np.array([-1.0]))
    if basis_tag is None:
        basis_tag = f"effective(n={n},p={p},bad={sorted(bad)})"
    return SparseOperator.from_upper_entries(
        dim, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), basis_tag
    )


def effective_operator(cls: NecklaceClass) -> SparseOperator:
    return build_effective(cls.n, cls.p, cls.bad_set)


def _shift_hole(word: list[int], site: int) -> list[int]:
    """Move the hole from the last site to `site`, shifting the rest up."""
    return word[: site - 1] + [X] + word[site - 1 : -1]


def embed_node(
    cls: NecklaceClass, a: int, b: int, r: int, basis: Basis | None = None
) -> np.ndarray:
    """Graph node (a, b, r) expanded in the computational basis of the
    one-hole-per-ring sector: holes shifted to sites a and b over the Bell
    list rotated by r."""
    n = cls.n
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"hole positions ({a},{b}) outside 1..{n}")
    if not 0 <= r < cls.p:
        raise ValueError(f"shift {r} outside 0..{cls.p - 1}")
    if basis is None:
        basis = sector_basis(n, 1, 1)
    if basis.sector != (1, 1) or basis.n != n:
        raise ValueError("embedding targets the (1,1) sector basis")
    rotated = cls.bells[r:] + cls.bells[:r]
    amps = []
    indices = []
    for branch in itertools.product(range(2), repeat=n - 1):
        amp = 1.0
        left, right = [], []
        for bell, choice in zip(rotated, branch):
            ql, qr, sign = _BELL_BRANCHES[bell][choice]
            amp *= sign
            left.append(ql)
            right.append(qr)
        left = _shift_hole(left + [X], a)
        right = _shift_hole(right + [X], b)
        amps.append(amp)
        indices.append(encode(left + right, n))
    vec = np.zeros(basis.dim)
    vec[basis.positions(np.array(indices, dtype=np.int64))] = np.array(amps) * 2.0 ** (
        -(n - 1) / 2.0
    )
    return vec
