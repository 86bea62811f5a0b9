"""Sparse assembly of the two-ring Hamiltonian and the brick-chain mapping.

The model is a sum of five real-symmetric terms:

* HL / HR  -- hole hopping along the left / right ring (open segment 1..N),
* HB       -- joint hopping of both holes across the (N,1) junction,
* HP       -- projector penalizing non-singlet qubit pairs at the two
              site-1 positions,
* HV       -- hole self-energy (bonus V1 per hole) plus an adjacent-hole
              penalty V2 per ring, with a constant V1 shift per ring.

Every term conserves the number of holes per ring, so operators can be
built directly on one hole sector.  Assembly streams local rules over
basis rows, producing coordinate entries that are coalesced once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .hilbert import (
    X,
    Basis,
    _check_ring_size,
    full_basis,
    powers_of_three,
    trit_table,
)

TERM_KINDS = ("HL", "HR", "HB", "HP", "HV")


@dataclass(frozen=True)
class ModelParams:
    """Ring size and the two hole-potential coefficients.

    Defaults are v1 = 1/N^4 and v2 = 1, the values for which the model has a
    unique zero-energy ground state.
    """

    n: int
    v1: float | None = None
    v2: float = 1.0

    def __post_init__(self):
        _check_ring_size(self.n)
        if self.v1 is None:
            object.__setattr__(self, "v1", 1.0 / self.n**4)
        if self.v1 < 0 or self.v2 < 0:
            raise ValueError("v1 and v2 must be non-negative")


@dataclass
class SparseOperator:
    """Real-symmetric operator stored as its upper triangle in coordinate form."""

    dim: int
    row: np.ndarray
    col: np.ndarray
    val: np.ndarray
    basis_tag: str = "full"

    @property
    def nnz(self) -> int:
        return int(self.val.size)

    def to_csr(self) -> sp.csr_matrix:
        """Full symmetric matrix."""
        upper = sp.coo_matrix(
            (self.val, (self.row, self.col)), shape=(self.dim, self.dim)
        ).tocsr()
        return (upper + sp.triu(upper, k=1).T).tocsr()

    def to_dense(self) -> np.ndarray:
        return self.to_csr().toarray()

    def diagonal(self) -> np.ndarray:
        mask = self.row == self.col
        diag = np.zeros(self.dim)
        diag[self.row[mask]] = self.val[mask]
        return diag

    @classmethod
    def from_symmetric_entries(cls, dim, rows, cols, vals, basis_tag="full"):
        """Coalesce entries given for *both* triangles of a symmetric matrix."""
        m = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
        m.sum_duplicates()
        m.eliminate_zeros()
        upper = sp.triu(m).tocoo()
        return cls(
            dim=dim,
            row=upper.row.astype(np.int64),
            col=upper.col.astype(np.int64),
            val=upper.data.astype(np.float64),
            basis_tag=basis_tag,
        )

    @classmethod
    def from_upper_entries(cls, dim, rows, cols, vals, basis_tag="full"):
        """Coalesce entries where each matrix element appears exactly once."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        swap = rows > cols
        r = np.where(swap, cols, rows)
        c = np.where(swap, rows, cols)
        m = sp.coo_matrix((vals, (r, c)), shape=(dim, dim)).tocsr()
        m.sum_duplicates()
        m.eliminate_zeros()
        u = m.tocoo()
        return cls(
            dim=dim,
            row=u.row.astype(np.int64),
            col=u.col.astype(np.int64),
            val=u.data.astype(np.float64),
            basis_tag=basis_tag,
        )

    def save(self, path) -> None:
        """Write the coordinate-list text format: header `dim nnz basis_tag`."""
        with open(path, "w") as fh:
            fh.write(f"{self.dim} {self.nnz} {self.basis_tag}\n")
            for r, c, v in zip(self.row, self.col, self.val):
                fh.write(f"{r} {c} {v:.17g}\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            dim_s, nnz_s, tag = fh.readline().split(maxsplit=2)
            dim, nnz = int(dim_s), int(nnz_s)
            rows = np.empty(nnz, dtype=np.int64)
            cols = np.empty(nnz, dtype=np.int64)
            vals = np.empty(nnz, dtype=np.float64)
            for i in range(nnz):
                r, c, v = fh.readline().split()
                rows[i], cols[i], vals[i] = int(r), int(c), float(v)
        return cls(dim=dim, row=rows, col=cols, val=vals, basis_tag=tag.strip())


def _hop_entries(idx, trits, p, q, positions):
    """Entries of -(F + F^T) for the hole hop between trit slots p and q."""
    mask = trits[:, p] == X
    if not mask.any():
        return [], [], []
    src = np.flatnonzero(mask)
    tq = trits[mask, q].astype(np.int64)
    dst_idx = idx[mask] + (tq - 2) * 3**p + (2 - tq) * 3**q
    dst = positions(dst_idx)
    rows = np.concatenate([dst, src])
    cols = np.concatenate([src, dst])
    vals = np.full(rows.size, -1.0)
    return [rows], [cols], [vals]


def _ring_walk_entries(n, idx, trits, offset, positions):
    """One ring's open-segment hopping term (sites 1..N, no wraparound hop)."""
    rows, cols, vals = [], [], []
    weight = np.full(n, 2.0)
    weight[0] = weight[-1] = 1.0
    diag = (trits[:, offset : offset + n] == X) @ weight
    nz = np.flatnonzero(diag)
    rows.append(nz)
    cols.append(nz)
    vals.append(diag[nz])
    for i in range(n - 1):
        r, c, v = _hop_entries(idx, trits, offset + i, offset + i + 1, positions)
        rows += r
        cols += c
        vals += v
    return rows, cols, vals


def _bridge_entries(n, idx, trits, positions):
    """Joint hole hop of both rings between sites N and 1."""
    l1, ln, r1, rn = 0, n - 1, n, 2 * n - 1
    rows, cols, vals = [], [], []
    at_n = (trits[:, ln] == X) & (trits[:, rn] == X)
    at_1 = (trits[:, l1] == X) & (trits[:, r1] == X)
    diag = at_n.astype(np.float64) + at_1.astype(np.float64)
    nz = np.flatnonzero(diag)
    rows.append(nz)
    cols.append(nz)
    vals.append(diag[nz])
    if at_n.any():
        src = np.flatnonzero(at_n)
        tl = trits[at_n, l1].astype(np.int64)
        tr = trits[at_n, r1].astype(np.int64)
        dst_idx = (
            idx[at_n]
            + (tl - 2) * 3**ln
            + (2 - tl) * 3**l1
            + (tr - 2) * 3**rn
            + (2 - tr) * 3**r1
        )
        dst = positions(dst_idx)
        rows.append(np.concatenate([dst, src]))
        cols.append(np.concatenate([src, dst]))
        vals.append(np.full(2 * src.size, -1.0))
    return rows, cols, vals


def _projector_entries(n, idx, trits, positions):
    """Penalty on qubit pairs at the two site-1 slots unless they form a singlet."""
    t0 = trits[:, 0]
    tn = trits[:, n]
    rows, cols, vals = [], [], []
    qq = (t0 != X) & (tn != X)
    diag = np.where(t0 == tn, 1.0, 0.5) * qq
    nz = np.flatnonzero(diag)
    rows.append(nz)
    cols.append(nz)
    vals.append(diag[nz])
    for lo, hi in ((0, 1), (1, 0)):
        mask = (t0 == lo) & (tn == hi)
        if mask.any():
            src = np.flatnonzero(mask)
            dst_idx = idx[mask] + (hi - lo) * 1 + (lo - hi) * 3**n
            rows.append(positions(dst_idx))
            cols.append(src)
            vals.append(np.full(src.size, 0.5))
    return rows, cols, vals


def _hole_potential_entries(n, params, trits):
    """Diagonal hole potential: per ring, v1 - v1*(holes) + v2*(adjacent pairs)."""
    diag = np.zeros(trits.shape[0])
    for offset in (0, n):
        ring = trits[:, offset : offset + n] == X
        count = ring.sum(axis=1)
        adjacent = (ring & np.roll(ring, -1, axis=1)).sum(axis=1)
        diag += params.v1 - params.v1 * count + params.v2 * adjacent
    nz = np.flatnonzero(diag)
    return [nz], [nz], [diag[nz]]


def _term_entries(kind, params, basis, idx, trits):
    n = params.n
    if kind == "HL":
        return _ring_walk_entries(n, idx, trits, 0, basis.positions)
    if kind == "HR":
        return _ring_walk_entries(n, idx, trits, n, basis.positions)
    if kind == "HB":
        return _bridge_entries(n, idx, trits, basis.positions)
    if kind == "HP":
        return _projector_entries(n, idx, trits, basis.positions)
    if kind == "HV":
        return _hole_potential_entries(n, params, trits)
    raise ValueError(f"unknown term kind {kind!r}; expected one of {TERM_KINDS}")


def build_term(kind, params: ModelParams, basis: Basis | None = None) -> SparseOperator:
    """One of the five Hamiltonian terms on the full space or a hole sector."""
    basis = basis if basis is not None else full_basis(params.n)
    if basis.n != params.n:
        raise ValueError("basis ring size does not match params")
    idx = basis.states()
    trits = trit_table(idx, 2 * params.n)
    rows, cols, vals = _term_entries(kind, params, basis, idx, trits)
    return SparseOperator.from_symmetric_entries(
        basis.dim,
        np.concatenate(rows) if rows else np.empty(0, dtype=np.int64),
        np.concatenate(cols) if cols else np.empty(0, dtype=np.int64),
        np.concatenate(vals) if vals else np.empty(0),
        basis_tag=basis.tag,
    )


def assemble(params: ModelParams, basis: Basis | None = None) -> SparseOperator:
    """The full Hamiltonian HL + HR + HB + HP + HV on the requested basis."""
    basis = basis if basis is not None else full_basis(params.n)
    if basis.n != params.n:
        raise ValueError("basis ring size does not match params")
    idx = basis.states()
    trits = trit_table(idx, 2 * params.n)
    rows, cols, vals = [], [], []
    for kind in TERM_KINDS:
        r, c, v = _term_entries(kind, params, basis, idx, trits)
        rows += r
        cols += c
        vals += v
    return SparseOperator.from_symmetric_entries(
        basis.dim,
        np.concatenate(rows),
        np.concatenate(cols),
        np.concatenate(vals),
        basis_tag=basis.tag,
    )


# --- brick-chain mapping -------------------------------------------------
#
# For even N the two rings fold into a chain of N nine-state columns, each
# column a vertical pair of original sites.  Each ring is folded onto half
# the chain so that sites i and N+1-i share a column, with the (1, N)
# columns of the two rings meeting in the middle of the chain; every
# Hamiltonian term then acts on at most two adjacent columns.


def brick_site_map(n: int) -> np.ndarray:
    """Slot map of the folded chain: entry s is the original trit slot held
    by chain slot s, where chain position j occupies slots 2j (top) and
    2j+1 (bottom).  Top is the lower original site index of the column."""
    if n % 2 or n < 4:
        raise ValueError("brick folding needs an even ring size >= 4")
    half = n // 2
    slots = []
    for j in range(half):  # left ring, junction column at chain position half-1
        top_site = half - j
        bottom_site = half + 1 + j
        slots += [top_site - 1, bottom_site - 1]
    for j in range(half):  # right ring, junction column at chain position half
        top_site = j + 1
        bottom_site = n - j
        slots += [n + top_site - 1, n + bottom_site - 1]
    return np.array(slots, dtype=np.int64)


def chain_positions(n: int) -> np.ndarray:
    """Chain column of each original trit slot under the brick folding."""
    slot_map = brick_site_map(n)
    chain = np.empty(2 * n, dtype=np.int64)
    for new_slot, old_slot in enumerate(slot_map):
        chain[old_slot] = new_slot // 2
    return chain


def term_supports(n: int) -> list[tuple[str, tuple[int, ...]]]:
    """Original trit slots touched by every local term of the Hamiltonian."""
    supports = []
    for name, offset in (("HL", 0), ("HR", n)):
        for i in range(n - 1):
            supports.append((name, (offset + i, offset + i + 1)))
    supports.append(("HB", (0, n - 1, n, 2 * n - 1)))
    supports.append(("HP", (0, n)))
    for name, offset in (("HV", 0), ("HV", n)):
        for i in range(n):
            supports.append((name, (offset + i, offset + (i + 1) % n)))
    return supports


def max_chain_span(n: int) -> int:
    """Largest chain distance spanned by any Hamiltonian term after folding."""
    chain = chain_positions(n)
    span = 0
    for _, slots in term_supports(n):
        cols = chain[list(slots)]
        span = max(span, int(cols.max() - cols.min()))
    return span


def permute_full_operator(op: SparseOperator, n: int, slot_map) -> SparseOperator:
    """Relabel a full-space operator so new slot s holds original slot slot_map[s]."""
    if op.basis_tag != "full":
        raise ValueError("site permutation applies to full-space operators only")
    slot_map = np.asarray(slot_map, dtype=np.int64)
    trits = trit_table(np.arange(op.dim, dtype=np.int64), 2 * n)
    sigma = trits[:, slot_map].astype(np.int64) @ powers_of_three(2 * n)
    return SparseOperator.from_upper_entries(
        op.dim,
        sigma[op.row],
        sigma[op.col],
        op.val.copy(),
        basis_tag="full:permuted",
    )
