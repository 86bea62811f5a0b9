"""Exact ground state, Schmidt data across the ring cut, and entropies.

The ground state is the uniform superposition over both hole positions of
the reference configuration (holes at site N, every qubit pair a singlet).
Splitting the full index as left + 3^N * right makes the left/right ring
cut a plain reshape, so Schmidt spectra come from one singular value
decomposition without ever forming a density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import CapacityError
from .hilbert import X, sector_basis, trit_table
from .symmetry import embed_node, singlet_class

AMPLITUDE_CAP = 3**14  # full-space vectors up to N = 7
SINGULAR_VALUE_FLOOR = 1e-12  # below this a Schmidt coefficient counts as zero


def ground_state_exact(n: int, amplitude_cap: int = AMPLITUDE_CAP) -> np.ndarray:
    """Normalized exact ground state as a full-space vector."""
    dim = 3 ** (2 * n)
    if dim > amplitude_cap:
        raise CapacityError(
            f"full-space state of dim {dim} exceeds cap {amplitude_cap}"
        )
    basis = sector_basis(n, 1, 1)
    cls = singlet_class(n)
    acc = np.zeros(basis.dim)
    for a, b in product(range(1, n + 1), repeat=2):
        acc += embed_node(cls, a, b, 0, basis)
    acc /= n
    state = np.zeros(dim)
    state[basis.indices] = acc
    return state


@dataclass
class SchmidtDecomposition:
    """Descending Schmidt coefficients across the left/right ring cut."""

    singular_values: np.ndarray
    left_dim: int
    right_dim: int


def schmidt(state: np.ndarray, n: int) -> SchmidtDecomposition:
    half = 3**n
    if state.size != half * half:
        raise ValueError(f"state length {state.size} is not 3^{2 * n}")
    # index = left + 3^N * right, so C-order reshape is [right, left]
    matrix = state.reshape(half, half)
    sv = np.linalg.svd(matrix, compute_uv=False)
    return SchmidtDecomposition(singular_values=sv, left_dim=half, right_dim=half)


def reduced_density(state: np.ndarray, n: int, side: str) -> np.ndarray:
    """Density matrix of one ring (side 'L' or 'R') of a pure state."""
    half = 3**n
    matrix = state.reshape(half, half)  # [right, left]
    if side == "R":
        return matrix @ matrix.conj().T
    if side == "L":
        return matrix.T @ matrix.conj()
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


@dataclass
class EntropyReport:
    von_neumann_bits: float
    renyi_bits: dict[float, float]
    schmidt_rank: int


def entropies(source, alphas=()) -> EntropyReport:
    """Entropies in bits from a Schmidt decomposition, a singular-value
    array, or a density matrix.  Order alpha = 1 routes to von Neumann."""
    if isinstance(source, SchmidtDecomposition):
        probs = source.singular_values**2
        rank = int(np.count_nonzero(source.singular_values > SINGULAR_VALUE_FLOOR))
    else:
        arr = np.asarray(source)
        if arr.ndim == 1:
            probs = arr.astype(np.float64) ** 2
            rank = int(np.count_nonzero(arr > SINGULAR_VALUE_FLOOR))
        elif arr.ndim == 2:
            probs = np.clip(np.linalg.eigvalsh(arr), 0.0, None)
            rank = int(np.count_nonzero(probs > SINGULAR_VALUE_FLOOR**2))
        else:
            raise ValueError("source must be Schmidt data, singular values, or a matrix")
    probs = probs[probs > 0.0]
    s_vn = float(-(probs * np.log2(probs)).sum())
    renyi = {}
    for alpha in alphas:
        alpha = float(alpha)
        if alpha <= 0:
            raise ValueError("Renyi order must be positive")
        if alpha == 1.0:
            renyi[alpha] = s_vn
        else:
            renyi[alpha] = float(math.log((probs**alpha).sum()) / (1.0 - alpha) / math.log(2))
    return EntropyReport(von_neumann_bits=s_vn, renyi_bits=renyi, schmidt_rank=rank)


@dataclass
class LoccReport:
    """Outcome of measuring both hole positions and undoing the shifts."""

    probabilities: np.ndarray  # (N, N), outcome (a, b) at [a-1, b-1]
    min_fidelity: float
    max_probability_deviation: float


def _unshift_hole(word, site):
    """Move the hole from `site` back to the last position."""
    word = list(word)
    assert word[site - 1] == X
    return word[: site - 1] + word[site:] + [X]


def locc_reduction_check(n: int, state: np.ndarray | None = None) -> LoccReport:
    """Project the ground state on every hole-position outcome, undo the
    shifts with ring-local swaps, and compare to the reference state of
    aligned singlets."""
    basis = sector_basis(n, 1, 1)
    if state is None:
        state = ground_state_exact(n)
    comps = state[basis.indices]
    trits = trit_table(basis.indices, 2 * n)
    left_hole = np.argmax(trits[:, :n] == X, axis=1) + 1
    right_hole = np.argmax(trits[:, n:] == X, axis=1) + 1

    reference = embed_node(singlet_class(n), n, n, 0, basis)
    probs = np.zeros((n, n))
    min_fidelity = math.inf
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            mask = (left_hole == a) & (right_hole == b)
            amp = comps[mask]
            prob = float((amp**2).sum())
            probs[a - 1, b - 1] = prob
            if prob == 0.0:
                min_fidelity = 0.0
                continue
            corrected = np.zeros(basis.dim)
            for row, value in zip(np.flatnonzero(mask), amp):
                word = trits[row]
                new_word = _unshift_hole(word[:n], a) + _unshift_hole(word[n:], b)
                pos = basis.positions(
                    np.array([int(np.asarray(new_word, dtype=np.int64) @ (3 ** np.arange(2 * n, dtype=np.int64)))])
                )[0]
                corrected[pos] = value / math.sqrt(prob)
            min_fidelity = min(min_fidelity, abs(float(reference @ corrected)))
    deviation = float(np.abs(probs - 1.0 / n**2).max())
    return LoccReport(
        probabilities=probs,
        min_fidelity=float(min_fidelity),
        max_probability_deviation=deviation,
    )
