"""Energy lower bounds for hole sectors away from one-per-ring.

A single ring with a fixed hole count a carries two non-negative pieces:
the open-segment hole walk, and the hole potential shifted by (a-1)V1 so
its kernel is exactly the non-adjacent hole configurations.  The two
kernels intersect trivially, so the angle between them feeds the
two-projector eigenvalue bound A1 + A2 >= v sin^2(theta/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial

import numpy as np
import scipy.linalg as sla

from .hamiltonian import ModelParams, SparseOperator
from .hilbert import X, powers_of_three, ring_states

KERNEL_TOL = 1e-10  # relative to the largest diagonal entry


def _ring_table(n: int, a: int):
    idx = ring_states(n, a)
    trits = ((idx[:, None] // powers_of_three(n)[None, :]) % 3).astype(np.int8)
    return idx, trits


def ring_walk(n: int, a: int) -> SparseOperator:
    """Open-segment hole walk of one ring, restricted to the a-hole sector."""
    idx, trits = _ring_table(n, a)
    lookup = {int(i): pos for pos, i in enumerate(idx)}
    weight = np.full(n, 2.0)
    weight[0] = weight[-1] = 1.0
    diag = (trits == X) @ weight
    rows = [np.arange(idx.size)]
    cols = [np.arange(idx.size)]
    vals = [diag]
    for i in range(n - 1):
        mask = trits[:, i] == X
        if not mask.any():
            continue
        src = np.flatnonzero(mask)
        tq = trits[mask, i + 1].astype(np.int64)
        dst_idx = idx[mask] + (tq - 2) * 3**i + (2 - tq) * 3 ** (i + 1)
        dst = np.array([lookup[int(d)] for d in dst_idx])
        rows.append(np.concatenate([dst, src]))
        cols.append(np.concatenate([src, dst]))
        vals.append(np.full(2 * src.size, -1.0))
    return SparseOperator.from_symmetric_entries(
        idx.size,
        np.concatenate(rows),
        np.concatenate(cols),
        np.concatenate(vals),
        basis_tag=f"ring(n={n},a={a})",
    )


def ring_potential_diag(n: int, a: int, params: ModelParams) -> np.ndarray:
    """Diagonal of the single-ring hole potential on the a-hole sector."""
    _, trits = _ring_table(n, a)
    ring = trits == X
    adjacent = (ring & np.roll(ring, -1, axis=1)).sum(axis=1)
    return params.v1 - params.v1 * a + params.v2 * adjacent


def null_basis(matrix, tol: float | None = None) -> np.ndarray:
    """Orthonormal kernel basis of a PSD matrix, columns stacked."""
    if isinstance(matrix, SparseOperator):
        matrix = matrix.to_dense()
    matrix = np.asarray(matrix, dtype=np.float64)
    if tol is None:
        scale = float(np.abs(np.diag(matrix)).max()) if matrix.size else 1.0
        tol = KERNEL_TOL * max(1.0, scale)
    vals, vecs = sla.eigh(matrix)
    return vecs[:, vals < tol]


@dataclass
class PrincipalAngles:
    theta: float  # smallest principal angle
    sin2_theta: float
    intersection: bool  # the subspaces share a direction (bound hypothesis fails)
    angles: np.ndarray  # all principal angles, ascending


def principal_angle(basis1: np.ndarray, basis2: np.ndarray, tol: float = 1e-8) -> PrincipalAngles:
    """Principal angles from singular values of the cross-Gram matrix."""
    if basis1.size == 0 or basis2.size == 0:
        raise ValueError("both subspaces must be nonempty")
    sv = np.clip(sla.svd(basis1.conj().T @ basis2, compute_uv=False), 0.0, 1.0)
    angles = np.arccos(sv)
    theta = float(angles.min())
    return PrincipalAngles(
        theta=theta,
        sin2_theta=float(math.sin(theta) ** 2),
        intersection=bool(sv.max() >= 1.0 - tol),
        angles=np.sort(angles),
    )


def kitaev_bound(v: float, theta: float) -> float:
    """Lower bound v sin^2(theta/2) on the sum of two PSD operators whose
    kernels meet only at zero."""
    if v <= 0:
        raise ValueError("smallest nonzero eigenvalue must be positive")
    if not 0 < theta <= math.pi / 2:
        raise ValueError("angle must lie in (0, pi/2]")
    return v * math.sin(theta / 2.0) ** 2


def count_nonadjacent(n: int, a: int) -> tuple[int, float]:
    """Number of a-hole placements on an N-cycle with no two adjacent,
    and the loose product upper bound N(N-2)...(N-2a+2)/a!.

    The closed form N/(N-a) * C(N-a, a) is cross-checked against brute
    enumeration whenever N is small enough to enumerate.
    """
    if a < 0 or a > n:
        raise ValueError(f"hole count {a} outside 0..{n}")
    if a == 0:
        exact = 1
    elif a > n // 2:
        exact = 0
    else:
        exact = n * comb(n - a, a) // (n - a)
    if n <= 20 and a <= n // 2:
        brute = sum(
            1
            for subset in combinations(range(n), a)
            if all((s + 1) % n not in subset for s in subset) or a == 0
        )
        if brute != exact:
            raise AssertionError(f"closed form {exact} != brute count {brute}")
    bound = 1.0
    for j in range(a):
        bound *= n - 2 * j
    bound /= factorial(a)
    return exact, bound


@dataclass
class RingSectorReport:
    n: int
    a: int
    numeric_min: float  # exact min eigenvalue of walk + potential on the sector
    bound: float  # v sin^2(theta/2) - (a-1) v1
    v: float
    theta: float
    sin2_theta: float
    intersection: bool


def sector_lower_bound(n: int, a: int, params: ModelParams, dense_cap: int = 20_000) -> RingSectorReport:
    """Numeric minimum of walk + potential on one ring's a-hole sector next
    to its constructive two-projector bound.  Not defined for a = 1 (that
    sector holds the gapless walk)."""
    if a == 1:
        raise ValueError("a = 1 is the gapless sector; no lower bound is computed")
    if a == 0:
        return RingSectorReport(
            n=n, a=a, numeric_min=params.v1, bound=params.v1,
            v=params.v1, theta=math.pi / 2, sin2_theta=1.0, intersection=False,
        )
    idx, _ = _ring_table(n, a)
    if idx.size > dense_cap:
        raise ValueError(f"sector dim {idx.size} exceeds dense cap {dense_cap}")
    walk = ring_walk(n, a).to_dense()
    shifted_potential = ring_potential_diag(n, a, params) + (a - 1) * params.v1
    total = walk + np.diag(shifted_potential)
    numeric_min = float(sla.eigvalsh(total)[0]) - (a - 1) * params.v1

    cut = KERNEL_TOL * max(1.0, shifted_potential.max())
    kernel_mask = shifted_potential <= cut
    v = float(shifted_potential[~kernel_mask].min())
    if not kernel_mask.any():
        # no non-adjacent placement exists: the potential alone is >= v
        return RingSectorReport(
            n=n, a=a, numeric_min=numeric_min, bound=v - (a - 1) * params.v1,
            v=v, theta=math.pi / 2, sin2_theta=1.0, intersection=False,
        )
    kernel_walk = null_basis(walk)
    kernel_potential = np.eye(idx.size)[:, kernel_mask]
    angles = principal_angle(kernel_potential, kernel_walk)
    bound = kitaev_bound(v, angles.theta) - (a - 1) * params.v1 if not angles.intersection else -(a - 1) * params.v1
    return RingSectorReport(
        n=n,
        a=a,
        numeric_min=numeric_min,
        bound=bound,
        v=v,
        theta=angles.theta,
        sin2_theta=angles.sin2_theta,
        intersection=angles.intersection,
    )


def ring_lower_bound(n: int, a: int, params: ModelParams, dense_cap: int = 20_000) -> tuple[float, str]:
    """Per-ring energy floor used by large-N scans: exact for a = 0, zero for
    a = 1, the numeric two-projector bound when the sector fits the dense
    cap, else the analytic floor v2/(4(N-1)) - (a-1)v1."""
    if a == 0:
        return params.v1, "exact"
    if a == 1:
        return 0.0, "exact"
    if comb(n, a) * 2 ** (n - a) <= dense_cap:
        return sector_lower_bound(n, a, params, dense_cap).bound, "numeric"
    return params.v2 / (4.0 * (n - 1)) - (a - 1) * params.v1, "analytic"
