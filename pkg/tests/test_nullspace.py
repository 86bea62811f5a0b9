import math
from math import comb

import numpy as np
import pytest

from ringgap.hamiltonian import ModelParams
from ringgap.nullspace import (
    count_nonadjacent,
    kitaev_bound,
    null_basis,
    principal_angle,
    ring_lower_bound,
    ring_potential_diag,
    ring_walk,
    sector_lower_bound,
)


def test_ring_walk_sector_dims():
    for n, a in ((4, 2), (5, 3), (6, 2)):
        op = ring_walk(n, a)
        assert op.dim == comb(n, a) * 2 ** (n - a)
        m = op.to_dense()
        assert np.array_equal(m, m.T)
        assert np.linalg.eigvalsh(m)[0] >= -1e-12


def test_ring_walk_kernel_is_uniform_superpositions():
    # the walk annihilates the uniform superposition over hole placements of
    # each fixed qubit word; dimension of the kernel = number of qubit words
    n, a = 5, 2
    kernel = null_basis(ring_walk(n, a))
    assert kernel.shape[1] == 2 ** (n - a)


def test_ring_potential_values():
    params = ModelParams(4, v1=0.25, v2=2.0)
    diag = ring_potential_diag(4, 2, params)
    # adjacent pairs contribute v2 each; shifted by v1 (1 - a)
    assert set(np.round(diag, 12)) == {0.25 - 0.5, 0.25 - 0.5 + 2.0}


def test_null_basis_of_diagonal():
    m = np.diag([0.0, 0.0, 1.0, 2.0])
    basis = null_basis(m)
    assert basis.shape == (4, 2)
    assert np.abs(m @ basis).max() < 1e-12


def test_principal_angle_known_planes():
    e1 = np.array([[1.0], [0.0]])
    rot = np.array([[math.cos(0.3)], [math.sin(0.3)]])
    rep = principal_angle(e1, rot)
    assert rep.theta == pytest.approx(0.3, abs=1e-12)
    assert not rep.intersection
    same = principal_angle(e1, e1)
    assert same.intersection


def test_kitaev_bound_formula_and_guards():
    assert kitaev_bound(2.0, math.pi / 2) == pytest.approx(2 * math.sin(math.pi / 4) ** 2)
    with pytest.raises(ValueError):
        kitaev_bound(0.0, 1.0)
    with pytest.raises(ValueError):
        kitaev_bound(1.0, 0.0)


def test_count_nonadjacent_small_cases():
    assert count_nonadjacent(4, 2)[0] == 2
    assert count_nonadjacent(5, 2)[0] == 5
    assert count_nonadjacent(6, 3)[0] == 2
    assert count_nonadjacent(6, 4)[0] == 0
    assert count_nonadjacent(7, 0)[0] == 1
    # product upper bound dominates the exact count
    for n in (5, 8, 12):
        for a in range(n // 2 + 1):
            exact, bound = count_nonadjacent(n, a)
            assert exact <= bound + 1e-9


def test_sector_lower_bound_consistency():
    params = ModelParams(6)
    for a in (0, 2, 3):
        rep = sector_lower_bound(6, a, params)
        assert rep.numeric_min >= rep.bound - 1e-12
        if a >= 2:
            assert not rep.intersection
            assert rep.sin2_theta >= 1.0 / (6 - 1) - 1e-12
    with pytest.raises(ValueError):
        sector_lower_bound(6, 1, params)


def test_all_holes_sector_is_potential_only():
    params = ModelParams(4, v1=0.01, v2=1.0)
    rep = sector_lower_bound(4, 4, params)
    # single configuration: walk vanishes, energy is the cyclic adjacency
    assert rep.numeric_min == pytest.approx(4 * 1.0 - 3 * 0.01, abs=1e-12)
    assert rep.bound == pytest.approx(rep.numeric_min, abs=1e-12)


def test_ring_lower_bound_modes():
    params = ModelParams(8)
    assert ring_lower_bound(8, 0, params) == (params.v1, "exact")
    assert ring_lower_bound(8, 1, params) == (0.0, "exact")
    value, mode = ring_lower_bound(8, 2, params)
    assert mode == "numeric" and value > 0
    value, mode = ring_lower_bound(30, 2, params, dense_cap=1000)
    assert mode == "analytic"
    assert value == pytest.approx(1.0 / (4 * 29) - params.v1)
