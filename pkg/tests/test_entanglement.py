import math

import numpy as np
import pytest

from ringgap.entanglement import (
    entropies,
    ground_state_exact,
    locc_reduction_check,
    reduced_density,
    schmidt,
)
from ringgap.errors import CapacityError
from ringgap.hamiltonian import ModelParams, assemble


def test_ground_state_is_normalized_zero_mode():
    for n in (3, 4):
        g = ground_state_exact(n)
        assert np.linalg.norm(g) == pytest.approx(1.0, abs=1e-12)
        h = assemble(ModelParams(n)).to_csr()
        assert np.linalg.norm(h @ g) < 1e-12


def test_ground_state_capacity():
    with pytest.raises(CapacityError):
        ground_state_exact(8)


def test_schmidt_squares_sum_to_one():
    g = ground_state_exact(3)
    dec = schmidt(g, 3)
    assert (dec.singular_values**2).sum() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        schmidt(g, 4)


def test_reduced_density_traces_and_agreement():
    g = ground_state_exact(3)
    rho_l = reduced_density(g, 3, "L")
    rho_r = reduced_density(g, 3, "R")
    assert np.trace(rho_l) == pytest.approx(1.0)
    assert np.trace(rho_r) == pytest.approx(1.0)
    sv = schmidt(g, 3).singular_values
    eig_l = np.sort(np.linalg.eigvalsh(rho_l))[::-1][: sv.size]
    assert np.abs(eig_l - sv**2).max() < 1e-12
    with pytest.raises(ValueError):
        reduced_density(g, 3, "Q")


def test_entropy_of_known_distributions():
    # maximally mixed pair of outcomes: exactly 1 bit at every order
    sv = np.array([1.0, 1.0]) / math.sqrt(2)
    rep = entropies(sv, alphas=(0.5, 1, 2))
    assert rep.von_neumann_bits == pytest.approx(1.0)
    assert rep.renyi_bits[1.0] == pytest.approx(1.0)
    assert rep.renyi_bits[2.0] == pytest.approx(1.0)
    assert rep.schmidt_rank == 2
    # skewed distribution: Renyi decreases in alpha
    sv = np.sqrt(np.array([0.9, 0.1]))
    rep = entropies(sv, alphas=(0.5, 2))
    assert rep.renyi_bits[0.5] > rep.von_neumann_bits > rep.renyi_bits[2.0]
    with pytest.raises(ValueError):
        entropies(sv, alphas=(0,))


def test_ground_state_entropy_values():
    # N - 1 singlets across the cut, plus nothing from the hole positions
    for n in (3, 4):
        rep = entropies(schmidt(ground_state_exact(n), n))
        assert rep.von_neumann_bits == pytest.approx(n - 1, abs=1e-9)
        assert rep.von_neumann_bits <= n * math.log2(3)


def test_entropy_from_density_matrix_route():
    g = ground_state_exact(3)
    via_svd = entropies(schmidt(g, 3)).von_neumann_bits
    via_rho = entropies(reduced_density(g, 3, "L")).von_neumann_bits
    assert via_rho == pytest.approx(via_svd, abs=1e-9)


def test_locc_reduction():
    for n in (3, 4):
        rep = locc_reduction_check(n)
        assert rep.probabilities.shape == (n, n)
        assert rep.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
        assert rep.max_probability_deviation < 1e-12
        assert rep.min_fidelity == pytest.approx(1.0, abs=1e-12)
