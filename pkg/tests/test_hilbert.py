import numpy as np
import pytest

from ringgap.hilbert import (
    X,
    decode,
    encode,
    enumerate_sector,
    full_basis,
    ring_states,
    sector_basis,
    sector_dim,
    sector_of,
    sector_of_index,
    trit_table,
)


def test_encode_least_significant_first():
    # left ring site 1 is the least significant trit
    assert encode([1, 0, 0, 0, 0, 0]) == 1
    assert encode([0, 0, 0, 1, 0, 0]) == 27
    # right ring site 3 set to qubit 1: 3^5 = 243
    assert encode([0, 0, 0, 0, 0, 1]) == 243


def test_encode_decode_roundtrip():
    rng = np.random.default_rng(7)
    for n in (3, 4, 5):
        for _ in range(20):
            word = rng.integers(0, 3, size=2 * n)
            assert np.array_equal(decode(encode(word, n), n), word)


def test_encode_rejects_bad_input():
    with pytest.raises(ValueError):
        encode([0, 1, 3, 0, 0, 0])
    with pytest.raises(ValueError):
        encode([0, 1], n=3)
    with pytest.raises(ValueError):
        decode(3**6, 3)


def test_split_index_is_left_plus_power_times_right():
    n = 3
    left = [1, 2, 0]
    right = [0, 2, 1]
    idx = encode(left + right, n)
    assert idx == encode(left + [0, 0, 0], n) + 3**n * (encode([0, 0, 0] + right, n) // 3**n)


def test_sector_of():
    assert sector_of([X, 0, 1, X, X, 0]) == (1, 2)
    assert sector_of_index(encode([X, X, X, 0, 0, 0], 3), 3) == (3, 0)


def test_sector_dims_sum_to_full_space():
    for n in (3, 4):
        total = sum(sector_dim(n, a, b) for a in range(n + 1) for b in range(n + 1))
        assert total == 3 ** (2 * n)
    assert sector_dim(3, 1, 1) == 144
    assert sector_dim(3, 0, 0) == 64


def test_ring_states_counts_and_order():
    from math import comb

    for n in (3, 4, 6):
        for a in range(n + 1):
            states = ring_states(n, a)
            digits = trit_table(states, n)
            assert states.size == comb(n, a) * 2 ** (n - a)
            assert np.all((digits == X).sum(axis=1) == a)
            assert np.all(np.diff(states) > 0)


def test_enumerate_sector_matches_brute_force():
    n = 3
    for a in range(n + 1):
        for b in range(n + 1):
            expected = [
                i
                for i in range(3 ** (2 * n))
                if sector_of_index(i, n) == (a, b)
            ]
            assert enumerate_sector(n, a, b).tolist() == expected


def test_basis_positions_lookup():
    basis = sector_basis(3, 1, 1)
    assert basis.dim == 144
    states = basis.states()
    pos = basis.positions(states[[0, 5, 143]])
    assert pos.tolist() == [0, 5, 143]
    with pytest.raises(ValueError):
        basis.positions([0])  # vacuum is not in the (1,1) sector


def test_full_basis_tag_and_dim():
    basis = full_basis(3)
    assert basis.tag == "full"
    assert basis.dim == 729
    assert sector_basis(3, 2, 0).tag == "sector(2,0)"
