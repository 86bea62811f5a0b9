import numpy as np
import pytest

from ringgap.hamiltonian import (
    ModelParams,
    SparseOperator,
    assemble,
    brick_site_map,
    build_term,
    max_chain_span,
    permute_full_operator,
)
from ringgap.hilbert import X, encode, full_basis, sector_basis


def dense_term(kind, n, **kw):
    return build_term(kind, ModelParams(n=n, **kw)).to_dense()


def test_params_defaults():
    p = ModelParams(4)
    assert p.v1 == pytest.approx(1 / 256)
    assert p.v2 == 1.0
    with pytest.raises(ValueError):
        ModelParams(2)
    with pytest.raises(ValueError):
        ModelParams(4, v1=-0.1)


def test_terms_are_symmetric_and_psd():
    for kind in ("HL", "HR", "HB", "HP", "HV"):
        m = dense_term(kind, 3)
        assert np.array_equal(m, m.T)
        assert np.linalg.eigvalsh(m)[0] >= -1e-12


def test_ring_walk_matrix_elements():
    n = 3
    hl = dense_term("HL", n)
    # hole at an interior site carries diagonal 2, at the ends 1
    w_end = encode([X, 0, 0, 0, 0, 0], n)
    w_mid = encode([0, X, 0, 0, 0, 0], n)
    assert hl[w_end, w_end] == 1.0
    assert hl[w_mid, w_mid] == 2.0
    # the hop moves the hole one site and carries the qubit back
    src = encode([X, 1, 0, 0, 0, 0], n)
    dst = encode([1, X, 0, 0, 0, 0], n)
    assert hl[src, dst] == -1.0
    # no wraparound hop between sites 1 and N on a single ring
    a = encode([X, 0, 1, 0, 0, 0], n)
    b = encode([1, 0, X, 0, 0, 0], n)
    assert hl[a, b] == 0.0


def test_adjacent_holes_cancel_walk_diagonal():
    # two adjacent holes: the joint swap is the identity, so the -1 hop
    # entries cancel the +2 diagonal weight on that bond
    n = 3
    hl = dense_term("HL", n)
    w = encode([X, X, 0, 0, 0, 0], n)
    assert hl[w, w] == 1.0 + 2.0 - 2.0


def test_bridge_acts_only_on_joint_holes():
    n = 3
    hb = dense_term("HB", n)
    both = encode([0, 0, X, 0, 0, X], n)
    moved = encode([X, 0, 0, X, 0, 0], n)
    assert hb[both, both] == 1.0
    assert hb[both, moved] == -1.0
    single = encode([0, 0, X, 0, 0, 0], n)
    assert np.all(hb[single] == 0)


def test_projector_rewards_singlet():
    n = 3
    hp = dense_term("HP", n)
    up_down = encode([0, 0, 0, 1, 0, 0], n)
    down_up = encode([1, 0, 0, 0, 0, 0], n)
    same = encode([1, 0, 0, 1, 0, 0], n)
    assert hp[up_down, up_down] == 0.5
    assert hp[up_down, down_up] == 0.5
    assert hp[same, same] == 1.0
    # the singlet combination is annihilated
    v = np.zeros(hp.shape[0])
    v[up_down] = 1 / np.sqrt(2)
    v[down_up] = -1 / np.sqrt(2)
    assert np.abs(hp @ v).max() < 1e-15
    # a hole at either site-1 disables the penalty
    holed = encode([X, 0, 0, 1, 0, 0], n)
    assert hp[holed, holed] == 0.0


def test_hole_potential_values():
    n = 3
    params = ModelParams(n, v1=0.01, v2=2.0)
    hv = build_term("HV", params).to_dense()
    vac = encode([0] * 6, n)
    one = encode([X, 0, 0, 0, 0, 0], n)
    pair = encode([X, X, 0, 0, 0, 0], n)
    allh = encode([X, X, X, 0, 0, 0], n)
    assert hv[vac, vac] == pytest.approx(2 * 0.01)
    assert hv[one, one] == pytest.approx(0.01 + 0.01 - 0.01)
    assert hv[pair, pair] == pytest.approx(0.02 - 0.02 + 2.0)
    # three holes on a 3-ring: cyclic adjacency counts all three bonds
    assert hv[allh, allh] == pytest.approx(0.02 - 0.03 + 3 * 2.0)


def test_assemble_equals_sum_of_terms():
    params = ModelParams(3)
    total = assemble(params).to_dense()
    parts = sum(build_term(k, params).to_dense() for k in ("HL", "HR", "HB", "HP", "HV"))
    assert np.abs(total - parts).max() < 1e-15


def test_sector_restriction_matches_submatrix():
    params = ModelParams(3)
    full = assemble(params).to_dense()
    basis = sector_basis(3, 1, 1)
    sub = assemble(params, basis).to_dense()
    assert np.abs(sub - full[np.ix_(basis.indices, basis.indices)]).max() < 1e-15


def test_coo_save_load_roundtrip(tmp_path):
    op = assemble(ModelParams(3))
    path = tmp_path / "h.coo"
    op.save(path)
    back = SparseOperator.load(path)
    assert back.dim == op.dim
    assert back.basis_tag == op.basis_tag
    assert np.abs(back.to_dense() - op.to_dense()).max() == 0.0
    header = path.read_text().splitlines()[0].split()
    assert header[0] == str(op.dim) and header[1] == str(op.nnz)


def test_brick_map_is_permutation_and_local():
    for n in (4, 6, 8):
        slots = brick_site_map(n)
        assert sorted(slots.tolist()) == list(range(2 * n))
        assert max_chain_span(n) == 1
    with pytest.raises(ValueError):
        brick_site_map(5)


def test_permutation_preserves_spectrum_small():
    op = assemble(ModelParams(4))
    permuted = permute_full_operator(op, 4, brick_site_map(4))
    # entries move around, but traces of powers are basis independent
    a = op.to_csr()
    b = permuted.to_csr()
    for power in (1, 2, 3):
        ta = (a**power).diagonal().sum()
        tb = (b**power).diagonal().sum()
        assert ta == pytest.approx(tb, rel=1e-12)


def test_full_basis_tag_guard():
    basis = sector_basis(3, 1, 1)
    op = assemble(ModelParams(3), basis)
    with pytest.raises(ValueError):
        permute_full_operator(op, 3, np.arange(6))
