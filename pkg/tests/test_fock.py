import math

import numpy as np
import pytest

from oracles import occupation_of, occupations, operators
from vibronqpt.fock import (BasisIndex, build_sector, full_basis, full_hamiltonian,
                            hamiltonian_matrix, w2_matrix)


@pytest.mark.parametrize("N, l, expected", [(2, 0, (0, 2)), (4, 0, (0, 2, 4)), (3, 1, (1, 3)),
                                            (3, -3, (3,)), (0, 0, (0,))])
def test_build_sector(N, l, expected):
    assert build_sector(N, l).n_values == expected


def test_build_sector_rejects_large_l():
    with pytest.raises(ValueError):
        build_sector(3, 4)


@pytest.mark.parametrize("n, l", [(3, 0), (2, 3), (5, 1)])
def test_basis_index_rejects(n, l):
    with pytest.raises(ValueError):
        BasisIndex(4, n, l)


def test_basis_index_m():
    assert BasisIndex(6, 4, -2).m == 3


def test_w2_small_examples():
    w = w2_matrix(build_sector(2, 0)).entries
    np.testing.assert_allclose(np.diag(w), [4, 2], atol=1e-14)
    assert w[0, 1] == pytest.approx(-math.sqrt(8), abs=1e-14)
    assert w2_matrix(build_sector(1, 1)).entries[0, 0] == pytest.approx(2.0)


def _oracle_block(N, l):
    basis, _, _, w2 = operators(N)
    idx = {occ: k for k, occ in enumerate(basis)}
    ns = build_sector(N, l).n_values
    ks = [idx[occupation_of(N, n, l)] for n in ns]
    return w2[np.ix_(ks, ks)]


@pytest.mark.parametrize("N", range(0, 7))
def test_w2_matches_boson_oracle(N):
    for l in range(-N, N + 1):
        got = w2_matrix(build_sector(N, l)).entries
        np.testing.assert_allclose(got, _oracle_block(N, l), atol=1e-12, rtol=0)


@pytest.mark.parametrize("N", [3, 5, 6])
def test_w2_does_not_couple_sectors(N):
    basis, _, l_op, w2 = operators(N)
    np.testing.assert_allclose(w2 @ l_op - l_op @ w2, 0, atol=1e-12)


def test_hamiltonian_examples():
    s = build_sector(2, 0)
    np.testing.assert_allclose(hamiltonian_matrix(s, 0.0).entries, [[0, 0], [0, 2]], atol=1e-14)
    r8 = 2 * math.sqrt(2)
    np.testing.assert_allclose(hamiltonian_matrix(s, 1.0).entries, [[2, r8], [r8, 4]], atol=1e-13)
    r2 = math.sqrt(2)
    np.testing.assert_allclose(hamiltonian_matrix(s, 0.5).entries, [[1, r2], [r2, 3]], atol=1e-13)


@pytest.mark.parametrize("N, xi", [(1, 0.5), (0, 0.5), (4, -0.1), (4, 1.2)])
def test_hamiltonian_rejects(N, xi):
    with pytest.raises(ValueError):
        hamiltonian_matrix(build_sector(N, 0), xi)


@pytest.mark.parametrize("N", [2, 5, 12, 60])
@pytest.mark.parametrize("xi", [0.0, 0.3, 1.0])
def test_structure_symmetric_and_banded(N, xi):
    for l in range(-N, N + 1):
        H = hamiltonian_matrix(build_sector(N, l), xi).entries
        assert np.array_equal(H, H.T)
        assert np.all(np.triu(H, 2) == 0)


@pytest.mark.parametrize("N", [4, 7])
def test_full_hamiltonian_conserves_parity_and_l(N):
    H = full_hamiltonian(N, 0.4)
    basis = full_basis(N)
    par = np.diag([(-1) ** b.n for b in basis])
    ell = np.diag([b.l for b in basis])
    assert len(basis) == (N + 1) * (N + 2) // 2
    np.testing.assert_allclose(H @ par - par @ H, 0, atol=1e-12)
    np.testing.assert_allclose(H @ ell - ell @ H, 0, atol=1e-12)


def test_large_N_assembly_is_finite():
    H = hamiltonian_matrix(build_sector(500, 0), 0.5).entries
    assert np.all(np.isfinite(H))
