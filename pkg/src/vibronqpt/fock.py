"""Fock basis of the totally symmetric U(3) representation and the
angular-momentum blocks of the W^2 Casimir and the vibron Hamiltonian.

A basis vector |N; n, l> carries N - n scalar bosons and (n + l)/2,
(n - l)/2 circular vector bosons. Within a block of fixed l the allowed
bending numbers are n = |l|, |l| + 2, ..., and the operators below are
tridiagonal in that ordering.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BasisIndex:
    N: int
    n: int
    l: int

    def __post_init__(self):
        if not 0 <= self.n <= self.N:
            raise ValueError(f"need 0 <= n <= N, got n={self.n}, N={self.N}")
        if abs(self.l) > self.n or (self.n - self.l) % 2:
            raise ValueError(f"invalid l={self.l} for n={self.n}")

    @property
    def m(self) -> int:
        return (self.n - self.l) // 2


@dataclass(frozen=True)
class SectorBasis:
    N: int
    l: int
    n_values: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.n_values)

    @property
    def parity(self) -> int:
        return -1 if self.l % 2 else 1


@dataclass(frozen=True)
class SectorMatrix:
    N: int
    l: int
    entries: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).copy()

    @property
    def off_diagonal(self) -> np.ndarray:
        return np.diag(self.entries, 1).copy()


def build_sector(N: int, l: int) -> SectorBasis:
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if abs(l) > N:
        raise ValueError(f"|l| must not exceed N, got l={l}, N={N}")
    return SectorBasis(N, l, tuple(range(abs(l), N + 1, 2)))


def _sqrt_product(*factors: np.ndarray) -> np.ndarray:
    # all factors are positive integers where used
    logs = sum(np.log(np.asarray(f, dtype=float)) for f in factors)
    return np.exp(0.5 * logs)


def w2_matrix(sector: SectorBasis) -> SectorMatrix:
    """Matrix of W^2 = (D+ D- + D- D+)/2 + l^2 in one angular-momentum block."""
    N, l = sector.N, sector.l
    n = np.array(sector.n_values, dtype=float)
    diag = (N - n) * (n + 2) + (N - n + 1) * n + l * l
    # couples n (row index k+1) down to n - 2 (index k)
    nu = n[1:]
    off = -_sqrt_product(N - nu + 2, N - nu + 1, nu + l, nu - l)
    mat = np.diag(diag)
    if len(off):
        mat += np.diag(off, 1) + np.diag(off, -1)
    return SectorMatrix(N, l, mat)


def number_matrix(sector: SectorBasis) -> SectorMatrix:
    return SectorMatrix(sector.N, sector.l, np.diag(np.array(sector.n_values, dtype=float)))


def hamiltonian_matrix(sector: SectorBasis, xi: float) -> SectorMatrix:
    """H = (1 - xi) n + xi (N(N+1) - W^2) / (N - 1) restricted to the sector."""
    N = sector.N
    if N < 2:
        raise ValueError(f"the Hamiltonian needs N >= 2, got N={N}")
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    w2 = w2_matrix(sector).entries
    n = np.diag(np.array(sector.n_values, dtype=float))
    eye = np.eye(sector.dim)
    mat = (1.0 - xi) * n + xi * (N * (N + 1) * eye - w2) / (N - 1)
    return SectorMatrix(N, sector.l, mat)


def full_basis(N: int) -> list[BasisIndex]:
    """All (n, l) states ordered by sector l = -N..N, then ascending n."""
    return [BasisIndex(N, n, l) for l in range(-N, N + 1) for n in build_sector(N, l).n_values]


def full_hamiltonian(N: int, xi: float) -> np.ndarray:
    """Direct sum of the sector Hamiltonians in the ordering of `full_basis`."""
    blocks = [hamiltonian_matrix(build_sector(N, l), xi).entries for l in range(-N, N + 1)]
    dim = sum(b.shape[0] for b in blocks)
    out = np.zeros((dim, dim))
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out
