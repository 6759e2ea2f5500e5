"""Exact diagonalization of the vibron Hamiltonian and ground-state lookup."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .fock import build_sector, hamiltonian_matrix


class ConvergenceError(RuntimeError):
    """Raised when a numerical routine fails to converge."""


@dataclass
class GroundState:
    N: int
    xi: float
    l: int
    energy: float
    coeffs: dict[tuple[int, int], float] = field(default_factory=dict)

    @property
    def energy_per_particle(self) -> float:
        return self.energy / self.N

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(n, m, c) as parallel arrays in ascending n."""
        keys = sorted(self.coeffs)
        n = np.array([k[0] for k in keys], dtype=int)
        m = np.array([k[1] for k in keys], dtype=int)
        c = np.array([self.coeffs[k] for k in keys], dtype=float)
        return n, m, c


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    return -vec if vec[k] < 0 else vec


def solve_sector(N: int, l: int, xi: float) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues of the l-block and its lowest eigenvector.

    The eigenvector is unit norm with its largest-magnitude entry positive.
    """
    sector = build_sector(N, l)
    H = hamiltonian_matrix(sector, xi)
    d, e = H.diagonal, H.off_diagonal
    if sector.dim == 1:
        return d.copy(), np.ones(1)
    try:
        w, v = eigh_tridiagonal(d, e)
    except LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed for N={N}, l={l}, xi={xi}") from exc
    vec = v[:, 0] / np.linalg.norm(v[:, 0])
    return w, _fix_sign(vec)


def ground_state(N: int, xi: float) -> GroundState:
    """Global ground state over all sectors l = -N..N.

    Energy ties (within 1e-12 relative) go to the smallest |l|, then the
    smallest l.
    """
    best = None
    for l in sorted(range(-N, N + 1), key=lambda k: (abs(k), k)):
        w, vec = solve_sector(N, l, xi)
        e0 = float(w[0])
        if best is None or e0 < best[0] - 1e-12 * max(1.0, abs(best[0])):
            best = (e0, l, vec)
    e0, l, vec = best
    sector = build_sector(N, l)
    coeffs = {(n, (n - l) // 2): float(c) for n, c in zip(sector.n_values, vec)}
    return GroundState(N=N, xi=float(xi), l=l, energy=e0, coeffs=coeffs)


def energy_curve(N: int, xi_grid) -> list[tuple[float, float]]:
    out = []
    for xi in xi_grid:
        if not 0.0 <= xi <= 1.0:
            raise ValueError(f"xi must lie in [0, 1], got {xi}")
        out.append((float(xi), ground_state(N, xi).energy / N))
    return out
