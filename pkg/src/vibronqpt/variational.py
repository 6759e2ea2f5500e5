"""Coherent-state and cat-state energy functionals, equilibrium radii and
the location of the shape transition."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .coherent import cat_mean_n, cat_mean_w2
from .spectra import ConvergenceError

XI_C = 0.2
R_MAX = 1.0 - 1e-9
SCAN_STEP = 1e-3
INFINITE = math.inf


@dataclass(frozen=True)
class VariationalSolution:
    N: float  # math.inf for the thermodynamic limit
    xi: float
    radius: float
    energy_per_particle: float
    ansatz: str


def cs_energy(xi: float, r):
    """Per-particle energy of the condensate |N; r>; independent of N."""
    r2 = np.asarray(r, dtype=float) ** 2
    return (1.0 - xi) * r2 / (1.0 + r2) + xi * ((1.0 - r2) / (1.0 + r2)) ** 2


def cs_equilibrium(xi: float) -> tuple[float, float]:
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    if xi <= XI_C:
        return 0.0, float(xi)
    return math.sqrt((5 * xi - 1) / (3 * xi + 1)), (-9 * xi * xi + 10 * xi - 1) / (16 * xi)


def cat_energy(N: int, xi: float, r: float) -> float:
    if N < 2:
        raise ValueError(f"cat energy needs N >= 2, got {N}")
    n = cat_mean_n(N, r)
    w2 = cat_mean_w2(N, r)
    return (1.0 - xi) * n / N + xi * (N * (N + 1) - w2) / (N * (N - 1))


def cat_equilibrium(N: int, xi: float) -> tuple[float, float]:
    """Global minimizer of the cat energy over r in [0, 1 - 1e-9].

    A coarse scan picks the bracketing cell, bounded Brent refines it.
    """
    if N < 2:
        raise ValueError(f"cat equilibrium needs N >= 2, got {N}")
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    grid = np.append(np.arange(0.0, R_MAX, SCAN_STEP), R_MAX)
    vals = np.array([cat_energy(N, xi, r) for r in grid])
    k = int(np.argmin(vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    res = minimize_scalar(lambda r: cat_energy(N, xi, r), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12, "maxiter": 500})
    if not res.success:
        raise ConvergenceError(f"cat energy minimization failed at N={N}, xi={xi}")
    best_r, best_e = float(res.x), float(res.fun)
    # the bounded search never lands exactly on an endpoint
    for r_end in (lo, hi):
        e_end = cat_energy(N, xi, r_end)
        if e_end <= best_e:
            best_r, best_e = float(r_end), e_end
    return best_r, best_e


def solve(N, xi: float, ansatz: str = "cat") -> VariationalSolution:
    """Equilibrium for a finite N or, with N = math.inf, the closed form."""
    if ansatz == "cs" or N == INFINITE:
        r, e = cs_equilibrium(xi)
        return VariationalSolution(N, xi, r, e, "cs" if ansatz == "cs" else ansatz)
    if ansatz != "cat":
        raise ValueError(f"unknown ansatz {ansatz!r}")
    r, e = cat_equilibrium(int(N), xi)
    return VariationalSolution(N, xi, r, e, "cat")


@dataclass(frozen=True)
class CriticalReport:
    xi_c: float
    jump: float
    jump_coarse: float
    step: float


def _second_derivative(xi: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    energy = np.array([cs_equilibrium(x)[1] for x in xi])
    d2 = (energy[2:] - 2 * energy[1:-1] + energy[:-2]) / h ** 2
    return xi[1:-1], d2


def _locate_jump(x: np.ndarray, d2: np.ndarray, reach: int = 3) -> tuple[float, float]:
    k = int(np.argmax(np.abs(np.diff(d2))))
    # plateaus on either side, extrapolated linearly to the jump location
    left = np.arange(max(0, k - reach - 1), max(0, k - 1))
    right = np.arange(min(len(d2), k + 3), min(len(d2), k + reach + 3))
    if len(left) < 2 or len(right) < 2:
        raise ValueError("grid too coarse or jump too close to the grid edge")
    pl = np.polyfit(x[left], d2[left], 1)
    pr = np.polyfit(x[right], d2[right], 1)
    # first node past the halfway level between the two plateaus
    mid = 0.5 * (np.polyval(pl, x[k]) + np.polyval(pr, x[k]))
    window = np.arange(left[-1], right[0] + 1)
    xs, ys = x[window], d2[window]
    xc = float(x[k])
    for i in range(len(ys) - 1):
        if (ys[i] - mid) * (ys[i + 1] - mid) <= 0 and ys[i] != ys[i + 1]:
            xc = float(xs[i] + (mid - ys[i]) * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i]))
            break
    jump = float(np.polyval(pr, xc) - np.polyval(pl, xc))
    return xc, jump


def criticality_scan(xi_grid) -> CriticalReport:
    """Locate the discontinuity of d^2 E/d xi^2 of the condensate energy.

    The grid must be uniform. The jump is also measured on the grid with
    every second node as a check on discretization effects.
    """
    xi = np.asarray(xi_grid, dtype=float)
    if xi.size < 3:
        raise ValueError("criticality scan needs at least 3 grid points")
    h = float(xi[1] - xi[0])
    if not np.allclose(np.diff(xi), h, rtol=1e-6, atol=1e-12):
        raise ValueError("criticality scan needs a uniform grid")
    x, d2 = _second_derivative(xi, h)
    xc, jump = _locate_jump(x, d2)
    x2, d22 = _second_derivative(xi[::2], 2 * h)
    try:
        _, jump2 = _locate_jump(x2, d22)
    except ValueError:
        jump2 = math.nan
    return CriticalReport(xc, jump, jump2, h)
