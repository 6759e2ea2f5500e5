"""Deterministic quadrature on CP^2 and the moment/entropy measures of
Husimi fields.

Writing z_j = rho_j exp(i theta_j) and s_j = rho_j^2 / (1 + |z|^2), the
closure measure becomes

    dmu = (N+1)(N+2) / (4 pi^2) ds1 ds2 dtheta1 dtheta2

on the simplex {s1, s2 >= 0, s1 + s2 <= 1} times the torus. The simplex is
collapsed onto the unit square by s1 = t (1 - v), s2 = t v (Jacobian t);
t uses Gauss-Jacobi nodes for the weight t and v uses Gauss-Legendre. The
angles use uniform trapezoidal nodes. After the angular sums, the moment
integrand of any N-boson state at integer nu is a polynomial of degree
nu N in (s1, s2), so the default resolution integrates it exactly.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .husimi import HusimiField

log = logging.getLogger(__name__)

LOG_CLAMP = 1e-300
# values per chunk handed to a field evaluator
CHUNK_VALUES = 2_000_000
DEFAULT_WEHRL_TOL = 1e-9


@dataclass(frozen=True)
class MomentResult:
    nu: float
    value: float
    error: float


@dataclass(frozen=True)
class QuadratureGrid:
    N: int
    n_t: int
    n_v: int
    K1: int
    K2: int
    tol: float = DEFAULT_WEHRL_TOL

    def __post_init__(self):
        if min(self.n_t, self.n_v, self.K1, self.K2) < 1:
            raise ValueError("grid resolutions must be positive")

    @property
    def prefactor(self) -> float:
        return (self.N + 1) * (self.N + 2) / (4.0 * math.pi ** 2)

    @property
    def size(self) -> int:
        return self.n_t * self.n_v * self.K1 * self.K2

    def simplex(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Simplex nodes (s1, s2) and weights; the weights sum to 1/2."""
        x, wx = roots_jacobi(self.n_t, 0.0, 1.0)
        t = 0.5 * (x + 1.0)
        wt = wx / 4.0
        y, wy = roots_legendre(self.n_v)
        v = 0.5 * (y + 1.0)
        wv = 0.5 * wy
        T, V = np.meshgrid(t, v, indexing="ij")
        W = np.outer(wt, wv)
        return (T * (1.0 - V)).ravel(), (T * V).ravel(), W.ravel()

    def angles(self) -> tuple[np.ndarray, np.ndarray]:
        return (2.0 * math.pi * np.arange(self.K1) / self.K1,
                2.0 * math.pi * np.arange(self.K2) / self.K2)

    def refined(self, factor: float = 1.5) -> "QuadratureGrid":
        return replace(
            self,
            n_t=math.ceil(self.n_t * factor),
            n_v=math.ceil(self.n_v * factor),
            K1=math.ceil(self.K1 * factor),
            K2=self.K2 if self.K2 == 1 else math.ceil(self.K2 * factor),
        )

    def coarsened(self) -> "QuadratureGrid":
        return replace(
            self,
            n_t=max(1, self.n_t - 1),
            n_v=max(1, self.n_v - 1),
            K1=max(1, self.K1 - 2),
            K2=self.K2 if self.K2 == 1 else max(1, self.K2 - 2),
        )


def build_grid(N: int, nu_max: float = 2.0, tol: float = DEFAULT_WEHRL_TOL, *,
               degree: int | None = None, angular: int | None = None,
               k2: int | None = None) -> QuadratureGrid:
    """Grid exact for moments up to order ``nu_max`` of N-boson Husimi fields.

    ``degree`` and ``angular`` override the simplex polynomial degree and
    the angular node count. Pass ``k2=1`` only for fields that do not
    depend on arg(z2).
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if not nu_max > 0:
        raise ValueError(f"nu_max must be positive, got {nu_max}")
    band = math.ceil(nu_max * N)
    if degree is None:
        degree = band + 2
    if angular is None:
        angular = 2 * band + 2
    n = math.ceil((degree + 1) / 2)
    return QuadratureGrid(N, n, n, angular, angular if k2 is None else k2, tol)


class _FunctionField(HusimiField):
    def __init__(self, fn, N):
        self.fn, self.N = fn, N

    def __call__(self, z1, z2):
        return self.fn(z1, z2)


def integrate(field, grid: QuadratureGrid, transform=None, reduce: bool = False) -> float:
    """Integral of ``transform(field)`` against dmu on the grid.

    ``field`` is a HusimiField or any callable f(z1, z2) on complex arrays.
    With ``reduce`` the field is swapped for its symmetry-reduced
    equivalent. If the field declares independence of arg(z2), a single
    theta2 node is used regardless of ``grid.K2``.
    """
    if not isinstance(field, HusimiField):
        field = _FunctionField(field, grid.N)
    if reduce:
        field = field.reduced()
    if field.theta2_invariant and grid.K2 != 1:
        grid = replace(grid, K2=1)
    s1, s2, w = grid.simplex()
    s0 = np.clip(1.0 - s1 - s2, 0.0, None)
    a0, a1, a2 = np.sqrt(s0), np.sqrt(s1), np.sqrt(s2)
    th1, th2 = grid.angles()
    step = max(1, CHUNK_VALUES // (grid.K1 * grid.K2))
    partial = []
    for k in range(0, len(w), step):
        sl = slice(k, k + step)
        vals = field.on_grid(a0[sl], a1[sl], a2[sl], th1, th2)
        if transform is not None:
            vals = transform(vals)
        ang = np.mean(np.asarray(vals).reshape(vals.shape[0], -1), axis=1)
        partial.append(float(np.dot(w[sl], ang)))
    return math.fsum(partial) * grid.prefactor * 4.0 * math.pi ** 2


def total_measure(grid: QuadratureGrid) -> float:
    """Integral of the constant 1, i.e. the dimension (N+1)(N+2)/2."""
    s1, s2, w = grid.simplex()
    return math.fsum(w) * grid.prefactor * 4.0 * math.pi ** 2


def _power_transform(nu: float):
    if float(nu).is_integer():
        k = int(nu)
        return lambda f: np.clip(f, 0.0, None) ** k
    return lambda f: np.exp(nu * np.log(np.clip(f, LOG_CLAMP, None)))


def _entropy_density(f):
    f = np.clip(f, 0.0, None)
    return -f * np.log(np.clip(f, LOG_CLAMP, None))


def moment(field, nu: float, grid: QuadratureGrid, reduce: bool = False) -> MomentResult:
    """nu-th moment of the field, with the change against a coarser grid as
    the error estimate."""
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    tr = _power_transform(nu)
    value = integrate(field, grid, tr, reduce)
    coarse = integrate(field, grid.coarsened(), tr, reduce)
    return MomentResult(float(nu), value, abs(value - coarse))


def ipr(field, grid: QuadratureGrid, reduce: bool = False) -> float:
    return moment(field, 2, grid, reduce).value


def renyi_wehrl(field, nu: float, grid: QuadratureGrid, reduce: bool = False) -> float:
    if nu == 1:
        raise ValueError("nu = 1 is the Wehrl entropy; use wehrl()")
    return math.log(moment(field, nu, grid, reduce).value) / (1.0 - nu)


def wehrl_result(field, grid: QuadratureGrid, tol: float | None = None,
                 max_refinements: int = 5, max_nodes: int = 20_000_000,
                 reduce: bool = False) -> MomentResult:
    """Wehrl entropy, refining the grid until successive values agree to tol."""
    tol = grid.tol if tol is None else tol
    if reduce and isinstance(field, HusimiField):
        field = field.reduced()
    if isinstance(field, HusimiField) and field.theta2_invariant:
        grid = replace(grid, K2=1)
    value = integrate(field, grid, _entropy_density)
    err = math.inf
    for _ in range(max_refinements):
        finer = grid.refined()
        if finer.size > max_nodes:
            break
        new = integrate(field, finer, _entropy_density)
        err = abs(new - value)
        grid, value = finer, new
        if err < tol:
            break
    if err >= tol:
        log.warning("Wehrl entropy not converged to %.1e (last change %.2e)", tol, err)
    return MomentResult(1.0, value, err)


def wehrl(field, grid: QuadratureGrid, tol: float | None = None, **kw) -> float:
    return wehrl_result(field, grid, tol, **kw).value


def closed_form_cat_moment(N: int, nu: float) -> float:
    """Moment of the r = 0 (linear phase) Husimi field."""
    return (N + 1) * (N + 2) / ((1 + nu * N) * (2 + nu * N))


def closed_form_cat_wehrl(N: int) -> float:
    """Wehrl entropy of any coherent state, the conjectured minimum."""
    return N * (3 + 2 * N) / ((N + 1) * (N + 2))


def asymptotic_moment(nu: float, xi: float) -> float:
    if xi == 0:
        return nu ** -2.0
    if xi == 1:
        return 2.0 ** (1.0 - nu) * nu ** -2.0
    raise ValueError(f"asymptotic forms exist only for xi in {{0, 1}}, got {xi}")


def asymptotic_wehrl(xi: float) -> float:
    if xi == 0:
        return 2.0
    if xi == 1:
        return 2.0 + math.log(2.0)
    raise ValueError(f"asymptotic forms exist only for xi in {{0, 1}}, got {xi}")
