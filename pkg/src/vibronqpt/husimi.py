"""Husimi distributions of the exact ground state and of the two
coherent-state ansatzes, with planar cross sections for plotting."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherent import SQRT2, PhasePoint, cat_norm, log_multinomial
from .spectra import GroundState, ground_state

# above this boson number complex powers go through logarithms
LOG_POWER_THRESHOLD = 150


def _power(w, N: int):
    w = np.asarray(w)
    if N <= LOG_POWER_THRESHOLD:
        return w ** N
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(N * np.log(w.astype(complex)))
    return np.where(w == 0, 0.0, out)


class HusimiField:
    """Base class: a real, nonnegative function on the affine chart of CP^2.

    Subclasses provide `amplitude(z1, z2)`, the overlap <z1, z2|psi>. The
    integrator calls `on_grid` with the square roots of simplex coordinates
    and the torus angles; the default builds affine points and defers to
    `__call__`.
    """

    kind: str = ""
    N: int
    xi: float | None = None

    def amplitude(self, z1, z2):
        raise NotImplementedError

    def __call__(self, z1, z2):
        return np.abs(self.amplitude(z1, z2)) ** 2

    def at(self, p: PhasePoint) -> float:
        return float(self(np.asarray(p.z1), np.asarray(p.z2)))

    def on_grid(self, a0, a1, a2, theta1, theta2):
        """Values on (simplex node) x theta1 x theta2, shape (S, K1, K2)."""
        rho1 = (a1 / a0)[:, None, None]
        rho2 = (a2 / a0)[:, None, None]
        z1 = rho1 * np.exp(1j * theta1)[None, :, None]
        z2 = rho2 * np.exp(1j * theta2)[None, None, :]
        return self(z1, z2)

    @property
    def theta2_invariant(self) -> bool:
        """True when integrating at arg(z2) = 0 alone is exact."""
        return False

    def reduced(self) -> "HusimiField":
        """A field with identical integrals that is `theta2_invariant`,
        or the field itself when no reduction is known."""
        return self


class ExactHusimi(HusimiField):
    kind = "exact"

    def __init__(self, gs: GroundState, reduce_phase: bool = False):
        self.gs = gs
        self.reduce_phase = reduce_phase
        self.N = gs.N
        self.xi = gs.xi
        n, m, c = gs.arrays()
        self._a = n - m
        self._b = m
        self._n = n
        self._logpref = 0.5 * log_multinomial(self.N, n, m)
        self._c = c

    def amplitude(self, z1, z2):
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        h = 1.0 / np.sqrt(1.0 + np.abs(z1) ** 2 + np.abs(z2) ** 2)
        w1 = np.conj(z1) * h
        w2 = np.conj(z2) * h
        out = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
        for c, lp, a, b, n in zip(self._c, self._logpref, self._a, self._b, self._n):
            if self.N <= LOG_POWER_THRESHOLD:
                term = np.exp(lp) * h ** (self.N - n) * w1 ** a * w2 ** b
            else:
                with np.errstate(divide="ignore"):
                    logt = lp + (self.N - n) * np.log(h) + a * np.log(w1 + 0j) + b * np.log(w2 + 0j)
                term = np.where((a and w1 == 0) | (b and w2 == 0), 0.0, np.exp(logt))
            out = out + c * term
        return out

    def on_grid(self, a0, a1, a2, theta1, theta2):
        # separable in the simplex radii and the two torus phases
        with np.errstate(divide="ignore"):
            logr = (
                self._logpref[None, :]
                + (self.N - self._n)[None, :] * np.log(a0)[:, None]
                + self._a[None, :] * np.log(a1)[:, None]
                + self._b[None, :] * np.log(a2)[:, None]
            )
        radial = self._c[None, :] * np.exp(logr)
        e1 = np.exp(-1j * np.outer(theta1, self._a))
        e2 = np.exp(-1j * np.outer(theta2, self._b))
        amp = np.einsum("sk,ik,jk->sij", radial, e1, e2, optimize=True)
        return amp.real ** 2 + amp.imag ** 2

    @property
    def theta2_invariant(self) -> bool:
        # a single-l state depends on theta1 + theta2 only, so the uniform
        # torus sum collapses onto theta2 = 0
        return self.reduce_phase

    def reduced(self) -> "ExactHusimi":
        return ExactHusimi(self.gs, reduce_phase=True)


class CoherentHusimi(HusimiField):
    """Husimi distribution of the condensate |N; r> (theta = 0)."""

    kind = "cs"

    def __init__(self, N: int, r: float, xi: float | None = None, aligned: bool = False):
        if r < 0:
            raise ValueError(f"radius must be nonnegative, got {r}")
        self.N, self.r, self.xi = N, float(r), xi
        self.aligned = aligned

    def amplitude(self, z1, z2):
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        if self.aligned:
            u = self.r * np.conj(z1)
        else:
            u = self.r / SQRT2 * (np.conj(z2) - np.conj(z1))
        den = np.sqrt((1.0 + np.abs(z1) ** 2 + np.abs(z2) ** 2) * (1.0 + self.r ** 2))
        return _power((1.0 + u) / den, self.N)

    @property
    def theta2_invariant(self) -> bool:
        return self.aligned

    def reduced(self) -> "CoherentHusimi":
        return CoherentHusimi(self.N, self.r, self.xi, aligned=True)


class CatHusimi(HusimiField):
    """Husimi distribution of the even cat state |N; r, +>.

    With ``aligned=True`` the field is composed with the unitary change of
    chart (z1, z2) -> ((z2 - z1)/sqrt2, (z1 + z2)/sqrt2). The measure and
    |z|^2 are invariant under it, so every integral is unchanged, while the
    aligned field no longer depends on arg(z2).
    """

    kind = "cat"

    def __init__(self, N: int, r: float, xi: float | None = None, aligned: bool = False):
        if r < 0:
            raise ValueError(f"radius must be nonnegative, got {r}")
        self.N, self.r, self.xi = N, float(r), xi
        self.aligned = aligned
        self._norm = cat_norm(N, self.r)

    def amplitude(self, z1, z2):
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        if self.aligned:
            u = self.r * np.conj(z1)
        else:
            u = self.r / SQRT2 * (np.conj(z2) - np.conj(z1))
        den = np.sqrt((1.0 + np.abs(z1) ** 2 + np.abs(z2) ** 2) * (1.0 + self.r ** 2))
        return (_power((1.0 + u) / den, self.N) + _power((1.0 - u) / den, self.N)) / self._norm

    @property
    def theta2_invariant(self) -> bool:
        return self.aligned

    def reduced(self) -> "CatHusimi":
        return CatHusimi(self.N, self.r, self.xi, aligned=True)


def husimi_exact(gs: GroundState, p: PhasePoint) -> float:
    return ExactHusimi(gs).at(p)


def husimi_cs(N: int, r: float, p: PhasePoint) -> float:
    return CoherentHusimi(N, r).at(p)


def husimi_cat(N: int, r: float, p: PhasePoint) -> float:
    return CatHusimi(N, r).at(p)


def make_field(kind: str, N: int, xi: float) -> HusimiField:
    """Field of the given kind at its (exact or variational) optimum."""
    from .variational import cat_equilibrium, cs_equilibrium

    if kind == "exact":
        return ExactHusimi(ground_state(N, xi))
    if kind == "cs":
        return CoherentHusimi(N, cs_equilibrium(xi)[0], xi)
    if kind == "cat":
        return CatHusimi(N, cat_equilibrium(N, xi)[0], xi)
    raise ValueError(f"unknown field kind {kind!r}")


@dataclass
class CrossSectionGrid:
    axis: str
    coords: np.ndarray
    values: np.ndarray

    @property
    def shape(self):
        return self.values.shape


def axis_coordinates(lo: float, hi: float, step: float) -> np.ndarray:
    if not (step > 0 and hi > lo):
        raise ValueError(f"need lo < hi and step > 0, got ({lo}, {hi}, {step})")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def cross_section(field: HusimiField, axis: str, lo: float, hi: float, step: float) -> CrossSectionGrid:
    """Sample the field on the position (z real) or momentum (z imaginary) plane.

    ``values[i, j]`` is the field at first coordinate ``coords[i]`` and
    second coordinate ``coords[j]``.
    """
    u = axis_coordinates(lo, hi, step)
    U1, U2 = np.meshgrid(u, u, indexing="ij")
    if axis == "position":
        vals = field(U1 + 0j, U2 + 0j)
    elif axis == "momentum":
        vals = field(1j * U1, 1j * U2)
    else:
        raise ValueError(f"axis must be 'position' or 'momentum', got {axis!r}")
    return CrossSectionGrid(axis, u, np.asarray(vals, dtype=float))


def local_maxima(values: np.ndarray, rel_floor: float = 1e-6) -> list[tuple[int, int]]:
    """Interior points strictly above all eight neighbours.

    Points below ``rel_floor`` times the global maximum are ignored.
    """
    v = np.asarray(values)
    floor = rel_floor * v.max()
    peaks = []
    for i in range(1, v.shape[0] - 1):
        for j in range(1, v.shape[1] - 1):
            c = v[i, j]
            if c <= floor:
                continue
            patch = v[i - 1:i + 2, j - 1:j + 2].copy()
            patch[1, 1] = -np.inf
            if c > patch.max():
                peaks.append((i, j))
    return peaks


def count_packets(values: np.ndarray, rel_height: float = 0.1) -> int:
    """Number of local maxima reaching ``rel_height`` of the global maximum.

    Interference ripples between packets produce local maxima far below
    the packet heights; the threshold keeps them out of the count.
    """
    return len(local_maxima(values, rel_floor=rel_height))
