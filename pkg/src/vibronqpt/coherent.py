"""SU(3) projective coherent states, the boson condensate and its
even-parity (cat) projection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class PhasePoint:
    """Affine chart point (z1, z2) of CP^2."""

    z1: complex
    z2: complex

    def __post_init__(self):
        if not (np.isfinite(self.z1) and np.isfinite(self.z2)):
            raise ValueError("phase point components must be finite")

    @property
    def x(self) -> tuple[float, float]:
        return (self.z1.real, self.z2.real)

    @property
    def p(self) -> tuple[float, float]:
        return (self.z1.imag, self.z2.imag)

    @property
    def norm2(self) -> float:
        return abs(self.z1) ** 2 + abs(self.z2) ** 2


@dataclass(frozen=True)
class CatState:
    N: int
    r: float
    parity: str = "even"

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"radius must be nonnegative, got {self.r}")
        if self.parity != "even":
            raise ValueError("only even-parity cat states are supported")

    @property
    def overlap(self) -> float:
        return cat_overlap(self.N, self.r)

    @property
    def norm(self) -> float:
        return cat_norm(self.N, self.r)


def log_multinomial(N, n, m):
    """log of N! / ((N-n)! (n-m)! m!), elementwise."""
    N, n, m = (np.asarray(a, dtype=float) for a in (N, n, m))
    return gammaln(N + 1) - gammaln(N - n + 1) - gammaln(n - m + 1) - gammaln(m + 1)


def _check_index(N: int, n: int, m: int):
    if not (0 <= m <= n <= N):
        raise ValueError(f"need 0 <= m <= n <= N, got N={N}, n={n}, m={m}")


def cs_coefficient(N: int, n: int, m: int, p: PhasePoint) -> complex:
    """Component of |z1, z2> along |N; n, l = n - 2m>."""
    _check_index(N, n, m)
    pref = np.exp(0.5 * log_multinomial(N, n, m))
    # Python's 0**0 == 1 keeps the vacuum component exact at the origin
    return complex(pref * p.z1 ** (n - m) * p.z2 ** m / (1.0 + p.norm2) ** (N / 2))


def cs_coefficients(N: int, p: PhasePoint) -> dict[tuple[int, int], complex]:
    return {(n, m): cs_coefficient(N, n, m, p) for n in range(N + 1) for m in range(n + 1)}


def cs_overlap(p: PhasePoint, q: PhasePoint, N: int) -> complex:
    """<p|q> for the N-boson coherent states at p and q."""
    num = (1.0 + np.conj(p.z1) * q.z1 + np.conj(p.z2) * q.z2) ** N
    return complex(num / ((1.0 + p.norm2) ** (N / 2) * (1.0 + q.norm2) ** (N / 2)))


def condensate_point(r: float, theta: float = 0.0) -> PhasePoint:
    """Boson-condensate point (-r e^{-i theta}, r e^{i theta}) / sqrt(2)."""
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    return PhasePoint(complex(-r / SQRT2 * np.exp(-1j * theta)), complex(r / SQRT2 * np.exp(1j * theta)))


def _q(r: float) -> float:
    r2 = r * r
    return (1.0 - r2) / (1.0 + r2)


def cat_overlap(N: int, r: float) -> float:
    """<N; -r | N; r> = ((1 - r^2) / (1 + r^2))^N."""
    return _q(r) ** N


def cat_norm(N: int, r: float) -> float:
    return SQRT2 * np.sqrt(1.0 + cat_overlap(N, r))


def cat_mean_n(N: int, r: float) -> float:
    """<n> in the even cat state |N; r, +>."""
    q = _q(r)
    r2 = r * r
    return N * r2 / (1.0 + r2) * (1.0 - q ** (N - 1)) / (1.0 + q ** N)


def cat_mean_w2(N: int, r: float) -> float:
    """<W^2> in the even cat state |N; r, +>.

    Written as 2N ((1+r^2)^(N-2) (1 + 2N r^2 + r^4) + (1-r^2)^N)
    / ((1+r^2)^N + (1-r^2)^N), divided through by (1+r^2)^N.
    """
    q = _q(r)
    r2 = r * r
    direct = (1.0 + 2 * N * r2 + r2 * r2) / (1.0 + r2) ** 2
    return 2.0 * N * (direct + q ** N) / (1.0 + q ** N)


def cs_mean_n(N: int, r: float) -> float:
    return N * r * r / (1.0 + r * r)


def cs_mean_w2(N: int, r: float) -> float:
    r2 = r * r
    return 2.0 * N * (1.0 + 2 * N * r2 + r2 * r2) / (1.0 + r2) ** 2
