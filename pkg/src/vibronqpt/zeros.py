"""Zero lines of the cat-state Husimi distribution.

The cat amplitude vanishes where (1 + u)^N = -(1 - u)^N with
u = r (conj z2 - conj z1) / sqrt2, i.e. u = i tan((2l + 1) pi / 2N). In real
coordinates z_j = x_j + i p_j every zero lies on a line x1 = x2,
p2 - p1 = const. We store the intercept with a positive sign,
sqrt2 / r * tan((2l + 1) pi / 2N); the derivation gives the opposite sign,
but l -> -l - 1 maps one set onto the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .husimi import CatHusimi
from .variational import cat_equilibrium


@dataclass(frozen=True)
class ZeroLine:
    index: int
    offset: float

    def points(self, p1: np.ndarray, x: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        """Points (z1, z2) on the line for the given p1 values and common x."""
        p1 = np.asarray(p1, dtype=float)
        return x + 1j * p1, x + 1j * (p1 + self.offset)


def zero_lines(N: int, r: float) -> list[ZeroLine]:
    if N < 2:
        raise ValueError(f"zero lines need N >= 2, got {N}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    if r == 0:
        return []
    half = N // 2
    lines = []
    for l in range(-half, half):
        assert abs(2 * l + 1) < N
        lines.append(ZeroLine(l, math.sqrt(2.0) / r * math.tan((2 * l + 1) * math.pi / (2 * N))))
    return lines


def verify_zeros(N: int, r: float, samples: int = 16, offset_scale: float = 1.0,
                 span: float = 2.0) -> float:
    """Largest cat Husimi value over sampled points of all zero lines.

    Points use x1 = x2 in a few positions and p1 spread over [-span, span].
    ``offset_scale`` perturbs the intercepts (negative controls).
    """
    if r <= 0:
        raise ValueError("zeros exist only for r > 0")
    field = CatHusimi(N, r)
    p1 = np.linspace(-span, span, samples)
    worst = 0.0
    for line in zero_lines(N, r):
        shifted = ZeroLine(line.index, line.offset * offset_scale)
        for x in (-0.7, 0.0, 0.4):
            z1, z2 = shifted.points(p1, x)
            worst = max(worst, float(np.max(field(z1, z2))))
    return worst


def zero_density(N: int, xi: float, window: float) -> float:
    """Zero lines with |intercept| <= window, per unit window."""
    if not window > 0:
        raise ValueError(f"window must be positive, got {window}")
    r, _ = cat_equilibrium(N, xi)
    if r == 0:
        return 0.0
    return sum(abs(z.offset) <= window for z in zero_lines(N, r)) / window
