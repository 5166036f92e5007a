"""Root pipelines for discriminants and partition functions.

Two independent routes are provided:

* ``companion_zeros``: eigenvalues of the (balanced) companion matrix of the
  coefficient vector.
* ``phase_zeros``: a counting method.  With M(theta) the cone-coordinate
  monodromy, Tr M(theta) = 0 exactly when M(theta)^2 = -I, i.e. when the lifted
  angle G(theta) swept by a fixed vector over two passes of the word is an odd
  multiple of pi.  G is continuous, strictly increasing and gains 2 p pi per
  turn, so every zero is bracketed by a grid and refined without being lost.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as P

from . import _kernels
from .arcs import ZeroSet
from .errors import NumericalFailureError

TWO_PI = 2.0 * math.pi


def companion_zeros(coefficients, unit_tol: float = 1e-8) -> ZeroSet:
    """Zeros of sum c_k z^k; raises NumericalFailureError off the circle."""
    c = np.asarray(coefficients, dtype=complex)
    if not np.all(np.isfinite(c)):
        raise NumericalFailureError("polynomial coefficients overflow")
    c = c / np.max(np.abs(c))
    roots = P.polyroots(c)
    return ZeroSet.from_roots(roots, unit_tol=unit_tol)


class PhaseCounter:
    """Lifted-angle function G(theta) for one word."""

    def __init__(self, alphas):
        self.h = _kernels.cone_entries(alphas)
        self.p = self.h[0].size

    def __call__(self, thetas) -> np.ndarray:
        th = np.ascontiguousarray(np.atleast_1d(np.asarray(thetas, dtype=float)))
        return _kernels.phase_lift(*self.h, th, 2)

    def levels_between(self, g_lo: float, g_hi: float) -> np.ndarray:
        """Odd multiples of pi in [g_lo, g_hi)."""
        first = math.ceil((g_lo - math.pi) / TWO_PI)
        last = math.ceil((g_hi - math.pi) / TWO_PI) - 1
        return math.pi * (2 * np.arange(first, last + 1) + 1)


def count_zeros(alphas, a: float, b: float) -> int:
    """Number of discriminant zeros with angle in [a, b), for a <= b <= a + 2 pi."""
    if not a <= b <= a + TWO_PI + 1e-15:
        raise ValueError("need a <= b <= a + 2 pi")
    G = PhaseCounter(alphas)
    ga, gb = G([a, b])
    return int(G.levels_between(ga, gb).size)


def phase_zeros(alphas, xtol: float = 1e-13, max_iter: int = 200) -> np.ndarray:
    """All p zeros of the discriminant as increasing angles in [-pi, pi)."""
    G = PhaseCounter(alphas)
    p = G.p
    g0 = float(G(-math.pi)[0])
    levels = G.levels_between(g0, g0 + p * TWO_PI)
    if levels.size != p:  # rounding at the seam
        levels = G.levels_between(g0, g0 + p * TWO_PI + 1e-9)[:p]

    m = max(2 * p, 64) + 1
    grid = np.linspace(-math.pi, math.pi, m)
    gg = np.maximum.accumulate(G(grid))
    idx = np.clip(np.searchsorted(gg, levels), 1, m - 1)
    lo, hi = grid[idx - 1].copy(), grid[idx].copy()
    flo, fhi = gg[idx - 1] - levels, gg[idx] - levels
    root = 0.5 * (lo + hi)
    side = np.zeros(p, dtype=int)
    bisect = np.zeros(p, dtype=bool)
    ftol = 64 * np.finfo(float).eps * (np.abs(levels) + 1.0)

    active = np.flatnonzero(flo < 0)
    root[flo >= 0] = lo[flo >= 0]
    for _ in range(max_iter):
        if not active.size:
            break
        a, b, fa, fb = lo[active], hi[active], flo[active], fhi[active]
        with np.errstate(all="ignore"):
            c = (a * fb - b * fa) / (fb - fa)
        use_mid = bisect[active] | ~((c > a) & (c < b))
        c = np.where(use_mid, 0.5 * (a + b), c)
        fc = G(c) - levels[active]
        root[active] = c
        neg = fc < 0
        sd = side[active]
        # Illinois: halve the stale end when the same side moves twice
        fb = np.where(neg & (sd == -1), 0.5 * fb, fb)
        fa = np.where(~neg & (sd == 1), 0.5 * fa, fa)
        new_lo = np.where(neg, c, a)
        new_hi = np.where(neg, b, c)
        lo[active], hi[active] = new_lo, new_hi
        flo[active] = np.where(neg, fc, fa)
        fhi[active] = np.where(neg, fb, fc)
        side[active] = np.where(neg, -1, 1)
        bisect[active] = (new_hi - new_lo) > 0.5 * (b - a)
        done = (np.abs(fc) <= ftol[active]) | (new_hi - new_lo < xtol)
        active = active[~done]
    return np.sort(np.mod(root + math.pi, TWO_PI) - math.pi)
