"""Periodic discriminants, band structure and CMV matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import optimize

from . import _kernels
from .arcs import ArcSet, ZeroSet, hausdorff_distance
from .core import PointLike, _as_complex, as_word, gap_arc
from .errors import DomainError, NumericalFailureError, SizeError
from .roots import companion_zeros, phase_zeros

TWO_PI = 2.0 * math.pi
MAX_COEFFICIENT_DEGREE = 4096
# above this length the companion route is skipped by default
COMPANION_AUTO_MAX = 64
MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class DiscriminantPoly:
    """T(z) = Tr A(alpha_p, z) ... A(alpha_1, z) as ascending coefficients."""

    coefficients: np.ndarray
    p: int

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coefficients)

    @property
    def leading(self) -> complex:
        return complex(self.coefficients[-1])


def discriminant_poly(word) -> DiscriminantPoly:
    word = as_word(word)
    p = len(word)
    if p < 1:
        raise DomainError("discriminant needs a nonempty word")
    if p > MAX_COEFFICIENT_DEGREE:
        raise SizeError(f"word length {p} exceeds {MAX_COEFFICIENT_DEGREE}")
    # m[i, j] is the polynomial in entry (i, j) of the running product
    m = np.zeros((2, 2, p + 1), dtype=complex)
    m[0, 0, 0] = m[1, 1, 0] = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        for alpha, rho in zip(word.alphas, word.rhos):
            top = np.roll(m[0], 1, axis=-1)  # z * row 0 (degree never overflows)
            bottom = m[1]
            m = np.stack([(top - alpha.conjugate() * bottom) / rho,
                          (bottom - alpha * top) / rho])
    return DiscriminantPoly(coefficients=m[0, 0] + m[1, 1], p=p)


class DiscriminantValue(NamedTuple):
    value: float
    residual: float


def normalized_discriminant(word, theta):
    """D(theta) = Re(e^{-i p theta/2} T(e^{i theta})) and its imaginary residual.

    The residual is |Im| relative to max(1, |D|).  Accepts scalar or array theta.
    """
    word = as_word(word)
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    z = np.exp(1j * th)
    m11 = np.ones_like(z)
    m12 = np.zeros_like(z)
    m21 = np.zeros_like(z)
    m22 = np.ones_like(z)
    logscale = np.zeros(th.shape)
    for j, (alpha, rho) in enumerate(zip(word.alphas, word.rhos)):
        ac = alpha.conjugate()
        m11, m12, m21, m22 = (
            (z * m11 - ac * m21) / rho,
            (z * m12 - ac * m22) / rho,
            (m21 - alpha * z * m11) / rho,
            (m22 - alpha * z * m12) / rho,
        )
        if (j + 1) % _kernels.RENORM_EVERY == 0:
            r = np.abs(m11) + np.abs(m12) + np.abs(m21) + np.abs(m22)
            m11, m12, m21, m22 = m11 / r, m12 / r, m21 / r, m22 / r
            logscale += np.log(r)
    t = (m11 + m22) * np.exp(-0.5j * len(word) * th)
    with np.errstate(over="ignore", under="ignore"):
        scale = np.exp(logscale)
        value = t.real * scale
        # the ratio is scale free; form it before scaling so overflow is harmless
        floor = np.maximum(np.exp(-logscale), np.finfo(float).tiny)
        residual = np.abs(t.imag) / np.maximum(floor, np.abs(t.real))
    if np.ndim(theta) == 0:
        return DiscriminantValue(float(value[0]), float(residual[0]))
    return DiscriminantValue(value, residual)


def _cone_abs_discriminant(word, thetas) -> np.ndarray:
    h = _kernels.cone_entries(word.alphas)
    th = np.ascontiguousarray(np.atleast_1d(np.asarray(thetas, dtype=float)))
    mant, logs = _kernels.cone_trace(*h, th)
    with np.errstate(over="ignore"):
        return np.abs(mant) * np.exp(np.minimum(logs, 700.0))


def discriminant_zeros(word, method: str = "auto", unit_tol: float = 1e-8,
                       agree_tol: float = 1e-7) -> ZeroSet:
    """Zeros of the discriminant.

    ``companion``: eigenvalues of the companion matrix, checked for
    unimodularity.  ``phase``: the counting pipeline.  ``auto``: the phase
    pipeline, cross-checked against the companion route for short words.  A
    companion failure (clustered roots make it ill-conditioned) is not fatal
    there, but a disagreement between two successful routes is.
    """
    word = as_word(word)
    p = len(word)
    if p < 1:
        raise DomainError("discriminant needs a nonempty word")
    if method not in ("auto", "companion", "phase"):
        raise DomainError(f"unknown method {method!r}")
    if method == "companion":
        return companion_zeros(discriminant_poly(word).coefficients, unit_tol=unit_tol)
    zp = ZeroSet(phase_zeros(word.alphas))
    if method == "phase" or p > COMPANION_AUTO_MAX:
        return zp
    try:
        zc = companion_zeros(discriminant_poly(word).coefficients, unit_tol=unit_tol)
    except NumericalFailureError:
        return zp
    gap = hausdorff_distance(zc, zp)
    if len(zc) != len(zp) or gap > agree_tol:
        raise NumericalFailureError(f"companion and phase-count zeros disagree by {gap:.3e}")
    return zp


def spectrum_membership(word, z: PointLike, tol: float = MEMBERSHIP_TOL) -> bool:
    """Whether z lies in the spectrum of the periodic extended CMV matrix."""
    z = _as_complex(z)
    value, _ = normalized_discriminant(word, math.atan2(z.imag, z.real))
    return abs(value) <= 2.0 + tol


def constant_spectrum(alpha: float) -> ArcSet:
    """Spectrum of the constant-coefficient extended CMV matrix."""
    return gap_arc(alpha).complement()


@dataclass(frozen=True)
class Gap:
    start: float
    end: float
    closed: bool = False

    @property
    def length(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class BandStructure:
    spectrum: ArcSet
    bands: list
    band_edges: np.ndarray
    zeros: ZeroSet
    gaps: list = field(default_factory=list)

    @property
    def open_gaps(self) -> list:
        return [g for g in self.gaps if not g.closed]


def _edge(f, a: float, b: float) -> float:
    return optimize.brentq(f, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps)


def band_structure(word, grid_size: int | None = None) -> BandStructure:
    """Bands {|D| <= 2} located around the discriminant zeros.

    Between consecutive zeros |D| must climb to at least 2; the climb is
    sampled on the grid, edges are refined with Brent's method, and a
    maximum equal to 2 is reported as a closed gap.
    """
    word = as_word(word)
    p = len(word)
    if p < 1:
        raise DomainError("band structure needs a nonempty word")
    if grid_size is None:
        grid_size = 64 * p
    if grid_size < 64 * p:
        raise DomainError(f"grid_size must be >= 64 p = {64 * p}")

    zeros = discriminant_zeros(word)
    z = zeros.expanded()

    def absd(t):
        return _cone_abs_discriminant(word, t)

    def excess(t):
        return min(float(absd(t)[0]), 1e3) - 2.0

    gaps = []
    for k in range(p):
        a = z[k]
        b = z[k + 1] if k + 1 < p else z[0] + TWO_PI
        n = max(16, math.ceil(grid_size * (b - a) / TWO_PI))
        ts = np.linspace(a, b, n + 2)[1:-1]
        vals = absd(ts)
        i = int(np.argmax(vals))
        t_star, v_star = ts[i], vals[i]
        if v_star <= 2.0:
            lo = ts[i - 1] if i > 0 else a
            hi = ts[i + 1] if i + 1 < ts.size else b
            res = optimize.minimize_scalar(
                lambda t: -float(absd(t)[0]), bounds=(lo, hi), method="bounded",
                options={"xatol": 1e-12},
            )
            if -res.fun > v_star:
                t_star, v_star = float(res.x), -float(res.fun)
        if v_star <= 2.0 * (1.0 + MEMBERSHIP_TOL):
            gaps.append(Gap(t_star, t_star, closed=True))
        else:
            gaps.append(Gap(_edge(excess, a, t_star), _edge(excess, t_star, b)))

    bands = []
    for k in range(p):
        prev = gaps[k - 1].end - (TWO_PI if k == 0 else 0.0)
        bands.append((prev, gaps[k].start))
    spectrum = ArcSet(bands, closed=True)
    edges = np.unique(np.mod(np.array([e for g in gaps for e in (g.start, g.end)])
                             + math.pi, TWO_PI) - math.pi)
    canon_gaps = [
        Gap(float(np.mod(g.start + math.pi, TWO_PI) - math.pi),
            float(np.mod(g.start + math.pi, TWO_PI) - math.pi) + g.length, g.closed)
        for g in gaps
    ]
    canon_bands = [
        (float(np.mod(s + math.pi, TWO_PI) - math.pi),
         float(np.mod(s + math.pi, TWO_PI) - math.pi) + (e - s))
        for s, e in bands
    ]
    return BandStructure(spectrum=spectrum, bands=canon_bands, band_edges=edges,
                         zeros=zeros, gaps=canon_gaps)


def cmv_matrix(word, boundary: complex | None = None) -> np.ndarray:
    """N x N truncation of the half-line CMV matrix C = L M.

    With ``boundary`` (unimodular) replacing the last coefficient the
    truncation decouples and is unitary.
    """
    alphas = np.array(as_word(word).alphas, dtype=complex)
    n = alphas.size
    if n < 1:
        raise DomainError("empty word")
    if boundary is not None:
        alphas[-1] = complex(boundary)
    rhos = np.sqrt(np.maximum(1.0 - np.abs(alphas) ** 2, 0.0))
    L = np.zeros((n, n), dtype=complex)
    M = np.zeros((n, n), dtype=complex)
    M[0, 0] = 1.0
    for j in range(n):
        target = L if j % 2 == 0 else M
        theta = np.array([[alphas[j].conjugate(), rhos[j]], [rhos[j], -alphas[j]]])
        size = min(2, n - j)
        target[j:j + size, j:j + size] = theta[:size, :size]
    return L @ M


def assemble_cmv_rows(word, rows=None) -> np.ndarray:
    """Rows of the CMV matrix built from ``word`` (dense, one row per index)."""
    C = cmv_matrix(word)
    rows = range(C.shape[0]) if rows is None else rows
    rows = list(rows)
    if rows and (min(rows) < 0 or max(rows) >= C.shape[0]):
        raise DomainError("row range outside the word")
    return C[rows]


def bandwidth(C: np.ndarray, tol: float = 0.0) -> int:
    """Number of nonzero diagonals spanned by the matrix."""
    i, j = np.nonzero(np.abs(C) > tol)
    if not i.size:
        return 0
    d = j - i
    return int(d.max() - d.min() + 1)


def finite_cmv_eigenvalues(word, boundary: complex) -> ZeroSet:
    """Eigenvalue angles of the unitary truncation with a unimodular boundary."""
    boundary = complex(boundary)
    if abs(abs(boundary) - 1.0) > 1e-12:
        raise DomainError(f"|boundary| = {abs(boundary)!r} is not 1")
    return ZeroSet.from_roots(np.linalg.eigvals(cmv_matrix(word, boundary)),
                              unit_tol=1e-10)


def ring_cmv_matrix(word, floquet: complex = 1.0) -> np.ndarray:
    """Extended CMV matrix restricted to a ring of even length N.

    The coupling across the seam carries the unimodular Floquet factor, so the
    eigenvalues are points of the spectrum of the N-periodic extended matrix.
    """
    alphas = as_word(word).alphas
    n = alphas.size
    if n < 2 or n % 2:
        raise DomainError("ring truncation needs an even length >= 2")
    floquet = complex(floquet)
    if abs(abs(floquet) - 1.0) > 1e-12:
        raise DomainError(f"|floquet| = {abs(floquet)!r} is not 1")
    rhos = np.sqrt(1.0 - np.abs(alphas) ** 2)
    L = np.zeros((n, n), dtype=complex)
    M = np.zeros((n, n), dtype=complex)
    for j in range(n):
        target = L if j % 2 == 0 else M
        k = (j + 1) % n
        phase = floquet if k == 0 else 1.0
        target[j, j] = alphas[j].conjugate()
        target[j, k] = rhos[j] * phase
        target[k, j] = rhos[j] * np.conj(phase)
        target[k, k] = -alphas[j]
    return L @ M


def ring_cmv_eigenvalues(word, floquet: complex = 1.0) -> ZeroSet:
    return ZeroSet.from_roots(np.linalg.eigvals(ring_cmv_matrix(word, floquet)),
                              unit_tol=1e-10)
