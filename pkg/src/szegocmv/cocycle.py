"""Products of transfer matrices, cone certificates and Lyapunov exponents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .core import (
    ConeConstants,
    Mat2C,
    PointLike,
    _as_complex,
    as_word,
    cone_constants,
    conjugated_matrix,
    in_gap,
    is_admissible,
    principal_root,
    transfer_matrix,
)
from .errors import DomainError, NotHyperbolicError, NumericalFailureError


def product(word, z: PointLike) -> Mat2C:
    """A(alpha_n, z) ... A(alpha_1, z); the first coefficient acts first."""
    out = Mat2C.identity()
    for alpha in as_word(word):
        out = transfer_matrix(alpha, z) @ out
    return out


@dataclass(frozen=True)
class GrowthTrace:
    log_norms: np.ndarray
    kappa_floor: float  # per-step growth certified by the cone; nan if none


def growth_trace(word, z: PointLike, every: int = _kernels.RENORM_EVERY) -> GrowthTrace:
    """log ||A(alpha_n, z) ... A(alpha_1, z)|| for n = 1 .. len(word)."""
    word = as_word(word)
    z = _as_complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise DomainError(f"|z| = {abs(z)!r} exceeds 1")
    logs = _kernels.log_norm_trace(np.ascontiguousarray(word.alphas), z, every)
    kappa = math.nan
    if len(word) and word.real_positive and abs(abs(z) - 1.0) < 1e-12:
        A = word.min_modulus()
        if in_gap(z, A):
            kappa = cone_constants(A, principal_root(z, A)).kappa
    return GrowthTrace(log_norms=logs, kappa_floor=kappa)


class Certificate(NamedTuple):
    holds: bool
    constants: ConeConstants | None


def hyperbolicity_certificate(A_min: float, z: PointLike) -> Certificate:
    """Cone certificate valid for every word with coefficients in [A_min, 1)."""
    if not 0.0 < A_min < 1.0:
        raise DomainError(f"A = {A_min!r} not in (0, 1)")
    if not in_gap(z, A_min):
        return Certificate(False, None)
    return Certificate(True, cone_constants(A_min, principal_root(z, A_min)))


def cone_step_check(A, w, alpha, x, y):
    """Vectorized one-step cone test in B-coordinates.

    Returns a boolean array: True where (x', y') = B(alpha, w)(x, y) satisfies
    y' > C|x'| and y' > kappa y.  Inputs must satisfy the hypotheses
    (admissible w, alpha in [A, 1), y > C|x|); they are not re-validated here.
    """
    A, alpha, x, y = (np.asarray(v, dtype=float) for v in (A, alpha, x, y))
    w = np.asarray(w, dtype=complex)
    C = np.sqrt((1.0 + A) / (1.0 - A))
    kappa = C * w.real - np.abs(w.imag)
    rho = np.sqrt(1.0 - alpha * alpha)
    lo, hi = (1.0 - alpha) / rho, (1.0 + alpha) / rho
    xn = lo * (w.real * x - w.imag * y)
    yn = hi * (w.imag * x + w.real * y)
    return (yn > C * np.abs(xn)) & (yn > kappa * y)


class ConeOrbit(NamedTuple):
    ok: bool
    log_y: np.ndarray  # log y_k for k = 0 .. n (y_0 from v0)
    constants: ConeConstants


def cone_orbit(word, z: PointLike, v0=(0.0, 1.0), A: float | None = None) -> ConeOrbit:
    """Iterate v_k = B(alpha_k, w) v_{k-1} and test the cone conditions.

    ``A`` defaults to the smallest coefficient.  The vector is rescaled as it
    grows; both conditions are homogeneous so this changes nothing.
    """
    word = as_word(word)
    if not word.real_positive:
        raise DomainError("cone orbit needs a real word with entries in (0, 1)")
    if A is None:
        A = word.min_modulus()
    if not 0.0 < A < 1.0:
        raise DomainError(f"A = {A!r} not in (0, 1)")
    if word.min_modulus() < A:
        raise DomainError(f"word has a coefficient below A = {A!r}")
    w = principal_root(z, A)
    consts = cone_constants(A, w)
    x, y = (float(c) for c in v0)
    if not y > consts.C * abs(x):
        raise DomainError("v0 is not inside the cone y > C|x|")
    log_y = np.empty(len(word) + 1)
    log_y[0] = math.log(y)
    scale = 0.0
    ok = True
    for k, alpha in enumerate(word.alphas.real, start=1):
        B = conjugated_matrix(alpha, w)
        xn = B.a.real * x + B.b.real * y
        yn = B.c.real * x + B.d.real * y
        if not (yn > consts.C * abs(xn) and yn > consts.kappa * y):
            ok = False
        x, y = xn, yn
        log_y[k] = scale + math.log(y) if y > 0 else -math.inf
        if y > 1e100:
            scale += math.log(y)
            x, y = x / y, 1.0
    return ConeOrbit(ok, log_y, consts)


def cone_orbit_check(word, z: PointLike, v0=(0.0, 1.0), A: float | None = None) -> bool:
    return cone_orbit(word, z, v0, A).ok


class LyapunovEstimate(NamedTuple):
    value: float
    std_error: float
    n: int
    trials: int


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one Monte Carlo trial."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.Philox(ss))


def lyapunov_estimate(measure, z: PointLike, n: int, trials: int = 1,
                      seed: int = 0) -> LyapunovEstimate:
    """Monte Carlo mean of (1/n) log ||A_z^n|| over i.i.d. words."""
    if n < 1 or trials < 1:
        raise DomainError("need n >= 1 and trials >= 1")
    z = _as_complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise DomainError(f"|z| = {abs(z)!r} exceeds 1")
    samples = np.empty(trials)
    for t in range(trials):
        alphas = np.ascontiguousarray(measure.sample(trial_rng(seed, t), n))
        samples[t] = _kernels.log_norm_trace(alphas, z, _kernels.RENORM_EVERY)[-1] / n
    err = float(samples.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return LyapunovEstimate(float(samples.mean()), err, n, trials)


@dataclass(frozen=True)
class Splitting:
    stable_dir: np.ndarray
    unstable_dir: np.ndarray
    contraction_rate: float
    eigenvalues: tuple


def _projectively_close(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    return abs(abs(np.vdot(u, v)) - 1.0) <= tol


def splitting_periodic(word, z: PointLike, tol: float = 1e-9) -> Splitting:
    """Stable and unstable eigen-directions of the period monodromy."""
    word = as_word(word)
    if len(word) < 1:
        raise DomainError("empty word")
    z = _as_complex(z)
    p = len(word)
    M = product(word, z)
    # |Tr M| / |z|^{p/2} is the modulus of the normalized discriminant
    ntrace = abs(M.trace) / abs(z) ** (p / 2)
    if not ntrace > 2.0:
        raise NotHyperbolicError(f"|normalized trace| = {ntrace:.6g} <= 2")
    vals, vecs = np.linalg.eig(M.to_array())
    order = np.argsort(np.abs(vals))
    lam_s, lam_u = vals[order[0]], vals[order[1]]
    vs, vu = vecs[:, order[0]], vecs[:, order[1]]
    # fix the phase so the largest entry is real positive
    vs = vs * np.exp(-1j * np.angle(vs[np.argmax(np.abs(vs))]))
    vu = vu * np.exp(-1j * np.angle(vu[np.argmax(np.abs(vu))]))
    Ma = M.to_array()
    for v in (vs, vu):
        if not _projectively_close(Ma @ v, v, tol):
            raise NumericalFailureError("eigen-direction is not invariant")
    return Splitting(
        stable_dir=vs,
        unstable_dir=vu,
        contraction_rate=float(abs(lam_s) ** (1.0 / p)),
        eigenvalues=(complex(lam_s), complex(lam_u)),
    )


__all__ = [
    "Certificate",
    "ConeOrbit",
    "GrowthTrace",
    "LyapunovEstimate",
    "Splitting",
    "cone_orbit",
    "cone_orbit_check",
    "cone_step_check",
    "growth_trace",
    "hyperbolicity_certificate",
    "is_admissible",
    "lyapunov_estimate",
    "product",
    "splitting_periodic",
    "trial_rng",
]
