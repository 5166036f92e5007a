"""One-dimensional ferromagnetic Ising chain with periodic boundary conditions.

With K_j = J_j / (k_B tau), h = exp(2H / (k_B tau)) and alpha_j = exp(-2 K_j),
the polynomial P(h) = h^{N/2} Z(h) is

    P(h) = exp(sum K_j) Tr prod_j [[h, alpha_j h], [alpha_j, 1]],

and the trace on the right equals prod rho_j times the Szegő discriminant of
the word (alpha_1, ..., alpha_N).  Both routes to the zeros are exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arcs import ArcSet, ZeroSet, hausdorff_distance
from .core import VerblunskyWord, gap_arc
from .ensemble import SingleSiteMeasure, sample_window
from .errors import DomainError, NumericalFailureError, SizeError
from .roots import companion_zeros, phase_zeros

BRUTEFORCE_MAX = 24
COMPANION_MAX = 64
_CHUNK = 1 << 16


@dataclass(frozen=True)
class IsingChain:
    couplings: tuple
    tau: float
    k_B: float = 1.0

    def __post_init__(self):
        J = tuple(float(j) for j in np.atleast_1d(self.couplings))
        if not J:
            raise DomainError("chain needs at least one coupling")
        if not all(j > 0 and math.isfinite(j) for j in J):
            raise DomainError("couplings must be positive and finite")
        if not (self.tau > 0 and self.k_B > 0):
            raise DomainError("tau and k_B must be positive")
        object.__setattr__(self, "couplings", J)
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "k_B", float(self.k_B))

    @property
    def N(self) -> int:
        return len(self.couplings)

    @property
    def K(self) -> np.ndarray:
        return np.array(self.couplings) / (self.k_B * self.tau)

    @property
    def beta(self) -> np.ndarray:
        """beta_j = exp(2 J_j / k_B tau)."""
        return np.exp(2.0 * self.K)


@dataclass(frozen=True)
class SpinConfig:
    sigma: tuple

    def __post_init__(self):
        s = tuple(int(x) for x in self.sigma)
        if not all(x in (1, -1) for x in s):
            raise DomainError("spins must be +1 or -1")
        object.__setattr__(self, "sigma", s)

    def __len__(self):
        return len(self.sigma)


def energy(config: SpinConfig, chain: IsingChain, H: float) -> float:
    """E = -(1/k_B tau) sum_j (J_j s_j s_{j+1} + H s_j), with s_{N+1} = s_1."""
    if len(config) != chain.N:
        raise DomainError(f"config length {len(config)} != chain length {chain.N}")
    s = np.array(config.sigma, dtype=float)
    J = np.array(chain.couplings)
    return float(-(np.sum(J * s * np.roll(s, -1)) + H * s.sum()) / (chain.k_B * chain.tau))


def partition_bruteforce(chain: IsingChain, h):
    """Sum of exp(-E) over all 2^N configurations, H = (k_B tau / 2) log h.

    Bond weights are accumulated per magnetization during the enumeration, so
    an array of h costs one pass.
    """
    n = chain.N
    if n > BRUTEFORCE_MAX:
        raise SizeError(f"N = {n} exceeds {BRUTEFORCE_MAX} for enumeration")
    h = np.asarray(h, dtype=complex)
    if np.any(h == 0):
        raise DomainError("h must be nonzero")
    K = chain.K
    bits = np.arange(n)
    by_down = np.zeros(n + 1)  # indexed by the number of down spins
    for start in range(0, 1 << n, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, 1 << n))
        down = (idx[:, None] >> bits) & 1
        s = 1 - 2 * down
        bond = (s * np.roll(s, -1, axis=1)) @ K
        by_down += np.bincount(down.sum(axis=1), weights=np.exp(bond), minlength=n + 1)
    half_log_h = 0.5 * np.log(h)  # principal branch
    mags = n - 2 * np.arange(n + 1)
    total = np.exp(np.multiply.outer(half_log_h, mags)) @ by_down
    return complex(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class PartitionPoly:
    """P(h) = exp(log_scale) * sum_k scaled[k] h^k."""

    scaled: np.ndarray
    log_scale: float

    @property
    def degree(self) -> int:
        return self.scaled.size - 1

    @property
    def coefficients(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return self.scaled * math.exp(self.log_scale) if self.log_scale < 700 \
                else self.scaled * np.exp(self.log_scale)

    def __call__(self, h):
        return np.exp(self.log_scale) * np.polynomial.polynomial.polyval(h, self.scaled)


def partition_polynomial(chain: IsingChain) -> PartitionPoly:
    """Coefficients of h^{N/2} Z(h) from the spin transfer recursion, O(N^2)."""
    alphas = np.exp(-2.0 * chain.K)
    n = chain.N
    # polynomial entries of prod [[h, a h], [a, 1]], rescaled each step
    m = np.zeros((2, 2, n + 1))
    m[0, 0, 0] = m[1, 1, 0] = 1.0
    log_scale = float(chain.K.sum())
    for a in alphas:
        left = m[:, 0]
        right = m[:, 1]
        new0 = np.roll(left, 1, axis=-1) + a * right
        new1 = a * np.roll(left, 1, axis=-1) + right
        m = np.stack([new0, new1], axis=1)
        top = np.abs(m).max()
        m /= top
        log_scale += math.log(top)
    scaled = m[0, 0] + m[1, 1]
    top = np.abs(scaled).max()
    return PartitionPoly(scaled=scaled / top, log_scale=log_scale + math.log(top))


def couplings_to_verblunsky(chain: IsingChain) -> VerblunskyWord:
    """alpha_j = exp(-2 J_j / (k_B tau)) = 1 / beta_j."""
    return VerblunskyWord(np.exp(-2.0 * chain.K))


def leeyang_zeros(chain: IsingChain, method: str = "auto") -> ZeroSet:
    """Zeros of the partition function in h (all on the unit circle).

    ``companion`` uses the coefficients of P; ``phase`` counts zeros of the
    discriminant of the mapped word.  ``auto`` tries the companion route up to
    N = 64 and falls back to the phase route when it is ill-conditioned.
    """
    if method not in ("auto", "companion", "phase"):
        raise DomainError(f"unknown method {method!r}")
    if method == "companion" or (method == "auto" and chain.N <= COMPANION_MAX):
        try:
            return companion_zeros(partition_polynomial(chain).scaled, unit_tol=1e-8)
        except NumericalFailureError:
            if method == "companion":
                raise
    return ZeroSet(phase_zeros(couplings_to_verblunsky(chain).alphas))


def zero_free_arc(chain_or_sup_J, tau: float | None = None, k_B: float = 1.0) -> ArcSet:
    """R_alpha with alpha = exp(-2 sup J / (k_B tau)); no zero lies inside."""
    if isinstance(chain_or_sup_J, IsingChain):
        chain = chain_or_sup_J
        sup_J, tau, k_B = max(chain.couplings), chain.tau, chain.k_B
    else:
        sup_J = float(chain_or_sup_J)
        if tau is None:
            raise DomainError("tau is required with a coupling bound")
    if not (sup_J > 0 and tau > 0 and k_B > 0):
        raise DomainError("sup J, tau and k_B must be positive")
    return gap_arc(math.exp(-2.0 * sup_J / (k_B * tau)))


def coupling_sup(measure: SingleSiteMeasure) -> float:
    if measure.kind == "uniform":
        return measure.interval[1]
    vals = np.array(measure.atoms)
    if np.any(vals.imag != 0) or np.any(vals.real <= 0):
        raise DomainError("couplings must be real and positive")
    return float(vals.real.max())


def thermodynamic_scan(measure: SingleSiteMeasure, tau: float, schedule, seed: int = 0,
                       k_B: float = 1.0) -> list:
    """Lee-Yang zeros on growing windows of i.i.d. couplings.

    Each record holds the zero set and dist_H to the circle minus R_alpha,
    alpha = exp(-2 sup supp J / (k_B tau)).
    """
    if measure.min_support is None or measure.min_support <= 0:
        raise DomainError("coupling measure must be supported in (0, inf)")
    schedule = [(int(l), int(r)) for l, r in schedule]
    sizes = [l + r for l, r in schedule]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DomainError("schedule must be increasing")
    reference = zero_free_arc(coupling_sup(measure), tau, k_B).complement()
    out = []
    for k, (l, r) in enumerate(schedule):
        J = sample_window(measure, l, r, seed).values.real
        chain = IsingChain(tuple(J), tau, k_B)
        zs = leeyang_zeros(chain)
        out.append({
            "k": k,
            "l": l,
            "r": r,
            "N": chain.N,
            "zeros": zs,
            "distance": hausdorff_distance(zs, reference),
            "zero_count": len(zs),
        })
    return out


def read_couplings(path) -> list:
    """One positive decimal J per line; blank lines and # comments ignored."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                J = float(line)
            except ValueError:
                raise DomainError(f"{path}:{lineno}: not a number: {line!r}") from None
            if not J > 0:
                raise DomainError(f"{path}:{lineno}: coupling must be positive")
            out.append(J)
    if not out:
        raise DomainError(f"{path}: no couplings")
    return out
