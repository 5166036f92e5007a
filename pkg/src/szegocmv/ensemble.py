"""Single-site measures, index-addressed sampling and window approximants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .arcs import ArcSet, ZeroSet, hausdorff_distance
from .cmv import band_structure, discriminant_zeros
from .core import VerblunskyWord, as_word, gap_arc
from .errors import DomainError, SizeError, UnsupportedMeasureError

# counter offset so that negative indices keep a carry-free Philox counter
_COUNTER_BASE = 1 << 62
_U53 = 2.0 ** -53
MAX_ENUMERATION = 10 ** 6


@dataclass(frozen=True)
class SingleSiteMeasure:
    """Either finitely many atoms with weights, or uniform on [a, b)."""

    kind: str
    atoms: tuple = ()
    weights: tuple = ()
    interval: tuple | None = None

    def __post_init__(self):
        if self.kind == "atoms":
            vals = np.array(self.atoms, dtype=complex)
            w = np.array(self.weights, dtype=float)
            if vals.size == 0 or vals.size != w.size:
                raise DomainError("atoms and weights must be nonempty and aligned")
            if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
                raise DomainError("weights must be positive and sum to 1")
            if np.any(np.abs(vals) >= 1.0):
                raise DomainError("atoms must lie in the open unit disk")
        elif self.kind == "uniform":
            a, b = self.interval
            if not 0.0 <= a < b < 1.0:
                raise DomainError(f"uniform interval [{a}, {b}) not inside [0, 1)")
        else:
            raise DomainError(f"unknown measure kind {self.kind!r}")

    @classmethod
    def from_atoms(cls, values, weights=None) -> "SingleSiteMeasure":
        values = tuple(complex(v) for v in values)
        if weights is None:
            weights = [1.0 / len(values)] * len(values)
        return cls("atoms", atoms=values, weights=tuple(float(x) for x in weights))

    @classmethod
    def uniform(cls, a: float, b: float) -> "SingleSiteMeasure":
        return cls("uniform", interval=(float(a), float(b)))

    @classmethod
    def parse(cls, text: str) -> "SingleSiteMeasure":
        """``uniform:a,b`` or ``atoms:v1,v2,...`` with optional ``v@weight``."""
        kind, _, body = text.partition(":")
        items = [t.strip() for t in body.split(",") if t.strip()]
        try:
            if kind == "uniform" and len(items) == 2:
                return cls.uniform(float(items[0]), float(items[1]))
            if kind == "atoms" and items:
                vals, ws = [], []
                for it in items:
                    v, _, w = it.partition("@")
                    vals.append(complex(v.replace("i", "j")))
                    ws.append(float(w) if w else None)
                if all(w is None for w in ws):
                    return cls.from_atoms(vals)
                return cls.from_atoms(vals, ws)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"cannot parse measure {text!r}: {exc}") from None
        raise DomainError(f"cannot parse measure {text!r}")

    @property
    def real_nonnegative(self) -> bool:
        if self.kind == "uniform":
            return True
        vals = np.array(self.atoms)
        return bool(np.all(vals.imag == 0) and np.all(vals.real >= 0))

    @property
    def min_support(self) -> float | None:
        """Smallest point of the support when it is real and nonnegative."""
        if not self.real_nonnegative:
            return None
        if self.kind == "uniform":
            return self.interval[0]
        return float(np.min(np.real(self.atoms)))

    def from_uniforms(self, u: np.ndarray) -> np.ndarray:
        """Map uniforms in [0, 1) to draws."""
        if self.kind == "uniform":
            a, b = self.interval
            return (a + (b - a) * u).astype(complex)
        cum = np.cumsum(self.weights)
        idx = np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)
        return np.array(self.atoms, dtype=complex)[idx]

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.from_uniforms(rng.random(n))

    def to_dict(self) -> dict:
        if self.kind == "uniform":
            return {"kind": "uniform", "interval": list(self.interval)}
        return {
            "kind": "atoms",
            "atoms": [[v.real, v.imag] for v in self.atoms],
            "weights": list(self.weights),
        }


def _index_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniform u_n for n = start .. start+count-1, each depending only on (seed, n)."""
    if count <= 0:
        return np.empty(0)
    bg = np.random.Philox(key=int(seed) % (1 << 128),
                          counter=[_COUNTER_BASE + start, 0, 0, 0])
    # each counter value yields one block of four words; keep the first
    raw = bg.random_raw(4 * count).reshape(count, 4)[:, 0]
    return (raw >> np.uint64(11)).astype(float) * _U53


@dataclass(frozen=True)
class SampledSequence:
    seed: int
    l: int
    r: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, n: int) -> complex:
        if not -self.l <= n <= self.r:
            raise IndexError(n)
        return complex(self.values[n + self.l])

    @property
    def word(self) -> VerblunskyWord:
        return VerblunskyWord(self.values)

    def __len__(self):
        return self.values.size


def sample_window(measure: SingleSiteMeasure, l: int, r: int, seed: int) -> SampledSequence:
    """Draws omega_{-l}, ..., omega_r.  Value n depends only on (seed, n)."""
    if l < 0 or r < 0:
        raise DomainError("window bounds must be nonnegative")
    u = _index_uniforms(seed, -l, l + r + 1)
    vals = measure.from_uniforms(u)
    vals.setflags(write=False)
    return SampledSequence(seed=int(seed), l=int(l), r=int(r), values=vals)


def almost_sure_spectrum_nonneg(measure: SingleSiteMeasure) -> ArcSet:
    """Circle minus the open arc R_{min supp}."""
    if not measure.real_nonnegative:
        raise UnsupportedMeasureError("support is not real and nonnegative")
    return gap_arc(measure.min_support).complement()


def window_zero_set(sequence) -> ZeroSet:
    word = sequence.word if isinstance(sequence, SampledSequence) else as_word(sequence)
    if len(word) < 1:
        raise DomainError("window must be nonempty")
    return discriminant_zeros(word)


def _necklaces(k: int, p: int):
    """Words over range(k) of length p, one per cyclic rotation class."""
    for w in itertools.product(range(k), repeat=p):
        if all(w <= w[i:] + w[:i] for i in range(1, p)):
            yield w


def periodic_union_spectrum(measure: SingleSiteMeasure, max_period: int) -> ArcSet:
    """Union of periodic spectra over words of length <= max_period.

    This is an inner approximation of the closure of the union over all
    periods; it grows monotonically with ``max_period``.
    """
    if measure.kind != "atoms":
        raise DomainError("periodic union needs an atomic measure")
    if max_period < 1:
        raise DomainError("max_period must be >= 1")
    atoms = np.array(measure.atoms, dtype=complex)
    k = atoms.size
    if float(k) ** max_period > MAX_ENUMERATION:
        raise SizeError(f"{k}^{max_period} words exceed {MAX_ENUMERATION}")
    arcs = []
    for p in range(1, max_period + 1):
        for w in _necklaces(k, p):
            arcs.extend(band_structure(atoms[list(w)]).spectrum.arcs)
    return ArcSet(arcs, closed=True)


def convergence_experiment(source, schedule, seed: int = 0) -> list:
    """dist_H between window zeros and the limiting spectrum, per window.

    ``source`` is a SingleSiteMeasure with real nonnegative support (compared
    with the almost sure spectrum) or a periodic word (compared with its band
    spectrum; the window is read off the two-sided periodic sequence).
    """
    schedule = [(int(l), int(r)) for l, r in schedule]
    sizes = [l + r for l, r in schedule]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DomainError("schedule must be increasing")
    if isinstance(source, SingleSiteMeasure):
        reference = almost_sure_spectrum_nonneg(source)
        windows = (sample_window(source, l, r, seed).values for l, r in schedule)
    else:
        period = as_word(source).alphas
        reference = band_structure(period).spectrum
        p = period.size
        windows = (period[np.arange(-l, r + 1) % p] for l, r in schedule)
    out = []
    for k, ((l, r), values) in enumerate(zip(schedule, windows)):
        zs = window_zero_set(values)
        out.append({
            "k": k,
            "l": l,
            "r": r,
            "distance": hausdorff_distance(zs, reference),
            "zero_count": len(zs),
        })
    return out
