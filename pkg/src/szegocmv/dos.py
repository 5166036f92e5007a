"""Density of states from zero counting measures, Thouless formula, gap labels."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .arcs import ZeroSet
from .cmv import BandStructure, Gap
from .errors import DomainError, SingularityError

TWO_PI = 2.0 * math.pi
ATOM_TOL = 1e-12


class BaseRelocationWarning(UserWarning):
    """The base point 1 lies in a band; labels are counted from another gap."""


@dataclass(frozen=True)
class DensityOfStates:
    angles: np.ndarray
    weights: np.ndarray
    history: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.angles.shape != self.weights.shape or not self.angles.size:
            raise DomainError("atoms and weights must be nonempty and aligned")
        if np.any(self.weights <= 0) or abs(self.weights.sum() - 1.0) > 1e-12:
            raise DomainError("weights must be positive with total mass 1")

    @classmethod
    def point_mass(cls, theta: float) -> "DensityOfStates":
        return cls(np.array([float(theta)]), np.array([1.0]))

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def arc_mass(self, start: float, end: float) -> float:
        """Mass of the half-open counterclockwise arc [start, end)."""
        length = end - start
        if length >= TWO_PI:
            return self.total_mass
        d = np.mod(self.angles - start, TWO_PI)
        return float(self.weights[d < length].sum())

    def log_potential(self, z: complex) -> float:
        """Integral of log|z - w| dk(w)."""
        pts = np.exp(1j * self.angles)
        dist = np.abs(complex(z) - pts)
        if dist.min() < ATOM_TOL:
            raise SingularityError(f"z = {z!r} coincides with an atom")
        return float(np.dot(self.weights, np.log(dist)))


def _counting_measure(zs: ZeroSet) -> DensityOfStates:
    n = len(zs)
    return DensityOfStates(np.array(zs.angles, dtype=float), zs.multiplicities / n)


def dos_from_zeros(zero_sets) -> DensityOfStates:
    """Counting measure of the largest window (weight 1/n per zero).

    The smaller windows are kept in ``history`` for convergence checks.
    """
    zero_sets = list(zero_sets)
    if not zero_sets:
        raise DomainError("need at least one zero set")
    if any(len(z) == 0 for z in zero_sets):
        raise DomainError("empty zero set")
    zero_sets.sort(key=len)
    measures = [_counting_measure(z) for z in zero_sets]
    last = measures[-1]
    return DensityOfStates(last.angles, last.weights, history=tuple(measures[:-1]))


def thouless_lyapunov(dos: DensityOfStates, R: float, z: complex) -> float:
    """L(z) = R + integral of log|z - w| dk(w)."""
    return float(R) + dos.log_potential(z)


def fit_R(dos: DensityOfStates, z_ref: complex, direct) -> float:
    """Constant R matching a direct Lyapunov value at ``z_ref``."""
    value = getattr(direct, "value", direct)
    return float(value) - dos.log_potential(z_ref)


@dataclass(frozen=True)
class GapLabelReport:
    gaps: list  # (Gap, label) pairs, counterclockwise from the base gap
    base_gap: Gap | None
    R: float | None = None
    relocated: bool = False

    @property
    def labels(self) -> list:
        return [label for _, label in self.gaps]

    def interior_labels(self) -> list:
        return [label for g, label in self.gaps if g is not self.base_gap]

    def to_dict(self) -> dict:
        return {
            "gaps": [
                {"start": g.start, "end": g.end, "label": label} for g, label in self.gaps
            ],
            "R": self.R,
        }


def _contains_open(g: Gap, theta: float) -> bool:
    d = (theta - g.start) % TWO_PI
    return 0.0 < d < g.length


def gap_labels(bands: BandStructure, dos: DensityOfStates, R: float | None = None) -> GapLabelReport:
    """Label each open gap by the dos mass between the base point and the gap.

    The base point is 1 (theta = 0).  If it lies in a band, the widest gap
    is used instead and a BaseRelocationWarning is issued.
    """
    if not bands.bands:
        raise DomainError("band structure has no bands")
    gaps = [g for g in bands.gaps if not g.closed]
    if not gaps:
        return GapLabelReport([], None, R)
    relocated = False
    base = next((g for g in gaps if _contains_open(g, 0.0)), None)
    if base is None:
        base = max(gaps, key=lambda g: g.length)
        relocated = True
        warnings.warn(
            f"theta = 0 lies in a band; base moved to gap ({base.start:.6f}, {base.end:.6f})",
            BaseRelocationWarning,
            stacklevel=2,
        )
    base_point = 0.0 if not relocated else base.start + 0.5 * base.length
    labelled = []
    for g in gaps:
        if g is base:
            labelled.append((g, 0.0))
            continue
        labelled.append((g, dos.arc_mass(base_point, base_point + (g.start - base_point) % TWO_PI)))
    labelled.sort(key=lambda item: item[1])
    return GapLabelReport(labelled, base, R, relocated)


def nearest_module_element(label: float, frequency: float, max_order: int = 50) -> tuple:
    """Closest m + n * frequency (mod 1) to ``label`` with |m|, |n| <= max_order.

    Returns (distance, n).  The integer part m is absorbed by reduction mod 1.
    """
    n = np.arange(-max_order, max_order + 1)
    vals = np.mod(n * frequency, 1.0)
    d = np.abs(vals - label)
    d = np.minimum(d, 1.0 - d)
    i = int(np.argmin(d))
    return float(d[i]), int(n[i])
