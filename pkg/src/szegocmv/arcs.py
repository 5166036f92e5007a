"""Arcs and finite point sets on the unit circle, with Hausdorff distances.

Angles are canonical in [-pi, pi).  An arc is stored as ``(start, end)`` with
``start`` canonical and ``end = start + length``; ``end`` may exceed pi when the
arc wraps through -1.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NumericalFailureError

TWO_PI = 2.0 * math.pi
# closed arcs closer than this are treated as touching
TOUCH_TOL = 1e-12


def _canon(theta):
    th = np.asarray(theta, dtype=float)
    out = np.mod(th + math.pi, TWO_PI) - math.pi
    out = np.where(out >= math.pi, out - TWO_PI, out)
    return np.where((th >= -math.pi) & (th < math.pi), th, out)


def _pieces(arcs):
    """Split (start, length) arcs into linear pieces inside [-pi, pi]."""
    out = []
    for s, length in arcs:
        e = s + length
        if e <= math.pi:
            out.append((s, e))
        else:
            out.append((s, math.pi))
            out.append((-math.pi, e - TWO_PI))
    return out


def _merge(arcs, strict: bool):
    if not arcs:
        return []
    if any(length >= TWO_PI for _, length in arcs):
        return [(-math.pi, TWO_PI)]
    pieces = sorted(_pieces(arcs))
    merged = [list(pieces[0])]
    for s, e in pieces[1:]:
        cur = merged[-1]
        touching = s < cur[1] if strict else s <= cur[1] + TOUCH_TOL
        if touching:
            cur[1] = max(cur[1], e)
        else:
            merged.append([s, e])
    if len(merged) == 1 and merged[0][0] <= -math.pi + TOUCH_TOL and merged[0][1] >= math.pi - TOUCH_TOL:
        return [(-math.pi, TWO_PI)]
    if len(merged) > 1 and merged[0][0] <= -math.pi + TOUCH_TOL and merged[-1][1] >= math.pi - TOUCH_TOL:
        first = merged.pop(0)
        merged[-1][1] = first[1] + TWO_PI
    return [(s, e - s) for s, e in merged]


class ArcSet:
    """Finite union of arcs.  ``closed=False`` marks a union of open arcs."""

    __slots__ = ("_arcs", "closed")

    def __init__(self, arcs: Iterable = (), closed: bool = True, merge: bool = True):
        raw = []
        for s, e in arcs:
            s, e = float(s), float(e)
            length = e - s
            if not 0.0 <= length <= TWO_PI:
                length = float(np.mod(length, TWO_PI))
            raw.append((float(_canon(s)), length))
        self.closed = bool(closed)
        self._arcs = tuple(_merge(raw, strict=not closed) if merge else raw)

    @classmethod
    def empty(cls, closed: bool = True) -> "ArcSet":
        return cls((), closed=closed)

    @classmethod
    def full(cls) -> "ArcSet":
        return cls([(-math.pi, math.pi)], closed=True)

    @property
    def arcs(self) -> list:
        return [(s, s + length) for s, length in self._arcs]

    @property
    def lengths(self) -> np.ndarray:
        return np.array([length for _, length in self._arcs])

    def is_empty(self) -> bool:
        return not self._arcs

    def is_full(self) -> bool:
        return len(self._arcs) == 1 and self._arcs[0][1] >= TWO_PI

    def measure(self) -> float:
        return float(min(sum(length for _, length in self._arcs), TWO_PI))

    def endpoints(self) -> np.ndarray:
        if self.is_full():
            return np.empty(0)
        pts = [p for s, length in self._arcs for p in (s, s + length)]
        return np.unique(_canon(pts))

    def contains(self, theta, tol: float = 0.0):
        """Membership of angle(s); ``tol`` widens closed and shrinks open arcs."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        inside = np.zeros(th.shape, dtype=bool)
        for s, length in self._arcs:
            if length >= TWO_PI:
                inside[:] = True
                break
            d = np.mod(th - s, TWO_PI)
            if self.closed:
                inside |= (d <= length + tol) | (d >= TWO_PI - tol)
            else:
                inside |= (d > tol) & (d < length - tol)
        return bool(inside[0]) if np.ndim(theta) == 0 else inside

    def __contains__(self, theta) -> bool:
        return self.contains(float(theta))

    def complement(self) -> "ArcSet":
        """Complement; closed sets map to open sets and vice versa."""
        if not self._arcs:
            return ArcSet.full()
        if self.is_full():
            return ArcSet.empty(closed=not self.closed)
        arcs = sorted(self._arcs)
        gaps = []
        for i, (s, length) in enumerate(arcs):
            nxt = arcs[(i + 1) % len(arcs)][0]
            end = s + length
            start_next = nxt if nxt >= end - 1e-15 else nxt + TWO_PI
            if len(arcs) == 1:
                start_next = s + TWO_PI
            if start_next - end > 0:
                gaps.append((end, start_next))
        return ArcSet(gaps, closed=not self.closed)

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.arcs + other.arcs, closed=self.closed and other.closed)

    def rotated(self, phi: float) -> "ArcSet":
        if self.is_full():
            return self
        return ArcSet([(s + phi, e + phi) for s, e in self.arcs], closed=self.closed)

    def dilated(self, eps: float) -> "ArcSet":
        if self.is_full():
            return self
        return ArcSet(
            [(s - eps, e + eps) if e - s + 2 * eps < TWO_PI else (-math.pi, math.pi)
             for s, e in self.arcs],
            closed=self.closed,
        )

    def isclose(self, other: "ArcSet", tol: float = 1e-9) -> bool:
        if self.is_full() or other.is_full():
            return self.is_full() and other.is_full()
        a, b = self.arcs, other.arcs
        if len(a) != len(b):
            return False
        for (s1, e1), (s2, e2) in zip(sorted(a), sorted(b)):
            if _circ(s1, s2) > tol or abs((e1 - s1) - (e2 - s2)) > 2 * tol:
                return False
        return True

    def to_list(self) -> list:
        return [[s, e] for s, e in self.arcs]

    def __repr__(self):
        kind = "closed" if self.closed else "open"
        body = ", ".join(f"({s:.6f}, {e:.6f})" for s, e in self.arcs)
        return f"ArcSet([{body}], {kind})"


def _circ(a, b):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


class ZeroSet:
    """Sorted multiset of angles in [-pi, pi)."""

    __slots__ = ("angles", "multiplicities")

    def __init__(self, angles: Sequence[float] = (), multiplicities: Sequence[int] | None = None):
        ang = _canon(np.asarray(angles, dtype=float).ravel())
        mult = (
            np.ones(ang.size, dtype=int)
            if multiplicities is None
            else np.asarray(multiplicities, dtype=int).ravel()
        )
        if mult.size != ang.size:
            raise DomainError("angles and multiplicities differ in length")
        if np.any(mult < 1):
            raise DomainError("multiplicities must be >= 1")
        order = np.argsort(ang, kind="stable")
        ang, mult = ang[order], mult[order]
        if ang.size:
            # fold exact repeats into multiplicities
            uniq, inv = np.unique(ang, return_inverse=True)
            mult = np.bincount(inv, weights=mult).astype(int)
            ang = uniq
        ang.setflags(write=False)
        mult.setflags(write=False)
        self.angles = ang
        self.multiplicities = mult

    @classmethod
    def from_roots(cls, roots, unit_tol: float = 1e-8) -> "ZeroSet":
        roots = np.asarray(roots, dtype=complex)
        dev = np.abs(np.abs(roots) - 1.0)
        if roots.size and dev.max() > unit_tol:
            raise NumericalFailureError(
                f"root off the unit circle by {dev.max():.3e} (tolerance {unit_tol:g})"
            )
        return cls(np.angle(roots))

    def __len__(self):
        return int(self.multiplicities.sum())

    def expanded(self) -> np.ndarray:
        return np.repeat(self.angles, self.multiplicities)

    def points(self) -> np.ndarray:
        return np.exp(1j * self.expanded())

    def min_abs_angle(self) -> float:
        return float(np.min(np.abs(self.angles)))

    def records(self) -> list:
        """Rows for the ``index,theta,re,im,multiplicity`` CSV layout."""
        return [
            {
                "index": i,
                "theta": float(t),
                "re": math.cos(t),
                "im": math.sin(t),
                "multiplicity": int(m),
            }
            for i, (t, m) in enumerate(zip(self.angles, self.multiplicities))
        ]

    def __repr__(self):
        return f"ZeroSet(n={len(self)})"


def _as_closed_pieces(X):
    """(start, length) pieces of a closed set; points have length 0."""
    if isinstance(X, ZeroSet):
        return [(float(t), 0.0) for t in X.angles]
    if isinstance(X, ArcSet):
        return list(X._arcs)
    pts = np.atleast_1d(np.asarray(X, dtype=float))
    return [(float(t), 0.0) for t in _canon(pts)]


def _distance_to(pieces, q: np.ndarray) -> np.ndarray:
    if any(length >= TWO_PI for _, length in pieces):
        return np.zeros(q.shape)
    s = np.array([p[0] for p in pieces])
    e = s + np.array([p[1] for p in pieces])
    S = np.concatenate([s - TWO_PI, s, s + TWO_PI])
    E = np.concatenate([e - TWO_PI, e, e + TWO_PI])
    order = np.argsort(S, kind="stable")
    S, E = S[order], np.maximum.accumulate(E[order])
    idx = np.searchsorted(S, q, side="right") - 1
    d_left = np.maximum(q - E[idx], 0.0)
    d_right = np.maximum(S[np.minimum(idx + 1, S.size - 1)] - q, 0.0)
    return np.minimum(d_left, d_right)


def _gap_midpoints(pieces) -> np.ndarray:
    if any(length >= TWO_PI for _, length in pieces):
        return np.empty(0)
    arcs = sorted(pieces)
    mids = []
    for i, (s, length) in enumerate(arcs):
        end = s + length
        nxt = arcs[(i + 1) % len(arcs)][0]
        if i == len(arcs) - 1:
            nxt += TWO_PI
        if nxt > end:
            mids.append(0.5 * (end + nxt))
    return _canon(np.array(mids))


def directed_hausdorff(X, Y) -> float:
    """sup over x in X of the geodesic distance from x to Y."""
    px, py = _as_closed_pieces(X), _as_closed_pieces(Y)
    if not px or not py:
        raise DomainError("Hausdorff distance needs nonempty sets")
    cand = [_canon(np.array([p for s, length in px for p in (s, s + length)]))]
    mids = _gap_midpoints(py)
    if mids.size:
        closed_x = X if isinstance(X, ArcSet) else None
        if closed_x is not None:
            inside = ArcSet(closed_x.arcs, closed=True).contains(mids)
            cand.append(mids[inside])
    q = np.concatenate(cand)
    return float(np.max(_distance_to(py, q)))


def hausdorff_distance(X, Y) -> float:
    """Hausdorff distance between closed subsets of the circle (geodesic metric).

    Accepts ZeroSet, ArcSet (open arcs are replaced by their closure) or an
    array of angles.
    """
    return max(directed_hausdorff(X, Y), directed_hausdorff(Y, X))
