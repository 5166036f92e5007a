"""Szegő transfer matrices, cone coordinates and the gap arc R_alpha."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .arcs import ArcSet
from .errors import (
    AdmissibilityError,
    DomainError,
    InvalidCoefficientError,
    OutOfGapError,
)

TWO_PI = 2.0 * math.pi
UNIT_TOL = 1e-12


def canonical_angle(theta):
    """Representative of ``theta`` in [-pi, pi).  Works on scalars and arrays."""
    th = np.asarray(theta, dtype=float)
    out = np.mod(th + math.pi, TWO_PI) - math.pi
    # mod can round up to exactly pi
    out = np.where(out >= math.pi, out - TWO_PI, out)
    # leave values already in range bit-exact
    out = np.where((th >= -math.pi) & (th < math.pi), th, out)
    return float(out) if out.ndim == 0 else out


def angle_distance(t1, t2):
    """Geodesic distance on the circle, min(|t1 - t2|, 2pi - |t1 - t2|)."""
    d = np.mod(np.abs(np.asarray(t1, float) - np.asarray(t2, float)), TWO_PI)
    out = np.minimum(d, TWO_PI - d)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Angle:
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", canonical_angle(self.theta))

    def __float__(self):
        return self.theta

    def distance(self, other: "Angle | float") -> float:
        return angle_distance(self.theta, float(other))


@dataclass(frozen=True)
class CirclePoint:
    value: complex

    def __post_init__(self):
        value = complex(self.value)
        if abs(abs(value) - 1.0) > UNIT_TOL:
            raise DomainError(f"|z| = {abs(value)!r} is not 1")
        object.__setattr__(self, "value", value)

    @classmethod
    def from_angle(cls, theta: float) -> "CirclePoint":
        return cls(cmath.exp(1j * theta))

    @property
    def angle(self) -> Angle:
        return Angle(cmath.phase(self.value))

    def __complex__(self):
        return self.value


PointLike = Union[complex, float, CirclePoint]


def _as_complex(z: PointLike) -> complex:
    return z.value if isinstance(z, CirclePoint) else complex(z)


@dataclass(frozen=True)
class Verblunsky:
    alpha: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not abs(alpha) < 1.0:
            raise InvalidCoefficientError(f"|alpha| = {abs(alpha)!r} is not < 1")
        object.__setattr__(self, "alpha", alpha)

    @property
    def rho(self) -> float:
        return math.sqrt(1.0 - abs(self.alpha) ** 2)


class VerblunskyWord(Sequence):
    """Immutable finite sequence of coefficients in the open unit disk."""

    __slots__ = ("_alphas",)

    def __init__(self, coefficients: Iterable = ()):
        vals = []
        for c in coefficients:
            vals.append(c.alpha if isinstance(c, Verblunsky) else complex(c))
        arr = np.array(vals, dtype=complex)
        if arr.size and not np.all(np.abs(arr) < 1.0):
            bad = arr[np.abs(arr) >= 1.0][0]
            raise InvalidCoefficientError(f"|alpha| = {abs(bad)!r} is not < 1")
        arr.setflags(write=False)
        self._alphas = arr

    @classmethod
    def parse(cls, text: str) -> "VerblunskyWord":
        """Comma separated literals such as ``"0.6,0.9i,0.3-0.1i"``."""
        items = [t.strip() for t in text.split(",") if t.strip()]
        try:
            return cls(complex(t.replace("i", "j").replace(" ", "")) for t in items)
        except ValueError as exc:
            raise DomainError(f"cannot parse word {text!r}: {exc}") from None

    @property
    def alphas(self) -> np.ndarray:
        return self._alphas

    @property
    def coefficients(self) -> tuple:
        return tuple(Verblunsky(a) for a in self._alphas)

    @property
    def rhos(self) -> np.ndarray:
        return np.sqrt(1.0 - np.abs(self._alphas) ** 2)

    @property
    def real_positive(self) -> bool:
        a = self._alphas
        return bool(a.size) and bool(
            np.all(a.imag == 0) and np.all(a.real > 0) and np.all(a.real < 1)
        )

    def min_modulus(self) -> float:
        return float(np.min(np.abs(self._alphas)))

    def rotated(self, k: int) -> "VerblunskyWord":
        return VerblunskyWord(np.roll(self._alphas, -k))

    def repeated(self, m: int) -> "VerblunskyWord":
        return VerblunskyWord(np.tile(self._alphas, m))

    def __len__(self):
        return self._alphas.size

    def __getitem__(self, i):
        if isinstance(i, slice):
            return VerblunskyWord(self._alphas[i])
        return self._alphas[i]

    def __iter__(self) -> Iterator[complex]:
        return iter(self._alphas.tolist())

    def __eq__(self, other):
        return isinstance(other, VerblunskyWord) and np.array_equal(
            self._alphas, other._alphas
        )

    def __hash__(self):
        return hash(self._alphas.tobytes())

    def __repr__(self):
        return f"VerblunskyWord({self._alphas.tolist()!r})"


def as_word(word) -> VerblunskyWord:
    return word if isinstance(word, VerblunskyWord) else VerblunskyWord(word)


@dataclass(frozen=True)
class Mat2C:
    """2x2 complex matrix [[a, b], [c, d]]."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> "Mat2C":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_array(cls, m) -> "Mat2C":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, o: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __mul__(self, s) -> "Mat2C":
        return Mat2C(self.a * s, self.b * s, self.c * s, self.d * s)

    __rmul__ = __mul__

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2C":
        det = self.det
        if det == 0:
            raise DomainError("singular matrix")
        return Mat2C(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def adjoint(self) -> "Mat2C":
        return Mat2C(
            self.a.conjugate(), self.c.conjugate(), self.b.conjugate(), self.d.conjugate()
        )

    def norm(self) -> float:
        """Operator 2-norm (largest singular value)."""
        # eigenvalues of M*M = [[p, r], [conj r, q]] without cancellation,
        # after scaling so that squares neither underflow nor overflow
        s = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if s == 0.0:
            return 0.0
        a, b, c, d = self.a / s, self.b / s, self.c / s, self.d / s
        p = abs(a) ** 2 + abs(c) ** 2
        q = abs(b) ** 2 + abs(d) ** 2
        r = a.conjugate() * b + c.conjugate() * d
        return s * math.sqrt(0.5 * (p + q) + 0.5 * math.hypot(p - q, 2.0 * abs(r)))

    def allclose(self, other: "Mat2C", tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.to_array(), other.to_array(), rtol=0, atol=tol))


def _check_coefficient(alpha) -> complex:
    if isinstance(alpha, Verblunsky):
        return alpha.alpha
    alpha = complex(alpha)
    if not abs(alpha) < 1.0:
        raise InvalidCoefficientError(f"|alpha| = {abs(alpha)!r} is not < 1")
    return alpha


def transfer_matrix(alpha, z: PointLike) -> Mat2C:
    """A(alpha, z) = rho^-1 [[z, -conj(alpha)], [-alpha z, 1]].

    ``z`` may lie inside the closed disk; U(1,1) membership only holds on the
    circle.
    """
    alpha = _check_coefficient(alpha)
    z = _as_complex(z)
    if abs(z) > 1.0 + UNIT_TOL:
        raise DomainError(f"|z| = {abs(z)!r} exceeds 1")
    rho = math.sqrt(1.0 - abs(alpha) ** 2)
    return Mat2C(z / rho, -alpha.conjugate() / rho, -alpha * z / rho, 1.0 / rho)


# columns of U^-1; U = (1/sqrt 2) [[1, 1], [-i, i]] is unitary
CONE_U = Mat2C(1 / math.sqrt(2), 1 / math.sqrt(2), -1j / math.sqrt(2), 1j / math.sqrt(2))


def _real_coefficient(alpha) -> float:
    alpha = complex(alpha.alpha if isinstance(alpha, Verblunsky) else alpha)
    if alpha.imag != 0 or not 0.0 < alpha.real < 1.0:
        raise InvalidCoefficientError(f"expected real alpha in (0, 1), got {alpha!r}")
    return alpha.real


def conjugated_matrix(alpha, w: complex) -> Mat2C:
    """B(alpha, w) = w^-1 U A(alpha, w^2) U^-1 for real alpha in (0, 1)."""
    alpha = _real_coefficient(alpha)
    w = complex(w)
    if abs(abs(w) - 1.0) > UNIT_TOL:
        raise DomainError(f"|w| = {abs(w)!r} is not 1")
    rho = math.sqrt(1.0 - alpha * alpha)
    lo, hi = (1.0 - alpha) / rho, (1.0 + alpha) / rho
    return Mat2C(lo * w.real, -lo * w.imag, hi * w.imag, hi * w.real)


def conjugated_matrix_by_definition(alpha, w: complex) -> Mat2C:
    """Same matrix computed literally as w^-1 U A(alpha, w^2) U^-1."""
    w = complex(w)
    return (CONE_U @ transfer_matrix(alpha, w * w) @ CONE_U.inverse()) * (1.0 / w)


def gap_half_width(alpha: float) -> float:
    """2 arcsin(alpha), the half opening of R_alpha."""
    return 2.0 * math.asin(alpha)


def in_gap(z: PointLike, A: float) -> bool:
    """Membership in the open arc R_A; points within UNIT_TOL of an end are outside."""
    theta = cmath.phase(_as_complex(z))
    return abs(theta) < gap_half_width(A) - UNIT_TOL


def principal_root(z: PointLike, A: float) -> complex:
    """Square root of ``z`` with arg in (-arcsin A, arcsin A)."""
    if not 0.0 < A < 1.0:
        raise DomainError(f"A = {A!r} not in (0, 1)")
    z = _as_complex(z)
    theta = canonical_angle(cmath.phase(z))
    if not in_gap(z, A):
        raise OutOfGapError(f"arg z = {theta!r} outside R_{A}")
    return cmath.exp(0.5j * theta)


@dataclass(frozen=True)
class ConeConstants:
    A: float
    w: complex
    C: float
    kappa: float


def is_admissible(A: float, w: complex) -> bool:
    w = complex(w)
    return w.real > math.sqrt(1.0 - A * A) and abs(w.imag) < A


def cone_constants(A: float, w: complex) -> ConeConstants:
    """Cone aperture C = sqrt((1+A)/(1-A)) and growth rate kappa = C Re w - |Im w|."""
    if not 0.0 < A < 1.0:
        raise DomainError(f"A = {A!r} not in (0, 1)")
    w = complex(w)
    if not is_admissible(A, w):
        raise AdmissibilityError(f"w = {w!r} is not admissible for A = {A!r}")
    C = math.sqrt((1.0 + A) / (1.0 - A))
    kappa = C * w.real - abs(w.imag)
    if not kappa > 1.0:
        raise AdmissibilityError(f"kappa = {kappa!r} <= 1")
    return ConeConstants(A=A, w=w, C=C, kappa=kappa)


def gap_arc(alpha_min: float) -> ArcSet:
    """The open arc R_alpha = {e^{i theta}: |theta| < 2 arcsin alpha}."""
    if not 0.0 <= alpha_min < 1.0:
        raise DomainError(f"alpha = {alpha_min!r} not in [0, 1)")
    if alpha_min == 0.0:
        return ArcSet.empty(closed=False)
    half = gap_half_width(alpha_min)
    return ArcSet([(-half, half)], closed=False)
