"""Compiled inner loops.

In cone coordinates the normalized one-step matrix w^-1 U A(alpha, w^2) U^-1
factors as H(alpha) R(theta/2), where R is a rotation and
H(alpha) = rho^-1 [[1 - Re a, Im a], [Im a, 1 + Re a]] is real, symmetric,
positive definite with det 1.  Both factors are orientation preserving and
monotone in theta, which is what the phase counter relies on.
"""

import math

import numba
import numpy as np

RENORM_EVERY = 32


def cone_entries(alphas):
    """(h11, h12, h22) for each coefficient."""
    a = np.asarray(alphas, dtype=complex)
    rho = np.sqrt(1.0 - np.abs(a) ** 2)
    return (
        np.ascontiguousarray((1.0 - a.real) / rho),
        np.ascontiguousarray(a.imag / rho),
        np.ascontiguousarray((1.0 + a.real) / rho),
    )


@numba.njit(cache=True)
def phase_lift(h11, h12, h22, thetas, reps):
    """Lifted angle swept by (0, 1) under ``reps`` passes of the word.

    Winding is counted from crossings of the negative real axis; each factor
    moves a direction by less than pi, so crossings are unambiguous.
    """
    p = h11.shape[0]
    out = np.empty(thetas.shape[0])
    for t in range(thetas.shape[0]):
        half = 0.5 * thetas[t]
        c = math.cos(half)
        s = math.sin(half)
        vx = 0.0
        vy = 1.0
        k = 0
        for _ in range(reps):
            for j in range(p):
                rx = c * vx - s * vy
                ry = s * vx + c * vy
                if vy >= 0.0 and ry < 0.0 and vx * ry - vy * rx > 0.0:
                    k += 1
                elif vy < 0.0 and ry >= 0.0 and vx * ry - vy * rx < 0.0:
                    k -= 1
                nx = h11[j] * rx + h12[j] * ry
                ny = h12[j] * rx + h22[j] * ry
                if ry >= 0.0 and ny < 0.0 and rx * ny - ry * nx > 0.0:
                    k += 1
                elif ry < 0.0 and ny >= 0.0 and rx * ny - ry * nx < 0.0:
                    k -= 1
                m = abs(nx) + abs(ny)
                if m > 1e100 or m < 1e-100:
                    nx /= m
                    ny /= m
                vx = nx
                vy = ny
        out[t] = math.atan2(vy, vx) - 0.5 * math.pi + 2.0 * math.pi * k
    return out


@numba.njit(cache=True)
def cone_trace(h11, h12, h22, thetas):
    """Trace of the cone-coordinate monodromy as (mantissa, log scale).

    The trace equals e^{-i p theta/2} Tr prod A(alpha_j, e^{i theta}) with the
    branch continuous in theta.
    """
    p = h11.shape[0]
    mant = np.empty(thetas.shape[0])
    logs = np.zeros(thetas.shape[0])
    for t in range(thetas.shape[0]):
        half = 0.5 * thetas[t]
        c = math.cos(half)
        s = math.sin(half)
        m11 = 1.0
        m12 = 0.0
        m21 = 0.0
        m22 = 1.0
        scale = 0.0
        for j in range(p):
            # B = H R
            b11 = h11[j] * c + h12[j] * s
            b12 = -h11[j] * s + h12[j] * c
            b21 = h12[j] * c + h22[j] * s
            b22 = -h12[j] * s + h22[j] * c
            n11 = b11 * m11 + b12 * m21
            n12 = b11 * m12 + b12 * m22
            n21 = b21 * m11 + b22 * m21
            n22 = b21 * m12 + b22 * m22
            m11 = n11
            m12 = n12
            m21 = n21
            m22 = n22
            if (j + 1) % 32 == 0:
                r = abs(m11) + abs(m12) + abs(m21) + abs(m22)
                m11 /= r
                m12 /= r
                m21 /= r
                m22 /= r
                scale += math.log(r)
        mant[t] = m11 + m22
        logs[t] = scale
    return mant, logs


@numba.njit(cache=True)
def _sigma_max(a, b, c, d):
    p = abs(a) ** 2 + abs(c) ** 2
    q = abs(b) ** 2 + abs(d) ** 2
    r = abs(a.conjugate() * b + c.conjugate() * d)
    return math.sqrt(0.5 * (p + q) + 0.5 * math.hypot(p - q, 2.0 * r))


@numba.njit(cache=True)
def log_norm_trace(alphas, z, every):
    """log ||A(alpha_n, z) ... A(alpha_1, z)|| for every n, renormalizing."""
    n = alphas.shape[0]
    out = np.empty(n)
    m11 = 1.0 + 0.0j
    m12 = 0.0j
    m21 = 0.0j
    m22 = 1.0 + 0.0j
    scale = 0.0
    for j in range(n):
        a = alphas[j]
        rho = math.sqrt(1.0 - (a.real * a.real + a.imag * a.imag))
        ac = a.conjugate()
        n11 = (z * m11 - ac * m21) / rho
        n12 = (z * m12 - ac * m22) / rho
        n21 = (-a * z * m11 + m21) / rho
        n22 = (-a * z * m12 + m22) / rho
        m11 = n11
        m12 = n12
        m21 = n21
        m22 = n22
        nrm = _sigma_max(m11, m12, m21, m22)
        out[j] = scale + math.log(nrm)
        if (j + 1) % every == 0:
            m11 /= nrm
            m12 /= nrm
            m21 /= nrm
            m22 /= nrm
            scale += math.log(nrm)
    return out
