"""Acceptance suite: one test per criterion, summarized at the end of the run."""

import cmath
import math
import time

import numpy as np
import pytest

from szegocmv.arcs import ArcSet, hausdorff_distance
from szegocmv.cmv import (
    band_structure,
    constant_spectrum,
    discriminant_zeros,
    normalized_discriminant,
    spectrum_membership,
)
from szegocmv.cocycle import cone_orbit, cone_step_check, growth_trace, lyapunov_estimate
from szegocmv.dos import dos_from_zeros, fit_R, gap_labels, thouless_lyapunov
from szegocmv.ensemble import (
    SingleSiteMeasure,
    almost_sure_spectrum_nonneg,
    convergence_experiment,
    window_zero_set,
)
from szegocmv.ising import (
    IsingChain,
    couplings_to_verblunsky,
    leeyang_zeros,
    partition_polynomial,
    zero_free_arc,
)

PI = math.pi


def windows(lengths):
    return [(n // 2, n - n // 2 - 1) for n in lengths]


@pytest.mark.criterion(1, "four short words: membership with margin")
def test_criterion_01_short_word_membership():
    t0 = time.perf_counter()
    a, b = 0.6, 0.9j
    theta = 1.1
    cases = [((a,), False), ((b,), False), ((a, b), False), ((a, a, a, b), True)]
    for word, inside in cases:
        D = normalized_discriminant(word, theta).value
        assert abs(abs(D) - 2.0) >= 1e-3, (word, D)
        assert spectrum_membership(word, cmath.exp(1j * theta)) is inside, (word, D)
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(2, "one-step cone invariance fuzz")
def test_criterion_02_cone_step_fuzz():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20)
    n = 100_000
    A = rng.uniform(0.05, 0.95, n)
    # admissible w: |arg w| < arcsin A, so that Re w > rho_A and |Im w| < A
    w = np.exp(1j * rng.uniform(-1, 1, n) * np.arcsin(A))
    alpha = A + (1 - A) * rng.random(n)
    alpha = np.minimum(alpha, np.nextafter(1.0, 0.0))
    C = np.sqrt((1 + A) / (1 - A))
    y = rng.uniform(1e-3, 1e3, n)
    x = rng.uniform(-1, 1, n) * y / C
    ok = cone_step_check(A, w, alpha, x, y)
    assert ok.size == n and int(np.count_nonzero(~ok)) == 0
    assert time.perf_counter() - t0 < 10.0


@pytest.mark.criterion(3, "uniform growth of cone orbits and norms")
def test_criterion_03_uniform_growth():
    t0 = time.perf_counter()
    rng = np.random.default_rng(30)
    A = 0.3
    edge = 2 * math.asin(A)
    thetas = np.linspace(-edge, edge, 52)[1:-1]
    n = np.arange(1, 201)
    for _ in range(100):
        word = rng.uniform(0.3, 0.9, 200)
        for t in thetas:
            z = cmath.exp(1j * t)
            orbit = cone_orbit(word, z, A=A)
            assert orbit.ok, (t, word.min())
            log_kappa = math.log(orbit.constants.kappa)
            norms = growth_trace(word, z).log_norms
            assert np.all(norms >= n * log_kappa - 0.5 * math.log(2)), t
    assert time.perf_counter() - t0 < 30.0


@pytest.mark.criterion(4, "constant words: band spectrum is the circle minus the gap")
def test_criterion_04_constant_spectrum():
    for a in (0.2, 0.5, 0.8):
        expected = constant_spectrum(a)
        for p in (1, 2, 3, 4):
            bs = band_structure([a] * p)
            assert bs.spectrum.isclose(expected, tol=1e-6), (a, p, bs.spectrum.arcs)


@pytest.mark.criterion(5, "Lee-Yang zeros equal discriminant zeros")
def test_criterion_05_leeyang_equivalence():
    rng = np.random.default_rng(50)
    for _ in range(50):
        N = int(rng.integers(1, 13))
        chain = IsingChain(tuple(rng.uniform(0.05, 1.5, N)), rng.uniform(0.5, 2.0))
        roots = np.roots(partition_polynomial(chain).scaled[::-1])
        assert np.max(np.abs(np.abs(roots) - 1)) <= 1e-8
        zl = leeyang_zeros(chain, method="companion")
        zd = discriminant_zeros(couplings_to_verblunsky(chain))
        assert len(zl) == len(zd) == N
        assert hausdorff_distance(zl, zd) <= 1e-7


@pytest.mark.criterion(6, "Lee-Yang zeros avoid the zero-free arc")
def test_criterion_06_zero_free_arc():
    rng = np.random.default_rng(60)
    for _ in range(100):
        N = int(rng.integers(1, 2001))
        tau = rng.uniform(0.5, 2.0)
        chain = IsingChain(tuple(rng.uniform(0.1, 1.0, N)), tau)
        alpha_inf = math.exp(-2 * max(chain.couplings) / tau)
        z = leeyang_zeros(chain, method="phase" if N > 64 else "auto")
        assert len(z) == N
        assert np.min(np.abs(z.angles)) >= 2 * math.asin(alpha_inf) - 1e-9, N
        assert not np.any(zero_free_arc(chain).contains(z.angles))


@pytest.mark.criterion(7, "two-site chain closed form")
def test_criterion_07_two_site_closed_form():
    J = 0.5 * math.log(2)
    z = leeyang_zeros(IsingChain((J, J), 1.0))
    target = math.acos(-0.25)
    np.testing.assert_allclose(np.sort(z.angles), [-target, target], rtol=0, atol=1e-10)


@pytest.mark.criterion(8, "periodic windows cutting a period converge to the bands")
def test_criterion_08_periodic_convergence():
    word = [0.3, 0.4, 0.5]
    lengths = (100, 1000, 4000)
    recs = convergence_experiment(word, windows(lengths))
    failures = []
    for n, rec in zip(lengths, recs):
        assert rec["zero_count"] == n
        if rec["distance"] > 2 * PI / n + 1e-3:
            failures.append((n, rec["distance"], 2 * PI / n + 1e-3))
    assert not failures, f"(window, dist_H, bound): {failures}"


@pytest.mark.criterion(9, "random windows converge to the almost sure spectrum")
def test_criterion_09_random_convergence():
    t0 = time.perf_counter()
    m = SingleSiteMeasure.uniform(0.3, 0.6)
    limit = almost_sure_spectrum_nonneg(m)
    assert limit.isclose(ArcSet([(2 * math.asin(0.3), 2 * PI - 2 * math.asin(0.3))], closed=True))
    finals = []
    for seed in (0, 1, 2):
        dist = [r["distance"] for r in convergence_experiment(m, windows((250, 1000, 4000)), seed)]
        assert all(b <= a + 0.02 for a, b in zip(dist, dist[1:])), (seed, dist)
        finals.append(dist[-1])
    assert time.perf_counter() - t0 < 120.0
    assert max(finals) <= 0.1, f"final distances {finals}"


@pytest.mark.criterion(10, "Lyapunov exponent of constant words")
def test_criterion_10_lyapunov_closed_form():
    for a in (0.5, 0.6):
        est = lyapunov_estimate(SingleSiteMeasure.from_atoms([a]), 1, 20_000)
        assert est.value == pytest.approx(0.5 * math.log((1 + a) / (1 - a)), abs=1e-3)


@pytest.mark.criterion(11, "Thouless formula with fitted constant")
def test_criterion_11_thouless():
    m = SingleSiteMeasure.from_atoms([0.5])
    zs = window_zero_set(np.full(5000, 0.5))
    assert len(zs) == 5000
    dos = dos_from_zeros([zs])
    R = fit_R(dos, 1, lyapunov_estimate(m, 1, 20_000))
    for t in (-0.8, -0.4, 0.1, 0.5, 0.9):
        z = cmath.exp(1j * t)
        direct = lyapunov_estimate(m, z, 20_000).value
        assert abs(thouless_lyapunov(dos, R, z) - direct) <= 1e-2, t


@pytest.mark.criterion(12, "gap labels of periodic words")
def test_criterion_12_gap_labels():
    rng = np.random.default_rng(120)
    for p in (2, 3, 4):
        grid = np.arange(1, p) / p
        for _ in range(4):
            word = rng.uniform(0.1, 0.9, p)
            bs = band_structure(word)
            dos = dos_from_zeros([window_zero_set(np.tile(word, 300))])
            labels = gap_labels(bs, dos).interior_labels()
            assert 0 < len(labels) <= p - 1
            for label in labels:
                assert np.min(np.abs(grid - label)) <= 1e-3, (word, labels)
