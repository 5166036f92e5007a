import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szegocmv.arcs import ArcSet
from szegocmv.cmv import band_structure, constant_spectrum
from szegocmv.ensemble import (
    SingleSiteMeasure,
    almost_sure_spectrum_nonneg,
    convergence_experiment,
    periodic_union_spectrum,
    sample_window,
    window_zero_set,
)
from szegocmv.errors import DomainError, SizeError, UnsupportedMeasureError

PI = math.pi
ACOS_Q = 1.8234765819369752727


def test_measure_validation_and_parsing():
    with pytest.raises(DomainError):
        SingleSiteMeasure.from_atoms([0.2, 0.3], [0.5, 0.6])
    with pytest.raises(DomainError):
        SingleSiteMeasure.from_atoms([1.0])
    with pytest.raises(DomainError):
        SingleSiteMeasure.uniform(0.6, 0.3)
    m = SingleSiteMeasure.parse("atoms:0.6@0.25,0.9i@0.75")
    assert m.atoms == (0.6, 0.9j) and m.weights == (0.25, 0.75)
    assert not m.real_nonnegative and m.min_support is None
    assert SingleSiteMeasure.parse("uniform:0.3,0.6").min_support == 0.3
    with pytest.raises(DomainError):
        SingleSiteMeasure.parse("gauss:0,1")


def test_sample_window_examples():
    s = sample_window(SingleSiteMeasure.from_atoms([0.3]), 4, 6, seed=1)
    assert len(s) == 11 and np.all(s.values == 0.3)
    u = sample_window(SingleSiteMeasure.uniform(0.3, 0.6), 500, 500, seed=2).values.real
    assert np.all((u >= 0.3) & (u < 0.6))
    a = sample_window(SingleSiteMeasure.uniform(0.3, 0.6), 2, 2, seed=7)
    b = sample_window(SingleSiteMeasure.uniform(0.3, 0.6), 5, 5, seed=7)
    np.testing.assert_array_equal(a.values, b.values[3:8])
    assert a[-2] == b[-2] and a[2] == b[2]


@settings(max_examples=30)
@given(st.integers(0, 2 ** 64), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_index_addressing(seed, l, r, extra):
    m = SingleSiteMeasure.uniform(0.1, 0.9)
    a = sample_window(m, l, r, seed)
    b = sample_window(m, l + extra, r + extra, seed)
    for n in range(-l, r + 1):
        assert a[n] == b[n]


def test_atom_frequencies():
    m = SingleSiteMeasure.from_atoms([0.2, 0.7], [0.25, 0.75])
    v = sample_window(m, 0, 39_999, seed=3).values.real
    assert abs(np.mean(v == 0.2) - 0.25) < 0.01


def test_almost_sure_spectrum():
    s = almost_sure_spectrum_nonneg(SingleSiteMeasure.uniform(0.3, 0.6))
    assert s.arcs[0][0] == pytest.approx(0.609385308030795, abs=1e-12)
    s = almost_sure_spectrum_nonneg(SingleSiteMeasure.from_atoms([0.5]))
    assert s.isclose(constant_spectrum(0.5))
    assert almost_sure_spectrum_nonneg(SingleSiteMeasure.from_atoms([0.0, 0.4])).is_full()
    with pytest.raises(UnsupportedMeasureError):
        almost_sure_spectrum_nonneg(SingleSiteMeasure.from_atoms([0.3, -0.3]))


def test_window_zero_set_examples():
    z = window_zero_set(sample_window(SingleSiteMeasure.from_atoms([0.5]), 0, 1, seed=0))
    np.testing.assert_allclose(z.angles, [-ACOS_Q, ACOS_Q], atol=1e-12)
    m = SingleSiteMeasure.uniform(0.3, 0.6)
    for l, r in [(0, 0), (3, 4), (40, 40)]:
        assert len(window_zero_set(sample_window(m, l, r, seed=5))) == l + r + 1
    for a in (0.2, 0.5, 0.8):
        z = window_zero_set(np.full(37, a))
        assert np.all(np.abs(z.angles) >= 2 * math.asin(a) - 1e-9)


def test_window_zeros_avoid_gap():
    m = SingleSiteMeasure.uniform(0.3, 0.6)
    sigma = almost_sure_spectrum_nonneg(m).dilated(1e-9)
    for seed in range(5):
        z = window_zero_set(sample_window(m, 30, 30, seed))
        assert np.all(sigma.contains(z.angles))


def test_periodic_union_examples():
    s = periodic_union_spectrum(SingleSiteMeasure.from_atoms([0.5]), 3)
    assert s.isclose(constant_spectrum(0.5), tol=1e-9)
    assert periodic_union_spectrum(SingleSiteMeasure.from_atoms([0.3, -0.3]), 2).is_full()
    m = SingleSiteMeasure.from_atoms([0.6, 0.9j])
    assert not periodic_union_spectrum(m, 2).contains(1.1)
    assert periodic_union_spectrum(m, 4).contains(1.1)
    with pytest.raises(SizeError):
        periodic_union_spectrum(SingleSiteMeasure.from_atoms([0.1, 0.2, 0.3, 0.4]), 10)
    with pytest.raises(DomainError):
        periodic_union_spectrum(SingleSiteMeasure.uniform(0.1, 0.2), 2)


def test_periodic_union_monotone():
    m = SingleSiteMeasure.from_atoms([0.6, 0.9j, -0.3])
    prev = None
    for p in (1, 2, 3):
        cur = periodic_union_spectrum(m, p)
        if prev is not None:
            for s, e in prev.arcs:
                assert np.all(cur.contains(np.linspace(s, e, 50), tol=1e-12))
        prev = cur


def test_convergence_constant():
    recs = convergence_experiment(SingleSiteMeasure.from_atoms([0.5]), [(k, k) for k in (10, 40, 160)])
    for rec in recs:
        assert rec["zero_count"] == rec["l"] + rec["r"] + 1
        assert rec["distance"] <= 2 * PI / (rec["l"] + rec["r"]) + 1e-3
    assert set(recs[0]) == {"k", "l", "r", "distance", "zero_count"}


def test_convergence_periodic_whole_periods():
    word = [0.3, 0.4, 0.5]
    recs = convergence_experiment(word, [(50, 48), (500, 498)])
    for rec in recs:
        n = rec["l"] + rec["r"] + 1
        assert n % 3 == 0
        assert rec["distance"] <= 2 * PI / n + 1e-3


def test_convergence_periodic_defect_zero():
    # a window that cuts a period leaves one zero inside a gap of the periodic
    # spectrum, at a position that does not move as the window grows
    word = [0.3, 0.4, 0.5]
    sigma = band_structure(word).spectrum
    outside = []
    for n in (100, 1000):
        z = window_zero_set(np.array(word)[np.arange(n) % 3])
        outside.append(np.sort(z.angles[~sigma.contains(z.angles, tol=1e-9)]))
    np.testing.assert_allclose(outside[0], outside[1], atol=1e-5)
    assert outside[0].size == 4


def test_convergence_schedule_must_increase():
    with pytest.raises(DomainError):
        convergence_experiment([0.5], [(5, 5), (2, 2)])
