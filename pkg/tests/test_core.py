import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szegocmv.core import (
    Angle,
    CirclePoint,
    Mat2C,
    Verblunsky,
    VerblunskyWord,
    angle_distance,
    canonical_angle,
    cone_constants,
    conjugated_matrix,
    conjugated_matrix_by_definition,
    gap_arc,
    is_admissible,
    principal_root,
    transfer_matrix,
)
from szegocmv.errors import (
    AdmissibilityError,
    DomainError,
    InvalidCoefficientError,
    OutOfGapError,
)

J = np.diag([1.0, -1.0])
disk = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(0.0, 0.999),
    st.floats(-math.pi, math.pi),
)
angles = st.floats(-10.0, 10.0, allow_nan=False)


def test_canonical_angle_range():
    assert canonical_angle(math.pi) == -math.pi
    assert canonical_angle(-math.pi) == -math.pi
    assert canonical_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    out = canonical_angle(np.array([0.0, 7.0, -7.0]))
    assert np.all((out >= -math.pi) & (out < math.pi))


@given(angles, angles, angles)
def test_angle_distance_is_a_metric(a, b, c):
    assert angle_distance(a, b) == pytest.approx(angle_distance(b, a), abs=1e-12)
    assert 0 <= angle_distance(a, b) <= math.pi + 1e-12
    assert angle_distance(a, c) <= angle_distance(a, b) + angle_distance(b, c) + 1e-12


def test_angle_and_circle_point():
    assert Angle(2 * math.pi + 0.5).theta == pytest.approx(0.5)
    p = CirclePoint.from_angle(1.0)
    assert p.angle.theta == pytest.approx(1.0)
    with pytest.raises(DomainError):
        CirclePoint(1.1)


def test_verblunsky_rho():
    v = Verblunsky(0.6)
    assert v.rho == pytest.approx(0.8)
    assert v.rho ** 2 + abs(v.alpha) ** 2 == pytest.approx(1.0)
    with pytest.raises(InvalidCoefficientError):
        Verblunsky(1.0)


def test_word_flags_and_parsing():
    w = VerblunskyWord.parse("0.6, 0.9i, 0.3-0.1i")
    assert w.alphas.tolist() == [0.6, 0.9j, 0.3 - 0.1j]
    assert not w.real_positive
    assert VerblunskyWord([0.2, 0.5]).real_positive
    assert not VerblunskyWord([0.2, 0.0]).real_positive
    assert not VerblunskyWord([]).real_positive
    with pytest.raises(InvalidCoefficientError):
        VerblunskyWord([0.5, 1.0])
    with pytest.raises(DomainError):
        VerblunskyWord.parse("0.5,x")


def test_transfer_matrix_examples():
    assert transfer_matrix(0, 1j).allclose(Mat2C(1j, 0, 0, 1))
    assert transfer_matrix(0.6, 1).allclose(Mat2C(1.25, -0.75, -0.75, 1.25))
    assert transfer_matrix(0.5, cmath.exp(1j * math.pi / 2)).det == pytest.approx(1j)
    with pytest.raises(InvalidCoefficientError):
        transfer_matrix(1.0, 1)


@settings(max_examples=300)
@given(disk, st.floats(-math.pi, math.pi))
def test_transfer_matrix_in_u11(alpha, theta):
    z = cmath.exp(1j * theta)
    A = transfer_matrix(alpha, z)
    M = A.to_array()
    np.testing.assert_allclose(M.conj().T @ J @ M, J, atol=1e-12 * max(1, A.norm() ** 2))
    assert abs(A.det - z) < 1e-12
    assert A.norm() == pytest.approx(A.inverse().norm(), rel=1e-12)


@settings(max_examples=200)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False), min_size=4, max_size=4))
def test_mat2c_norm_is_largest_singular_value(e):
    M = Mat2C(*e)
    ref = np.linalg.svd(M.to_array(), compute_uv=False)[0]
    assert M.norm() == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_mat2c_arithmetic():
    a = Mat2C(1, 2j, 3, 4)
    b = Mat2C(0.5, 1, -1j, 2)
    c = Mat2C(1, 1, 0, 1)
    assert ((a @ b) @ c).allclose(a @ (b @ c))
    assert (a @ a.inverse()).allclose(Mat2C.identity())
    assert (a @ b).det == pytest.approx(a.det * b.det)
    assert (2 * a).trace == pytest.approx(2 * a.trace)


def test_conjugated_matrix_examples():
    r3 = math.sqrt(3)
    assert conjugated_matrix(0.5, 1).allclose(Mat2C(1 / r3, 0, 0, r3), 1e-12)
    w = cmath.exp(0.1j)
    assert conjugated_matrix(0.3, w).allclose(conjugated_matrix_by_definition(0.3, w))
    assert conjugated_matrix(1e-14, 1).allclose(Mat2C.identity(), 1e-12)
    for bad in (0.0, 1.0, -0.2, 0.3j):
        with pytest.raises(InvalidCoefficientError):
            conjugated_matrix(bad, 1)


def test_conjugated_matrix_matches_definition_fuzz():
    rng = np.random.default_rng(11)
    for alpha, t in zip(rng.uniform(1e-6, 0.999, 10_000), rng.uniform(-math.pi, math.pi, 10_000)):
        w = cmath.exp(1j * t)
        B = conjugated_matrix(alpha, w)
        ref = conjugated_matrix_by_definition(alpha, w)
        assert np.max(np.abs(B.to_array() - ref.to_array())) < 1e-12
        assert np.all(B.to_array().imag == 0)


def test_principal_root():
    assert principal_root(1, 0.5) == pytest.approx(1)
    assert principal_root(cmath.exp(0.4j), 0.3) == pytest.approx(cmath.exp(0.2j))
    assert principal_root(cmath.exp(-0.5j), 0.3) == pytest.approx(cmath.exp(-0.25j))
    with pytest.raises(OutOfGapError):
        principal_root(-1, 0.5)
    with pytest.raises(OutOfGapError):
        principal_root(cmath.exp(1j * math.pi / 3), 0.5)


@given(st.floats(0.01, 0.99), st.floats(-0.999, 0.999))
def test_principal_root_is_admissible(A, frac):
    z = cmath.exp(1j * frac * 2 * math.asin(A))
    w = principal_root(z, A)
    assert abs(w * w - z) < 1e-12
    assert w.real > math.sqrt(1 - A * A)
    assert abs(w.imag) < A


def test_cone_constants_examples():
    c = cone_constants(0.5, 1)
    assert c.C == pytest.approx(1.7320508, abs=1e-7)
    assert c.kappa == pytest.approx(1.7320508, abs=1e-7)
    c = cone_constants(0.3, cmath.exp(0.2j))
    assert c.C == pytest.approx(1.36277028773849, abs=1e-12)
    assert c.kappa == pytest.approx(1.13693628149253, abs=1e-12)
    assert cone_constants(1e-6, 1).C == pytest.approx(1.0, abs=1e-5)
    with pytest.raises(AdmissibilityError):
        cone_constants(0.3, cmath.exp(0.4j))
    with pytest.raises(DomainError):
        cone_constants(1.0, 1)


def test_kappa_exceeds_one_fuzz():
    rng = np.random.default_rng(5)
    n = 0
    while n < 10_000:
        A = rng.uniform(0.001, 0.999)
        t = rng.uniform(-1, 1) * math.asin(A)
        w = cmath.exp(1j * t)
        if not is_admissible(A, w):
            continue
        assert cone_constants(A, w).kappa > 1
        n += 1


def test_gap_arc():
    arc = gap_arc(0.5)
    assert not arc.closed
    assert arc.arcs[0] == pytest.approx((-math.pi / 3, math.pi / 3))
    assert gap_arc(0).is_empty()
    assert gap_arc(math.sqrt(2) / 2).arcs[0] == pytest.approx((-math.pi / 2, math.pi / 2))
    for bad in (-0.1, 1.0):
        with pytest.raises(DomainError):
            gap_arc(bad)
