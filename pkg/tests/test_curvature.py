from __future__ import annotations

import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hodgebound.curvature import (
    CurvatureSymmetryError,
    CurvatureTensor,
    constant_curvature,
    curvature_operator,
    gauss_intrinsic,
    p_weak_ricci,
    ric_min,
    ric_p,
    ricci,
    scalar_curvature,
    weitzenboeck,
    weitzenboeck_min_eigenvalue,
    weitzenboeck_quadratic,
)
from hodgebound.exterior import PForm, hodge_star_matrix
from hodgebound.models import clifford_torus
from hodgebound.sampling import random_curvature_tensor, random_form, random_second_fundamental_form
from hodgebound.submanifold import SecondFundamentalForm


def test_constant_curvature_entries():
    R = constant_curvature(3, 2.0)
    assert R.R[0, 1, 0, 1] == 2.0 and R.R[0, 1, 0, 2] == 0.0
    assert not np.any(constant_curvature(4, 0.0).R)


def test_symmetry_validation(rng):
    for c in rng.uniform(-2, 2, 20):
        constant_curvature(4, float(c))
    r = np.zeros((3, 3, 3, 3))
    r[0, 1, 0, 1] = 1.0
    with pytest.raises(CurvatureSymmetryError):
        CurvatureTensor(r)


def test_bianchi_waiver():
    n = 4
    a = np.zeros((n, n, n, n))
    # pair and antisymmetry hold, first Bianchi fails
    for (i, j, k, l), v in {(0, 1, 2, 3): 1.0}.items():
        for (x, y, z, w), s in [((i, j, k, l), 1), ((j, i, k, l), -1), ((i, j, l, k), -1), ((j, i, l, k), 1)]:
            a[x, y, z, w] = s * v
            a[z, w, x, y] = s * v
    with pytest.raises(CurvatureSymmetryError):
        CurvatureTensor(a)
    assert CurvatureTensor(a, check_bianchi=False).n == 4


def test_gauss_equation_examples():
    sphere = gauss_intrinsic(constant_curvature(4, 0.0), SecondFundamentalForm.umbilic(4))
    for i in range(4):
        for j in range(4):
            if i != j:
                assert sphere.sectional(i, j) == 1.0
    assert np.allclose(sphere.R, constant_curvature(4, 1.0).R, atol=1e-12)
    torus = clifford_torus(4, 2, 1.0)
    assert torus.R.sectional(0, 1) == pytest.approx(2.0, abs=1e-12)
    assert torus.R.sectional(0, 2) == pytest.approx(0.0, abs=1e-12)


def test_gauss_matches_einsum_oracle(rng):
    for _ in range(200):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        c = float(rng.uniform(-2, 2))
        B = random_second_fundamental_form(rng, n, m)
        R = gauss_intrinsic(constant_curvature(n, c), B)
        assert np.allclose(R.R, oracles.gauss(c, B.h), atol=1e-12)


def test_gauss_dimension_mismatch():
    with pytest.raises(ValueError):
        gauss_intrinsic(constant_curvature(3, 1.0), SecondFundamentalForm.umbilic(4))


def test_ricci_examples():
    torus = clifford_torus(4, 2, 1.0)
    assert np.allclose(ricci(torus.R), 2 * np.eye(4), atol=1e-12)
    assert p_weak_ricci(torus.R, [0, 1]) == pytest.approx(4.0, abs=1e-12)
    for n in range(2, 8):
        assert np.allclose(ricci(constant_curvature(n, 1.0)), (n - 1) * np.eye(n))
        assert scalar_curvature(constant_curvature(n, 1.0)) == pytest.approx(n * (n - 1))


def test_ric_p_is_minimum_over_frames(rng):
    for _ in range(50):
        n = int(rng.integers(2, 6))
        R = random_curvature_tensor(rng, n)
        p = int(rng.integers(1, n + 1))
        best = ric_p(R, p)
        assert ric_p(R, 1) == pytest.approx(ric_min(R), abs=1e-12)
        ric = ricci(R)
        for _ in range(20):
            q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            assert np.trace(q[:, :p].T @ ric @ q[:, :p]) >= best - 1e-9


def test_weitzenboeck_constant_curvature_example():
    W = weitzenboeck(constant_curvature(4, 1.0), 2).matrix
    assert np.allclose(W, 4 * np.eye(6), atol=1e-12)
    sphere = gauss_intrinsic(constant_curvature(3, 0.0), SecondFundamentalForm.umbilic(3))
    assert np.allclose(weitzenboeck(sphere, 1).matrix, 2 * np.eye(3), atol=1e-12)


def test_weitzenboeck_matches_component_oracle(rng):
    for _ in range(100):
        n = int(rng.integers(2, 6))
        p = int(rng.integers(0, n + 1))
        R = random_curvature_tensor(rng, n)
        w = random_form(rng, n, p)
        assert np.allclose(weitzenboeck(R, p)(w).coeffs, oracles.weitzenboeck(R.R, w).coeffs, atol=1e-10)


def test_weitzenboeck_symmetric_and_degree_one(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        R = random_curvature_tensor(rng, n)
        assert np.max(np.abs(weitzenboeck(R, 1).matrix - ricci(R))) <= 1e-12
        p = int(rng.integers(1, n))
        assert weitzenboeck(R, p).asymmetry() <= 1e-10


def test_weitzenboeck_extreme_degrees(rng):
    R = random_curvature_tensor(rng, 4)
    assert not np.any(weitzenboeck(R, 0).matrix)
    assert not np.any(weitzenboeck(R, 4).matrix)


def test_hodge_duality(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        p = int(rng.integers(0, n + 1))
        R = random_curvature_tensor(rng, n)
        star = hodge_star_matrix(n, p)
        inv = (-1) ** (p * (n - p)) * hodge_star_matrix(n, n - p)
        assert np.allclose(star @ weitzenboeck(R, p).matrix @ inv, weitzenboeck(R, n - p).matrix, atol=1e-9)


def test_quadratic_route_examples(rng):
    R = constant_curvature(4, 1.0)
    w = random_form(rng, 4, 2)
    assert weitzenboeck_quadratic(R, 2, w) == pytest.approx(4 * w.norm() ** 2, abs=1e-9)
    T = random_curvature_tensor(rng, 4)
    assert weitzenboeck_quadratic(T, 1, PForm.basis_form(4, [0])) == pytest.approx(ricci(T)[0, 0], abs=1e-12)
    zero = CurvatureTensor(np.zeros((3, 3, 3, 3)))
    assert weitzenboeck_quadratic(zero, 2, random_form(rng, 3, 2)) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_two_routes_agree(n, seed):
    rng = np.random.default_rng(seed)
    R = random_curvature_tensor(rng, n)
    p = int(rng.integers(0, n + 1))
    w = random_form(rng, n, p)
    q1 = float(w.coeffs @ weitzenboeck(R, p).matrix @ w.coeffs)
    q2 = weitzenboeck_quadratic(R, p, w)
    assert abs(q1 - q2) <= 1e-8 * max(1.0, abs(q1))


def test_curvature_operator():
    assert curvature_operator(constant_curvature(4, 1.0)).min_eigenvalue == pytest.approx(1.0, abs=1e-12)
    torus = curvature_operator(clifford_torus(4, 2, 1.0).R)
    assert torus.min_eigenvalue == pytest.approx(0.0, abs=1e-12)
    assert np.max(np.abs(torus.matrix - torus.matrix.T)) <= 1e-12
    R = random_curvature_tensor(np.random.default_rng(5), 5)
    assert np.array_equal(curvature_operator(R).matrix, oracles.curvature_operator(R.R))


def test_curvature_operator_bound_implies_weitzenboeck_bound(rng):
    # R >= c on Lambda^2 forces W^[p] >= p(n-p)c
    for _ in range(40):
        n = int(rng.integers(3, 6))
        R = random_curvature_tensor(rng, n)
        c = curvature_operator(R).min_eigenvalue
        for p in range(1, n):
            assert weitzenboeck_min_eigenvalue(R, p) >= p * (n - p) * c - 1e-9


def test_constant_curvature_grid_runtime():
    start = time.perf_counter()
    for n in range(2, 9):
        for c in (-2.0, -1.0, 0.0, 0.5, 1.0, 2.0):
            R = constant_curvature(n, c)
            for p in range(1, n):
                W = weitzenboeck(R, p).matrix
                assert np.max(np.abs(W - p * (n - p) * c * np.eye(W.shape[0]))) <= 1e-9
    assert time.perf_counter() - start < 5.0
