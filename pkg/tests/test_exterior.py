from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hodgebound.exterior import (
    MAX_FRAME_DIM,
    PForm,
    basis,
    derivation_extend,
    dim,
    form_inner,
    hodge_star,
    indices_from_mask,
    interior,
    mask_from_indices,
    popcount,
    rank_subset,
    unrank_subset,
    wedge,
)
from hodgebound.sampling import random_form, random_symmetric


def e(n, *idx):
    return PForm.basis_form(n, list(idx))


def test_rank_examples():
    assert rank_subset(mask_from_indices([0, 1]), 4) == 0
    assert rank_subset(mask_from_indices([2, 3]), 4) == 5


def test_rank_roundtrip_all_subsets():
    for n in range(0, 9):
        for p in range(n + 1):
            masks = basis(n, p)
            assert len(masks) == dim(n, p)
            for r, bits in enumerate(masks):
                assert popcount(bits) == p
                assert rank_subset(bits, n, p) == r
                assert unrank_subset(r, n, p) == bits
                assert max(indices_from_mask(bits), default=-1) < n


def test_basis_is_lexicographic():
    tuples = [tuple(indices_from_mask(b)) for b in basis(5, 3)]
    assert tuples == list(combinations(range(5), 3))


def test_rank_rejects_wrong_cardinality():
    with pytest.raises(ValueError):
        rank_subset(mask_from_indices([0, 1, 2]), 4, 2)


def test_frame_dimension_cap():
    with pytest.raises(ValueError):
        PForm.zero(MAX_FRAME_DIM + 1, 1)


def test_wedge_examples():
    top = e(3, 0, 1, 2)
    assert np.array_equal(wedge(e(3, 0), e(3, 1, 2)).coeffs, top.coeffs)
    assert np.array_equal(wedge(e(3, 1), e(3, 0, 2)).coeffs, -top.coeffs)
    assert not np.any(wedge(e(3, 0), e(3, 0)).coeffs)


def test_wedge_overflow_is_zero():
    out = wedge(e(3, 0, 1), e(3, 1, 2))
    assert out.p == 3 and not np.any(out.coeffs)


def test_interior_examples():
    assert np.array_equal(interior(0, e(2, 0, 1)).coeffs, e(2, 1).coeffs)
    assert np.array_equal(interior(1, e(2, 0, 1)).coeffs, -e(2, 0).coeffs)
    zero = interior(0, PForm(3, 0, np.array([2.0])))
    assert zero.p == 0 and zero.coeffs[0] == 0.0


def test_hodge_star_examples(rng):
    assert np.array_equal(hodge_star(e(3, 0)).coeffs, e(3, 1, 2).coeffs)
    assert np.array_equal(hodge_star(e(3, 0, 1)).coeffs, e(3, 2).coeffs)
    w = random_form(rng, 4, 2)
    assert np.allclose(hodge_star(hodge_star(w)).coeffs, w.coeffs, atol=1e-14)


def test_inner_examples(rng):
    assert form_inner(e(3, 0, 1), e(3, 0, 1)) == 1.0
    assert form_inner(e(3, 0, 1), e(3, 0, 2)) == 0.0
    for _ in range(500):
        n = int(rng.integers(1, 7))
        p = int(rng.integers(0, n + 1))
        a, b = random_form(rng, n, p), random_form(rng, n, p)
        assert abs(form_inner(a, b)) <= a.norm() * b.norm() + 1e-12


def test_degree_extremes():
    assert dim(5, 0) == 1 and dim(5, 5) == 1
    assert PForm(4, 0, [3.0]).norm() == 3.0


def test_pform_is_immutable():
    w = e(3, 0)
    with pytest.raises(ValueError):
        w.coeffs[0] = 5.0


def test_adjointness(rng):
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        p = int(rng.integers(0, n))
        k = int(rng.integers(0, n))
        w, t = random_form(rng, n, p), random_form(rng, n, p + 1)
        worst = max(worst, abs(form_inner(wedge(e(n, k), w), t) - form_inner(w, interior(k, t))))
    assert worst <= 1e-12


def test_wedge_matches_permutation_oracle(rng):
    for _ in range(100):
        n = int(rng.integers(1, 6))
        p = int(rng.integers(0, n + 1))
        q = int(rng.integers(0, n - p + 1))
        a, b = random_form(rng, n, p), random_form(rng, n, q)
        assert np.allclose(wedge(a, b).coeffs, oracles.wedge(a, b).coeffs, atol=1e-12)


def test_interior_and_star_match_oracles(rng):
    for _ in range(100):
        n = int(rng.integers(1, 6))
        p = int(rng.integers(1, n + 1))
        w = random_form(rng, n, p)
        x = rng.standard_normal(n)
        assert np.allclose(interior(x, w).coeffs, oracles.interior(x, w).coeffs, atol=1e-12)
        assert np.allclose(hodge_star(w).coeffs, oracles.hodge_star(w).coeffs, atol=1e-12)


def test_derivation_examples():
    assert np.array_equal(derivation_extend(np.eye(4), 2).matrix, 2 * np.eye(6))
    assert np.array_equal(derivation_extend(np.diag([1.0, 2.0, 3.0]), 2).matrix, np.diag([3.0, 4.0, 5.0]))


def test_derivation_routes_and_oracle(rng):
    from hodgebound.submanifold import shape_apply

    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        p = int(rng.integers(0, n + 1))
        a, w = random_symmetric(rng, n), random_form(rng, n, p)
        d = derivation_extend(a, p)
        worst = max(worst, np.max(np.abs(d(w).coeffs - shape_apply(a, w).coeffs)))
        worst = max(worst, np.max(np.abs(d(w).coeffs - oracles.derivation(a, w).coeffs)))
        assert d.asymmetry() <= 1e-12
    assert worst <= 1e-10


def test_derivation_laws(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        p = int(rng.integers(0, n + 1))
        a, b = rng.standard_normal((n, n)), rng.standard_normal((n, n))
        da, db = derivation_extend(a, p).matrix, derivation_extend(b, p).matrix
        assert np.allclose(derivation_extend(a + b, p).matrix, da + db, atol=1e-12)
        assert np.allclose(derivation_extend(a @ b - b @ a, p).matrix, da @ db - db @ da, atol=1e-10)
        assert np.array_equal(derivation_extend(a, 1).matrix, a)


def test_derivation_rejects_non_square():
    with pytest.raises(ValueError):
        derivation_extend(np.ones((2, 3)), 1)


forms = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(0, n), st.integers(0, 2**32 - 1))
)


@settings(max_examples=150, deadline=None)
@given(forms)
def test_antiderivation_law(args):
    n, p, q, seed = args
    rng = np.random.default_rng(seed)
    w, t = random_form(rng, n, p), random_form(rng, n, q)
    x = rng.standard_normal(n)
    lhs = interior(x, wedge(w, t))
    # a contraction of a 0-form is absent from the law, not a 0-form
    terms = []
    if p >= 1:
        terms.append(wedge(interior(x, w), t))
    if q >= 1:
        terms.append((-1) ** p * wedge(w, interior(x, t)))
    if p + q > n or not terms:
        assert not np.any(lhs.coeffs)
        return
    rhs = terms[0] if len(terms) == 1 else terms[0] + terms[1]
    assert np.max(np.abs((lhs - rhs).coeffs), initial=0.0) <= 1e-12


@settings(max_examples=150, deadline=None)
@given(forms)
def test_star_isometry_and_involution(args):
    n, p, _, seed = args
    w = random_form(np.random.default_rng(seed), n, p)
    s = hodge_star(w)
    assert abs(s.norm() - w.norm()) <= 1e-12
    assert np.allclose(hodge_star(s).coeffs, (-1) ** (p * (n - p)) * w.coeffs, atol=1e-12)


@settings(max_examples=150, deadline=None)
@given(forms)
def test_interior_squares_to_zero(args):
    n, p, _, seed = args
    rng = np.random.default_rng(seed)
    w = random_form(rng, n, p)
    for k in range(n):
        assert np.max(np.abs(interior(k, interior(k, w)).coeffs), initial=0.0) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(forms)
def test_wedge_graded_commutative(args):
    n, p, q, seed = args
    if p + q > n:
        return
    rng = np.random.default_rng(seed)
    w, t = random_form(rng, n, p), random_form(rng, n, q)
    assert np.allclose(wedge(w, t).coeffs, (-1) ** (p * q) * wedge(t, w).coeffs, atol=1e-12)
