from __future__ import annotations

import numpy as np
import pytest

from hodgebound import bounds as bd
from hodgebound.bounds import (
    HOLDS,
    NOT_APPLICABLE,
    VIOLATED,
    alpha_equivalence_gap,
    alpha_threshold,
    cor12_bounds,
    ejiri_threshold,
    gallot_meyer_bound,
    gclaim_chain,
    lemma42_check,
    sharp_ricci_threshold,
    sphere_theorem_thresholds,
    thm11_bound,
    thm15_bound,
    thm15_opnorm_chain,
)
from hodgebound.exterior import PForm
from hodgebound.models import clifford_torus, geodesic_sphere
from hodgebound.sampling import random_form, random_second_fundamental_form, random_symmetric
from hodgebound.submanifold import SecondFundamentalForm, summarize

CLIFFORD = clifford_torus(4, 2, 1.0).B
ZERO4 = SecondFundamentalForm(np.zeros((1, 4, 4)))


def test_gallot_meyer():
    assert gallot_meyer_bound(4, 2, 1.0).value == 6
    assert gallot_meyer_bound(4, 2, 0.0).value == 0
    assert gallot_meyer_bound(5, 1, 2.0).value == 10
    assert not gallot_meyer_bound(5, 0, 1.0).applicable


def test_thm11_examples():
    assert thm11_bound(CLIFFORD, 2, 1.0).value == pytest.approx(0.0, abs=1e-12)
    assert thm11_bound(ZERO4, 1, 1.0).value == 4
    for n in range(2, 9):
        for p in range(1, n // 2 + 1):
            assert thm11_bound(geodesic_sphere(n).B, p, 0.0).value == p * (n - p + 1)
    r = thm11_bound(ZERO4, 4, 1.0)
    assert r.value is None and r.compare(0.0).satisfied == NOT_APPLICABLE


def test_thm11_duality(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        B = random_second_fundamental_form(rng, n, 2)
        c = float(rng.uniform(-1, 1))
        for p in range(1, n):
            a, b = thm11_bound(B, p, c), thm11_bound(B, n - p, c)
            assert a.value == pytest.approx(b.value, abs=1e-12)
            assert a.dual == (2 * p > n)


def test_cor12_examples(rng):
    cor = cor12_bounds(CLIFFORD, 2, 1.0)
    for k in ("i", "ii", "iii", "eps"):
        assert cor[k].value == pytest.approx(0.0, abs=1e-12)
    zero = SecondFundamentalForm(np.zeros((2, 5, 5)))
    for p in range(1, 5):
        cor = cor12_bounds(zero, p, 1.5)
        q = min(p, 5 - p)
        for k in ("i", "ii", "eps"):
            assert cor[k].value == pytest.approx(q * (5 - q + 1) * 1.5)
        assert cor["iii"].satisfied == NOT_APPLICABLE and not cor["iii"].applicable
    assert not cor12_bounds(CLIFFORD, 2, 1.0, eps=-1.0)["eps"].applicable


def test_cor12_dominance(rng):
    for _ in range(500):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        p = int(rng.integers(1, n))
        B = random_second_fundamental_form(rng, n, m)
        c = float(rng.uniform(-1, 2))
        top = thm11_bound(B, p, c).value
        q = min(p, n - p)
        cor = cor12_bounds(B, p, c, eps=n / (2 * q) - 1)
        assert cor["i"].value <= top + 1e-9
        assert cor["ii"].value <= top + 1e-9
        assert cor["eps"].value <= top + 1e-9
        values = [cor12_bounds(B, p, c, eps=float(eps))["eps"].value for eps in (0.0, *rng.uniform(-0.99, 5.0, 3))]
        assert max(values) <= top + 1e-9
        assert min(values) <= cor["i"].value + 1e-9
        assert values[0] == pytest.approx(cor["i"].value, abs=1e-12)


def test_alpha_examples():
    assert alpha_threshold(4, 2, 1.0, 0.0).value == 4
    assert alpha_threshold(4, 1, 1.0, 0.5).value == pytest.approx(4.0, abs=1e-12)
    assert not alpha_threshold(4, 1, -1.0, 0.5).applicable
    for n in range(3, 11):
        for h in (0.0, 0.3, 1.0, 2.5):
            vals = [alpha_threshold(n, p, 1.0, h).value for p in range(1, n)]
            assert min(vals) == pytest.approx(vals[0], abs=1e-12)


def test_alpha_equivalence_on_grid():
    for n in range(2, 9):
        for p in range(1, n):
            for c in (0.0, 0.5, 1.0):
                for h in np.linspace(0, 2, 7):
                    for bring in np.linspace(0, 3, 11):
                        a = alpha_threshold(n, p, c, h).value
                        if abs(bring**2 + n * h * h - a) > 1e-9:
                            lhs, rhs = alpha_equivalence_gap(n, p, c, h, bring)
                            assert lhs == rhs


def test_thm15_examples():
    assert thm15_bound(4, 2, 1.0, 1.0, 2.0, 0.0).value == pytest.approx(0.0, abs=1e-12)
    assert thm15_bound(4, 1, 1.0, 1.0, 3.0, 0.0).value == pytest.approx(4.0, abs=1e-12)
    assert not thm15_bound(4, 1, 1.0, 0.5, 3.0, 0.0).applicable
    assert not thm15_bound(2, 1, 1.0, 1.0, 1.0, 0.0).applicable


def test_ejiri_denominator_positive():
    for n in range(3, 40):
        for p in range(1, n):
            assert bd._ejiri_denominator(n, p) > 0


def test_thresholds():
    t = sphere_theorem_thresholds(4, 2, 1.0, 1.0, 0.0)
    assert t["ejiri"].value == pytest.approx(2.0)
    assert t["ejiri"].compare(2.0).satisfied == VIOLATED
    assert t["ejiri"].compare(2.1).satisfied == HOLDS
    assert sharp_ricci_threshold(5, 1.0, 1.0, 0.0).value == pytest.approx(50 / 17, abs=1e-12)
    t1 = sphere_theorem_thresholds(4, 1, 1.0)
    assert t1["bring2"].value == pytest.approx(3.0)
    assert t1["gu_xu_p1"].value == pytest.approx(4 * 3 / 6)
    assert not t1["gclaim"].applicable
    assert t1["b2"].value == pytest.approx(2 * np.sqrt(3))
    assert not sphere_theorem_thresholds(4, 2, 1.0, 2.0)["gclaim"].applicable
    assert not sphere_theorem_thresholds(4, 2, -1.0)["bring2"].applicable
    assert sphere_theorem_thresholds(6, 3, 1.0)["gclaim"].value == pytest.approx(
        5 - 4 * 9 / (8 * 9 - 36)
    )


def test_sharpric_is_max_of_ejiri():
    for n in range(3, 15):
        for cl, cu, h2 in ((1.0, 1.0, 0.0), (0.2, 1.5, 0.4), (-1.0, 0.0, 2.0)):
            best = max(ejiri_threshold(n, p, cl, cu, h2).value for p in range(1, n))
            assert sharp_ricci_threshold(n, cl, cu, h2).value == pytest.approx(best, abs=1e-12)


def test_thresholds_out_of_range():
    assert not ejiri_threshold(4, 0, 1.0, 1.0, 0.0).applicable
    assert not ejiri_threshold(2, 1, 1.0, 1.0, 0.0).applicable


def test_lemma42(rng):
    w = random_form(rng, 4, 2)
    res = lemma42_check([np.eye(4)], 2, w)
    assert res.lhs == pytest.approx(res.rhs) == pytest.approx(4 * w.norm() ** 2)
    for _ in range(1000):
        n, m = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        p = int(rng.integers(0, n + 1))
        assert lemma42_check([random_symmetric(rng, n) for _ in range(m)], p, random_form(rng, n, p), 1e-9).holds
    for _ in range(50):
        n = int(rng.integers(1, 7))
        a = random_symmetric(rng, n)
        _, v = np.linalg.eigh(a @ a)
        res = lemma42_check([a], 1, PForm(n, 1, v[:, -1]))
        assert abs(res.lhs - res.rhs) <= 1e-8


def test_lemma42_degree_mismatch(rng):
    with pytest.raises(ValueError):
        lemma42_check([np.eye(3)], 2, random_form(rng, 3, 1))


def test_thm15_chain(rng):
    res = thm15_opnorm_chain(CLIFFORD, 2)
    assert res.lhs == pytest.approx(4.0, abs=1e-10) and res.rhs == pytest.approx(4.0, abs=1e-10)
    for _ in range(200):
        n = int(rng.integers(3, 7))
        p = int(rng.integers(1, n // 2 + 1))
        B = random_second_fundamental_form(rng, n, int(rng.integers(1, 4)))
        assert thm15_opnorm_chain(B, p, 1e-9).holds
    with pytest.raises(ValueError):
        thm15_opnorm_chain(CLIFFORD, 3)


def test_thm15_chain_umbilic():
    for n in range(3, 8):
        for k in (0.5, 1.0, 2.0):
            B = SecondFundamentalForm.umbilic(n, k)
            for p in range(1, n // 2 + 1):
                res = thm15_opnorm_chain(B, p)
                assert res.lhs == pytest.approx(-p * (n - p) * k * k, abs=1e-10)
                assert res.holds


def test_gclaim_chain(rng):
    for _ in range(200):
        n = int(rng.integers(4, 9))
        p = int(rng.integers(2, n // 2 + 1))
        B = random_second_fundamental_form(rng, n, int(rng.integers(1, 4)))
        for c in (0.0, 1.0):
            assert gclaim_chain(B, p, c, 1e-9).holds
    with pytest.raises(ValueError):
        gclaim_chain(CLIFFORD, 1, 1.0)


def test_bound_report_serialises():
    d = thm11_bound(CLIFFORD, 2, 1.0).as_dict()
    assert set(d) == {"name", "inputs", "value", "satisfied", "sense", "dual", "note"}


def test_env_tolerance(monkeypatch):
    r = thm11_bound(ZERO4, 1, 1.0)
    monkeypatch.setenv("HODGEBOUND_TOL", "0.5")
    assert r.compare(3.6).satisfied == HOLDS
    monkeypatch.setenv("HODGEBOUND_TOL", "0")
    assert r.compare(3.6).satisfied == VIOLATED
    monkeypatch.setenv("HODGEBOUND_TOL", "abc")
    with pytest.raises(ValueError):
        r.compare(3.6)


def test_summaries_of_models_feed_bounds():
    s = summarize(clifford_torus(4, 1, 1.0).B)
    assert s.B2 == pytest.approx(alpha_threshold(4, 1, 1.0, s.Hnorm).value)


def test_gclaim_chain_equality_at_clifford():
    res = gclaim_chain(CLIFFORD, 2, 1.0)
    assert res.lhs == pytest.approx(4.0, abs=1e-10) and res.rhs == pytest.approx(4.0, abs=1e-10)
