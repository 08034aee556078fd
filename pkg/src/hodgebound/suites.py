"""Seeded property suites run by ``hodgebound verify``.

Randomised properties are aggregated into one record each: ``value`` is the
number of trials and ``residual`` the worst residual seen.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable

import numpy as np

from . import bounds as bd
from .curvature import (
    constant_curvature,
    curvature_operator,
    gauss_intrinsic,
    ric_min,
    ricci,
    weitzenboeck,
    weitzenboeck_quadratic,
)
from .eigen import spectral_norm
from .exterior import (
    PForm,
    basis,
    derivation_extend,
    form_inner,
    hodge_star,
    hodge_star_matrix,
    interior,
    rank_subset,
    unrank_subset,
    wedge,
)
from .models import clifford_torus, geodesic_sphere, sharpness_suite
from .report import CheckRecord, check
from .sampling import (
    random_curvature_tensor,
    random_form,
    random_second_fundamental_form,
    random_symmetric,
)
from .submanifold import (
    SecondFundamentalForm,
    gap_identity_residual,
    ls_quantity,
    shape_apply,
    shape_extension,
    summarize,
    traceless_opnorm_bound,
    traceless_opnorm_sq,
)

SUITES = ("algebra", "curvature", "identities", "inequalities", "models")


class _Worst:
    """Tracks the worst residual of a randomised property."""

    def __init__(self, name: str, tol: float, **inputs):
        self.name, self.tol, self.inputs = name, tol, inputs
        self.worst = 0.0
        self.count = 0

    def add(self, residual: float) -> None:
        self.count += 1
        self.worst = max(self.worst, abs(float(residual)))

    def record(self) -> CheckRecord:
        return check(self.name, self.worst, self.tol, dict(self.inputs, trials=self.count), self.count)


def _e(n: int, *idx: int) -> PForm:
    return PForm.basis_form(n, list(idx))


def _max_abs(a) -> float:
    return float(np.max(np.abs(a), initial=0.0))


def algebra_suite(rng: np.random.Generator, trials: int, tol: float) -> list[CheckRecord]:
    out = []
    bad = 0
    for n in range(1, 9):
        for p in range(n + 1):
            for r, b in enumerate(basis(n, p)):
                bad += rank_subset(b, n, p) != r or unrank_subset(r, n, p) != b
    out.append(check("rank_unrank_roundtrip", bad, 0, {"n_max": 8}))

    e = lambda *i: _e(3, *i)  # noqa: E731
    e123 = _e(3, 0, 1, 2)
    out.append(check("wedge_basis_sign",
                     _max_abs((wedge(e(1), wedge(e(0), e(2))) + e123).coeffs)
                     + _max_abs((wedge(e(0), wedge(e(1), e(2))) - e123).coeffs)
                     + _max_abs(wedge(e(0), e(0)).coeffs), 1e-12))
    out.append(check("interior_basis_sign",
                     _max_abs((interior(0, _e(3, 0, 1)) - e(1)).coeffs)
                     + _max_abs((interior(1, _e(3, 0, 1)) + e(0)).coeffs), 1e-12))
    out.append(check("hodge_star_basis",
                     _max_abs((hodge_star(e(0)) - _e(3, 1, 2)).coeffs)
                     + _max_abs((hodge_star(_e(3, 0, 1)) - e(2)).coeffs), 1e-12))

    adj = _Worst("interior_adjoint_of_wedge", 1e-12)
    anti = _Worst("interior_antiderivation", 1e-12)
    nil = _Worst("interior_squares_to_zero", 1e-12)
    assoc = _Worst("wedge_associative", 1e-12)
    graded = _Worst("wedge_graded_commutative", 1e-12)
    star_iso = _Worst("hodge_star_isometry", 1e-12)
    star2 = _Worst("hodge_star_squared", 1e-12)
    cs = _Worst("cauchy_schwarz", 1e-12)
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        p, q = int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1))
        w, t = random_form(rng, n, p), random_form(rng, n, q)
        k = int(rng.integers(0, n))
        if p < n:
            tau = random_form(rng, n, p + 1)
            adj.add(form_inner(wedge(_e(n, k), w), tau) - form_inner(w, interior(k, tau)))
        x = rng.standard_normal(n)
        if p >= 1 and q >= 1 and p + q <= n:
            rhs = wedge(interior(x, w), t) + (-1) ** p * wedge(w, interior(x, t))
            anti.add(_max_abs((interior(x, wedge(w, t)) - rhs).coeffs))
        if p >= 2:
            nil.add(_max_abs(interior(x, interior(x, w)).coeffs))
        s = random_form(rng, n, int(rng.integers(0, n + 1)))
        if p + q + s.p <= n:
            assoc.add(_max_abs((wedge(wedge(w, t), s) - wedge(w, wedge(t, s))).coeffs))
        if p + q <= n:
            graded.add(_max_abs((wedge(w, t) - (-1) ** (p * q) * wedge(t, w)).coeffs))
        star_iso.add(hodge_star(w).norm() - w.norm())
        star2.add(_max_abs((hodge_star(hodge_star(w)) - (-1) ** (p * (n - p)) * w).coeffs))
        u = random_form(rng, n, p)
        cs.add(max(0.0, abs(form_inner(w, u)) - w.norm() * u.norm()))
    out += [r.record() for r in (adj, anti, nil, assoc, graded, star_iso, star2, cs)]

    routes = _Worst("derivation_matches_wedge_interior", 1e-10)
    linear = _Worst("derivation_linear", 1e-12)
    bracket = _Worst("derivation_commutator_law", 1e-10)
    degree1 = _Worst("derivation_degree_one", 0.0)
    ident = _Worst("derivation_identity", 1e-12)
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        p = int(rng.integers(0, n + 1))
        a, b = random_symmetric(rng, n), random_symmetric(rng, n)
        w = random_form(rng, n, p)
        routes.add(_max_abs((derivation_extend(a, p)(w) - shape_apply(a, w)).coeffs))
        linear.add(_max_abs(derivation_extend(a + b, p).matrix - derivation_extend(a, p).matrix
                            - derivation_extend(b, p).matrix))
        da, db = derivation_extend(a, p).matrix, derivation_extend(b, p).matrix
        bracket.add(_max_abs(derivation_extend(a @ b - b @ a, p).matrix - (da @ db - db @ da)))
        degree1.add(_max_abs(derivation_extend(a, 1).matrix - a))
        ident.add(_max_abs(derivation_extend(np.eye(n), p).matrix - p * np.eye(len(w.coeffs))))
    out += [r.record() for r in (routes, linear, bracket, degree1, ident)]
    out.append(check("derivation_diag_example",
                     _max_abs(derivation_extend(np.diag([1.0, 2.0, 3.0]), 2).matrix - np.diag([3.0, 4.0, 5.0])),
                     0.0))
    return out


def constant_curvature_records(tol: float = 1e-9) -> list[CheckRecord]:
    worst = _Worst("weitzenboeck_constant_curvature", tol, n="2..8", c="-2,-1,0,0.5,1,2")
    for n in range(2, 9):
        for c in (-2.0, -1.0, 0.0, 0.5, 1.0, 2.0):
            R = constant_curvature(n, c)
            for p in range(1, n):
                W = weitzenboeck(R, p).matrix
                worst.add(_max_abs(W - p * (n - p) * c * np.eye(W.shape[0])))
    return [worst.record()]


def curvature_suite(rng: np.random.Generator, trials: int, tol: float) -> list[CheckRecord]:
    out = constant_curvature_records(1e-9)
    w1 = _Worst("weitzenboeck_degree_one_is_ricci", 1e-12)
    sym = _Worst("weitzenboeck_symmetric", 1e-10)
    routes = _Worst("weitzenboeck_two_routes", 1e-8)
    duality = _Worst("weitzenboeck_hodge_duality", 1e-9)
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        R = random_curvature_tensor(rng, n)
        w1.add(_max_abs(weitzenboeck(R, 1).matrix - ricci(R)))
        p = int(rng.integers(1, n))
        W = weitzenboeck(R, p).matrix
        sym.add(_max_abs(W - W.T))
        w = random_form(rng, n, p)
        q1 = float(w.coeffs @ W @ w.coeffs)
        q2 = weitzenboeck_quadratic(R, p, w)
        routes.add((q1 - q2) / max(1.0, abs(q1)))
        star = hodge_star_matrix(n, p)
        star_inv = (-1) ** (p * (n - p)) * hodge_star_matrix(n, n - p)
        duality.add(_max_abs(star @ W @ star_inv - weitzenboeck(R, n - p).matrix))
    out += [r.record() for r in (w1, sym, routes, duality)]

    gauss = _Worst("gauss_equation_symmetries", 0.0)
    for _ in range(trials):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        c = float(rng.uniform(-2, 2))
        gauss_intrinsic(constant_curvature(n, c), random_second_fundamental_form(rng, n, m))
        gauss.add(0.0)  # construction validates every symmetry
    out.append(gauss.record())

    out.append(check("curvature_operator_constant",
                     curvature_operator(constant_curvature(4, 1.0)).min_eigenvalue - 1.0, 1e-12))
    sphere = gauss_intrinsic(constant_curvature(3, 0.0), SecondFundamentalForm.umbilic(3))
    out.append(check("unit_sphere_sectional", max(abs(sphere.sectional(i, j) - 1.0)
                                                for i, j in combinations(range(3), 2)), 1e-12))
    torus = clifford_torus(4, 2, 1.0)
    out.append(check("clifford_sectional", abs(torus.R.sectional(0, 1) - 2.0) + abs(torus.R.sectional(0, 2)),
                     1e-12))
    out.append(check("clifford_ricci", _max_abs(ricci(torus.R) - 2.0 * np.eye(4)), 1e-12))
    out.append(check("clifford_curvature_operator_min", curvature_operator(torus.R).min_eigenvalue, 1e-12))
    return out


def identities_suite(rng: np.random.Generator, trials: int, tol: float) -> list[CheckRecord]:
    gap = _Worst("gap_identity", 1e-8)
    split = _Worst("norm_split", 1e-10)
    shape_routes = _Worst("shape_operator_two_routes", 1e-10)
    ls_perm = _Worst("ls_split_invariance", 1e-10)
    for _ in range(trials):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        p = int(rng.integers(1, n))
        c = float(rng.uniform(-2, 2))
        B = random_second_fundamental_form(rng, n, m)
        w = random_form(rng, n, p)
        gap.add(gap_identity_residual(c, B, p, w) / max(1e-300, float(w.coeffs @ w.coeffs)))
        s = summarize(B)
        split.add(s.B2 - s.Bring2 - n * s.Hnorm2)
        S, _ = shape_extension(B, p)
        for a, op in zip(B.h, S):
            shape_routes.add(_max_abs((op(w) - shape_apply(a, w)).coeffs))
        first, rest = list(rng.permutation(p)), list(p + rng.permutation(n - p))
        ls_perm.add(ls_quantity(B, p, first + rest) - ls_quantity(B, p))
    out = [r.record() for r in (gap, split, shape_routes, ls_perm)]

    sphere = _Worst("gap_identity_unit_sphere", 1e-10)
    for n in range(2, 8):
        B = SecondFundamentalForm.umbilic(n)
        R = gauss_intrinsic(constant_curvature(n, 0.0), B)
        for p in range(1, n):
            w = random_form(rng, n, p)
            sphere.add(gap_identity_residual(0.0, B, p, w))
            sphere.add(float(w.coeffs @ weitzenboeck(R, p).matrix @ w.coeffs) - p * (n - p) * float(w.coeffs @ w.coeffs))
    out.append(sphere.record())

    mismatch = 0
    for n in range(2, 11):
        for p in range(1, n):
            for c in (0.0, 0.5, 1.0, 2.0):
                for h in np.linspace(0.0, 2.0, 9):
                    for bring in np.linspace(0.0, 3.0, 13):
                        lhs, rhs = bd.alpha_equivalence_gap(n, p, c, h, bring)
                        # skip the measure-zero boundary where rounding decides
                        a = bd.alpha_threshold(n, p, c, h).value
                        if abs(bring * bring + n * h * h - a) > 1e-9:
                            mismatch += lhs != rhs
    out.append(check("alpha_equivalence", mismatch, 0, {"n": "2..10"}))

    worst = 0.0
    for n in range(3, 13):
        for cl, cu, h2 in ((1.0, 1.0, 0.0), (0.5, 2.0, 0.3), (0.0, 1.0, 1.0)):
            top = max(bd.ejiri_threshold(n, p, cl, cu, h2).value for p in range(1, n))
            worst = max(worst, abs(top - bd.sharp_ricci_threshold(n, cl, cu, h2).value))
    out.append(check("sharpric_is_max_over_degrees", worst, 1e-12))

    alpha_min = 0.0
    for n in range(3, 11):
        for h in (0.0, 0.25, 0.5, 1.0, 2.0):
            vals = [bd.alpha_threshold(n, p, 1.0, h).value for p in range(1, n)]
            alpha_min = max(alpha_min, abs(min(vals) - vals[0]))
    out.append(check("alpha_minimised_at_p1", alpha_min, 1e-12))
    return out


def _power_norm(a: np.ndarray, rng: np.random.Generator, iters: int = 5000) -> float:
    # power iteration on A^2, independent of the Jacobi solver
    a2 = a @ a
    x = rng.standard_normal(a.shape[0])
    lam = 0.0
    for _ in range(iters):
        y = a2 @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        new = float(x @ y / (x @ x))
        x = y / norm
        if abs(new - lam) <= 1e-15 * max(1.0, abs(new)):
            lam = new
            break
        lam = new
    return float(np.sqrt(max(lam, 0.0)))


def inequalities_suite(rng: np.random.Generator, trials: int, tol: float) -> list[CheckRecord]:
    out = []
    lem = _Worst("lemma42_inequality", tol)
    for _ in range(trials):
        n, m = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        p = int(rng.integers(0, n + 1))
        res = bd.lemma42_check([random_symmetric(rng, n) for _ in range(m)], p, random_form(rng, n, p), tol)
        lem.add(max(0.0, res.lhs - res.rhs))
    out.append(lem.record())

    eq = _Worst("lemma42_equality_p1", 1e-8)
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        a = random_symmetric(rng, n)
        _, vecs = np.linalg.eigh(a @ a)
        res = bd.lemma42_check([a], 1, PForm(n, 1, vecs[:, -1]), tol)
        eq.add(res.lhs - res.rhs)
    out.append(eq.record())

    opb = _Worst("traceless_opnorm_bound", tol)
    chain = _Worst("thm15_opnorm_chain", tol)
    dom = _Worst("cor12_dominated_by_thm11", tol)
    for _ in range(trials):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        p = int(rng.integers(1, n))
        B = random_second_fundamental_form(rng, n, m)
        opb.add(max(0.0, traceless_opnorm_sq(B, p) - traceless_opnorm_bound(B, p)))
        if n >= 3 and p <= n // 2:
            res = bd.thm15_opnorm_chain(B, p, tol)
            chain.add(max(0.0, res.lhs - res.rhs))
        c = float(rng.uniform(-1, 2))
        top = bd.thm11_bound(B, p, c).value
        cor = bd.cor12_bounds(B, p, c, eps=float(rng.uniform(-0.95, 4.0)))
        dom.add(max(0.0, max(cor["i"].value, cor["ii"].value, cor["eps"].value) - top))
    out += [opb.record(), chain.record(), dom.record()]

    torus = clifford_torus(4, 2, 1.0)
    out.append(check("traceless_opnorm_equality_clifford",
                     traceless_opnorm_sq(torus.B, 2) - traceless_opnorm_bound(torus.B, 2), 1e-8,
                     value=traceless_opnorm_sq(torus.B, 2)))
    res = bd.thm15_opnorm_chain(torus.B, 2, tol)
    out.append(check("thm15_chain_equality_clifford", res.lhs - res.rhs, 1e-10, value=res.lhs))

    gc = _Worst("gclaim_chain", tol, c="0,1")
    for _ in range(trials):
        n = int(rng.integers(4, 9))
        p = int(rng.integers(2, n // 2 + 1))
        B = random_second_fundamental_form(rng, n, int(rng.integers(1, 4)))
        for c in (0.0, 1.0):
            res = bd.gclaim_chain(B, p, c, tol)
            gc.add(max(0.0, res.lhs - res.rhs))
    out.append(gc.record())

    norm = _Worst("spectral_norm_vs_power_iteration", 1e-9)
    for _ in range(trials):
        a = random_symmetric(rng, int(rng.integers(1, 9)))
        ref = _power_norm(a, rng)
        norm.add((spectral_norm(a) - ref) / max(1.0, ref))
    out.append(norm.record())
    return out


def models_suite(rng: np.random.Generator, trials: int, tol: float) -> list[CheckRecord]:
    out = list(sharpness_suite(tol=tol).records)

    sharp = _Worst("sphere_thm11_equals_lambda_e", 1e-12, n="2..8")
    for n in range(2, 9):
        model = geodesic_sphere(n)
        for p in range(1, n // 2 + 1):
            value = bd.thm11_bound(model.B, p, 0.0).value
            sharp.add(value - p * (n - p + 1))
            sharp.add(value - model.spectrum["lambda_e"][p])
        for q in range(1, n):
            sharp.add(model.spectrum["lambda"][q] - model.spectrum["lambda"][n - q])
    out.append(sharp.record())

    torus = clifford_torus(4, 2, 1.0)
    s = summarize(torus.B)
    cor = bd.cor12_bounds(torus.B, 2, 1.0)
    values = {
        "thm11": bd.thm11_bound(torus.B, 2, 1.0).value,
        "cor12_i": cor["i"].value,
        "cor12_ii": cor["ii"].value,
        "cor12_iii": cor["iii"].value,
        "thm15": bd.thm15_bound(4, 2, 1.0, 1.0, ric_min(torus.R), s.Hnorm2).value,
    }
    for name, v in values.items():
        out.append(check(f"clifford_4_2_1_{name}_is_zero", v, 1e-10, {"n": 4, "p": 2, "mu": 1.0}, v))
    out.append(check("clifford_4_2_1_alpha", s.B2 - bd.alpha_threshold(4, 2, 1.0, 0.0).value, 1e-10, value=s.B2))
    out.append(check("clifford_4_2_1_ejiri", bd.ejiri_threshold(4, 2, 1.0, 1.0, 0.0).value - ric_min(torus.R),
                     1e-10, value=ric_min(torus.R)))
    return out


SUITE_FUNCS: dict[str, Callable] = {
    "algebra": algebra_suite,
    "curvature": curvature_suite,
    "identities": identities_suite,
    "inequalities": inequalities_suite,
    "models": models_suite,
}


def run_suite(name: str, seed: int = 0, trials: int = 200, tol: float = 1e-9) -> list[CheckRecord]:
    """Run one suite (or ``"all"``) deterministically from ``seed``."""
    names = SUITES if name == "all" else (name,)
    records = []
    for suite in names:
        if suite not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {suite!r}")
        rng = np.random.default_rng([seed, SUITES.index(suite)])
        for r in SUITE_FUNCS[suite](rng, trials, tol):
            records.append(CheckRecord(f"{suite}.{r.name}", r.inputs, r.value, r.status, r.residual))
    return records
