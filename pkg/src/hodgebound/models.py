"""Model submanifolds with closed-form curvature and spectra, and the sharpness suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .bounds import alpha_threshold, ejiri_threshold, thm11_bound
from .curvature import CurvatureTensor, constant_curvature, gauss_intrinsic, ric_min, ricci
from .report import NOT_APPLICABLE, CheckRecord, check
from .submanifold import SecondFundamentalForm, summarize

GEODESIC_SPHERE = "geodesic-sphere"
CLIFFORD_TORUS = "clifford-torus"


@dataclass(frozen=True, eq=False)
class ModelSpace:
    """A submanifold with its second fundamental form and known closed forms.

    ``R`` is the intrinsic curvature from the Gauss equation; ``closed_form``
    holds the independently stated formulas (mean curvature, norms, sectional
    and Ricci tables, closed-form curvature tensor) that :func:`consistency`
    compares against. ``spectrum`` maps ``"lambda"``, ``"lambda_e"`` and
    ``"lambda_ce"`` to ``{degree: first eigenvalue}`` where known.
    """

    kind: str
    params: dict[str, Any]
    ambient_c: float
    B: SecondFundamentalForm
    R: CurvatureTensor
    betti: frozenset[int]
    spectrum: dict[str, dict[int, float]]
    closed_form: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.B.n


def clifford_torus(n: int, p_split: int, mu: float) -> ModelSpace:
    """``S^p(mu/sqrt(1+mu^2)) x S^{n-p}(1/sqrt(1+mu^2))`` as a hypersurface of the unit sphere."""
    if not 1 <= p_split <= n - 1:
        raise ValueError(f"p_split must lie in 1..{n - 1}")
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    p = p_split
    principal = np.array([1.0 / mu] * p + [-mu] * (n - p))
    B = SecondFundamentalForm.diagonal(principal)
    R = gauss_intrinsic(constant_curvature(n, 1.0), B)

    sectional = np.zeros((n, n))
    first = np.arange(n) < p
    sectional[np.ix_(first, first)] = 1 + mu**-2
    sectional[np.ix_(~first, ~first)] = 1 + mu**2
    np.fill_diagonal(sectional, 0.0)
    d = np.eye(n)
    # diagonal B makes R_ijkl = K_ij (d_ik d_jl - d_il d_jk)
    r_closed = np.einsum("ij,ik,jl->ijkl", sectional, d, d) - np.einsum("ij,il,jk->ijkl", sectional, d, d)
    ric_diag = np.where(first, (p - 1) * (1 + mu**-2), (n - p - 1) * (1 + mu**2))

    closed = {
        "H": (p / mu - (n - p) * mu) / n,
        "B2": p * mu**-2 + (n - p) * mu**2,
        "Bring2": p * (n - p) / n * (1 / mu + mu) ** 2,
        "sectional": sectional,
        "R": r_closed,
        "ricci_diag": ric_diag,
    }
    betti = frozenset({p, n - p})
    spectrum = {"lambda": {p: 0.0, n - p: 0.0}, "lambda_e": {}, "lambda_ce": {}}
    return ModelSpace(
        CLIFFORD_TORUS, {"n": n, "p_split": p, "mu": mu}, 1.0, B, R, betti, spectrum, closed
    )


def geodesic_sphere(n: int, m: int = 1, ambient_c: float = 0.0, Hnorm: float = 1.0) -> ModelSpace:
    """Totally umbilical sphere with ``B = H g`` along the first normal.

    Intrinsic curvature is the constant ``c + |H|^2``.
    """
    kappa = ambient_c + Hnorm**2
    if not kappa > 0:
        raise ValueError(f"intrinsic curvature c + |H|^2 = {kappa} must be positive")
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    B = SecondFundamentalForm.umbilic(n, Hnorm, m)
    R = gauss_intrinsic(constant_curvature(n, ambient_c), B)
    lam_e = {q: q * (n - q + 1) * kappa for q in range(1, n + 1)}
    lam_ce = {q: (q + 1) * (n - q) * kappa for q in range(0, n)}
    lam = {q: min(lam_e[q], lam_ce[q]) for q in range(1, n)}
    closed = {"H": Hnorm, "B2": n * Hnorm**2, "Bring2": 0.0, "R": constant_curvature(n, kappa).R,
              "ricci_diag": np.full(n, (n - 1) * kappa)}
    return ModelSpace(
        GEODESIC_SPHERE,
        {"n": n, "m": m, "c": ambient_c, "Hnorm": Hnorm},
        ambient_c,
        B,
        R,
        frozenset(),
        {"lambda": lam, "lambda_e": lam_e, "lambda_ce": lam_ce},
        closed,
    )


def consistency(model: ModelSpace) -> dict[str, float]:
    """Residuals between Gauss-equation curvature and the stored closed forms."""
    s = summarize(model.B)
    closed = model.closed_form
    out = {
        "H": abs(s.Hnorm - abs(closed["H"])),
        "B2": abs(s.B2 - closed["B2"]),
        "Bring2": abs(s.Bring2 - closed["Bring2"]),
        "B_split": abs(s.B2 - s.Bring2 - model.n * s.Hnorm2),
        "R": float(np.max(np.abs(model.R.R - closed["R"]))),
        "ricci": float(np.max(np.abs(np.diag(ricci(model.R)) - closed["ricci_diag"]))),
    }
    if model.kind == CLIFFORD_TORUS:
        out["H_signed"] = abs(float(s.H[0]) - closed["H"])
    return out


def mu_star(n: int, p: int) -> float | None:
    """Radius parameter making the torus Einstein with ``Ric = (n-2) g``; None when undefined."""
    if not 1 < p < n - 1:
        return None
    return float(np.sqrt((p - 1) / (n - p - 1)))


DEFAULT_MU_GRID = (0.25, 0.5, 1 / np.sqrt(3), 1.0, np.sqrt(3), 2.0, 4.0)


def default_grid(ns: Iterable[int] = range(3, 11), mus: Iterable[float] = DEFAULT_MU_GRID):
    """(n, p, mu) points: every split of each n, the mu grid, plus mu* where defined."""
    mus = tuple(mus)
    for n in ns:
        for p in range(1, n):
            star = mu_star(n, p)
            for mu in mus + ((star,) if star is not None else ()):
                yield n, p, float(mu)


def sharpness_checks(n: int, p: int, mu: float, tol: float = 1e-9) -> list[CheckRecord]:
    """Every sharpness check for one Clifford torus.

    (a) closed forms vs Gauss equation; (b) ``|B|^2 = alpha`` when
    ``(n-2p)(p/mu - (n-p)mu) <= 0``; (c) the extrinsic bound equals the known
    ``lambda = 0`` in that regime and is never positive; (d) Ricci equals the
    Ejiri threshold at mu* and, for p in {1, n-1}, for every mu.
    """
    model = clifford_torus(n, p, mu)
    s = summarize(model.B)
    point = {"n": n, "p": p, "mu": mu}
    records = []
    residuals = consistency(model)
    records.append(check("closed_forms", max(residuals.values()), tol, point))

    regime = (n - 2 * p) * (p / mu - (n - p) * mu) <= 0
    if regime:
        alpha = alpha_threshold(n, p, 1.0, s.Hnorm).value
        records.append(check("alpha_equality", s.B2 - alpha, tol, point, value=s.B2))
    else:
        records.append(CheckRecord("alpha_equality", point, None, NOT_APPLICABLE))

    bound = thm11_bound(model.B, p, 1.0).value
    if regime and 2 * p <= n:
        records.append(check("thm11_equals_lambda", bound - 0.0, tol, point, value=bound))
    else:
        status = "pass" if bound <= tol else "fail"
        records.append(CheckRecord("thm11_nonpositive", point, bound, status, max(bound, 0.0)))

    ricmin = ric_min(model.R)
    threshold = ejiri_threshold(n, p, 1.0, 1.0, s.Hnorm2).value
    star = mu_star(n, p)
    if p in (1, n - 1):
        records.append(check("ejiri_identity_p1", ricmin - threshold, tol, point, value=ricmin))
    elif star is not None and abs(mu - star) <= 1e-15 * max(1.0, star):
        records.append(check("ejiri_equality_mu_star", ricmin - threshold, tol, point, value=ricmin))
        records.append(check("einstein_mu_star", float(np.max(np.abs(ricci(model.R) - (n - 2) * np.eye(n)))),
                             tol, point))
    else:
        records.append(CheckRecord("ejiri_equality_mu_star", point, None, NOT_APPLICABLE))
    return records


@dataclass(frozen=True)
class SharpnessReport:
    records: tuple[CheckRecord, ...]

    @property
    def violations(self) -> tuple[CheckRecord, ...]:
        return tuple(r for r in self.records if r.status == "fail")

    @property
    def ok(self) -> bool:
        return not self.violations


def sharpness_suite(grid: Iterable[tuple[int, int, float]] | None = None, tol: float = 1e-9) -> SharpnessReport:
    grid = default_grid() if grid is None else grid
    records: list[CheckRecord] = []
    for n, p, mu in grid:
        records.extend(sharpness_checks(n, p, mu, tol))
    return SharpnessReport(tuple(records))
