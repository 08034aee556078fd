"""Second fundamental forms and the extrinsic quantities derived from them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .curvature import constant_curvature, gauss_intrinsic, weitzenboeck
from .eigen import jacobi_eigvalsh, stacked_opnorm
from .exterior import PForm, derivation_extend, interior, wedge

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SecondFundamentalForm:
    """Components ``h[a, i, j]`` of B in an orthonormal tangent/normal frame.

    A single n x n matrix is accepted for codimension one.
    """

    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        if h.ndim == 2:
            h = h[None]
        if h.ndim != 3 or h.shape[1] != h.shape[2]:
            raise ValueError(f"h must have shape (m, n, n), got {h.shape}")
        tol = SYMMETRY_TOL * max(1.0, float(np.max(np.abs(h), initial=0.0)))
        if np.max(np.abs(h - h.transpose(0, 2, 1)), initial=0.0) > tol:
            raise ValueError("second fundamental form is not symmetric in (i, j)")
        h.flags.writeable = False
        object.__setattr__(self, "h", h)

    @property
    def m(self) -> int:
        return self.h.shape[0]

    @property
    def n(self) -> int:
        return self.h.shape[1]

    @classmethod
    def umbilic(cls, n: int, k: float = 1.0, m: int = 1) -> SecondFundamentalForm:
        h = np.zeros((m, n, n))
        h[0] = k * np.eye(n)
        return cls(h)

    @classmethod
    def diagonal(cls, principal: Sequence[float]) -> SecondFundamentalForm:
        return cls(np.diag(np.asarray(principal, dtype=float)))

    def mean_curvature(self) -> np.ndarray:
        return np.trace(self.h, axis1=1, axis2=2) / self.n

    def traceless(self) -> np.ndarray:
        """``A^a - H^a Id`` for each normal direction."""
        return self.h - self.mean_curvature()[:, None, None] * np.eye(self.n)


@dataclass(frozen=True)
class ExtrinsicSummary:
    H: np.ndarray
    Hnorm2: float
    B2: float
    Bring2: float
    principal: tuple[np.ndarray, ...]

    @property
    def Hnorm(self) -> float:
        return float(np.sqrt(self.Hnorm2))

    @property
    def Bring(self) -> float:
        return float(np.sqrt(self.Bring2))


def summarize(B: SecondFundamentalForm) -> ExtrinsicSummary:
    H = B.mean_curvature()
    return ExtrinsicSummary(
        H=H,
        Hnorm2=float(H @ H),
        B2=float(np.sum(B.h**2)),
        Bring2=float(np.sum(B.traceless() ** 2)),
        principal=tuple(jacobi_eigvalsh(a) for a in B.h),
    )


def shape_extension(B: SecondFundamentalForm, p: int):
    """Shape operators and their traceless parts extended to Lambda^p.

    Returns two lists of m operators, ``S^a`` and ``S^a - p H^a Id``.
    """
    S = [derivation_extend(a, p) for a in B.h]
    S_ring = [derivation_extend(a, p) for a in B.traceless()]
    return S, S_ring


def shape_apply(A: np.ndarray, omega: PForm) -> PForm:
    """``sum_i eta^i ^ i_{A e_i} omega`` evaluated with wedge and interior."""
    n = omega.n
    out = PForm.zero(n, omega.p)
    if omega.p == 0:
        return out
    for i in range(n):
        col = np.asarray(A, dtype=float)[:, i]
        if not np.any(col):
            continue
        out = out + wedge(PForm.basis_form(n, [i]), interior(col, omega))
    return out


def gap_identity_residual(c: float, B: SecondFundamentalForm, p: int, omega: PForm) -> float:
    """Residual of the Gauss-equation gap identity for a constant-curvature ambient.

    ``<W w, w> - <Wbar w, w> + |S(w) - (n/2) H w|^2 - (n^2/4)|H|^2 |w|^2``,
    where W is built from the intrinsic curvature and the pulled-back
    ambient operator is ``p(n-p)c Id``. Vanishes identically.
    """
    n = B.n
    ambient = constant_curvature(n, c)
    W = weitzenboeck(gauss_intrinsic(ambient, B), p)
    Wbar = weitzenboeck(ambient, p)
    w = omega.coeffs
    H = B.mean_curvature()
    S, _ = shape_extension(B, p)
    mismatch = sum(float(np.sum((s.matrix @ w - 0.5 * n * Ha * w) ** 2)) for s, Ha in zip(S, H))
    return float(
        w @ W.matrix @ w - w @ Wbar.matrix @ w + mismatch - 0.25 * n * n * float(H @ H) * float(w @ w)
    )


def ls_quantity(B: SecondFundamentalForm, p: int, order: Sequence[int] | None = None) -> float:
    """Lawson-Simons quantity for the frame split ``order[:p] | order[p:]``.

    ``sum_{i in first} sum_{j in rest} sum_a (2 (h^a_ij)^2 - h^a_ii h^a_jj)``.
    """
    n = B.n
    if not 1 <= p <= n - 1:
        raise ValueError(f"p must lie in 1..{n - 1}")
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of range(n)")
    first, rest = order[:p], order[p:]
    h = B.h
    cross = h[:, first][:, :, rest]
    diag = np.diagonal(h, axis1=1, axis2=2)
    return float(
        2.0 * np.sum(cross**2) - np.sum(diag[:, first].sum(axis=1) * diag[:, rest].sum(axis=1))
    )


def p_curvature_beta(principal: Sequence[float], p: int) -> float:
    """Normalised minimum of K_a K_{a*} over all p-subsets a of principal curvatures."""
    k = np.asarray(principal, dtype=float)
    n = k.size
    if not 1 <= p <= n - 1:
        raise ValueError(f"p must lie in 1..{n - 1}")
    total = k.sum()
    best = min(
        (s := k[list(alpha)].sum()) * (total - s) for alpha in combinations(range(n), p)
    )
    return float(best / (p * (n - p)))


def gamma_p(B: SecondFundamentalForm, p: int) -> float:
    """Pointwise ``-|B0|^2/n - (n-2p)|H||B0|/sqrt(np(n-p)) + |H|^2``."""
    n = B.n
    if not 1 <= p <= n - 1:
        raise ValueError(f"p must lie in 1..{n - 1}")
    s = summarize(B)
    return gamma_from_norms(n, p, s.Hnorm2, s.Bring2)


def gamma_from_norms(n: int, p: int, Hnorm2: float, Bring2: float) -> float:
    return float(
        -Bring2 / n
        - (n - 2 * p) * np.sqrt(Hnorm2) * np.sqrt(Bring2) / np.sqrt(n * p * (n - p))
        + Hnorm2
    )


def traceless_opnorm_sq(B: SecondFundamentalForm, p: int) -> float:
    """Squared operator norm of ``w -> (S0^1 w, ..., S0^m w)`` on Lambda^p."""
    _, S_ring = shape_extension(B, p)
    return stacked_opnorm(S_ring)


def traceless_opnorm_bound(B: SecondFundamentalForm, p: int) -> float:
    """``p(n-p)/n |B0|^2``, the bound on :func:`traceless_opnorm_sq`."""
    n = B.n
    return p * (n - p) / n * summarize(B).Bring2

