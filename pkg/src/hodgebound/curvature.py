"""Algebraic curvature tensors and the Weitzenbock operators they induce.

Conventions: ``R[i, j, k, l]`` is the (0,4) tensor with ``R[i, j, i, j]``
the sectional curvature of the (i, j) plane, so the round sphere has
``R_1212 = +1``. Ricci is ``Ric_ij = sum_k R_ikjk``.

The Weitzenbock operator on p-forms is assembled as

    W = sum_ijkl R_ijkl (eta^j ^ i_{e_i}) o (eta^k ^ i_{e_l}),

an index order chosen so that ``W`` on 1-forms is exactly Ricci, positive
on the sphere. A second, independent route evaluates the quadratic form
through the curvature operator on Lambda^2 and the ``ad`` action of 2-planes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .eigen import jacobi_eigh, jacobi_eigvalsh
from .exterior import (
    OperatorOnForms,
    PForm,
    derivation_matrix,
    dim,
    mask_from_indices,
    transitions,
)

SYMMETRY_TOL = 1e-12


class CurvatureSymmetryError(ValueError):
    """The 4-tensor violates an algebraic curvature symmetry."""


def symmetry_defects(r: np.ndarray) -> dict[str, float]:
    r = np.asarray(r, dtype=float)
    return {
        "antisym_12": float(np.max(np.abs(r + r.transpose(1, 0, 2, 3)), initial=0.0)),
        "antisym_34": float(np.max(np.abs(r + r.transpose(0, 1, 3, 2)), initial=0.0)),
        "pair": float(np.max(np.abs(r - r.transpose(2, 3, 0, 1)), initial=0.0)),
        "bianchi": float(np.max(np.abs(
            r + r.transpose(0, 2, 3, 1) + r.transpose(0, 3, 1, 2)
        ), initial=0.0)),
    }


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Dense n^4 algebraic curvature tensor, validated on construction.

    Set ``check_bianchi=False`` to admit synthetic tensors that only carry
    the pair and antisymmetry symmetries.
    """

    R: np.ndarray
    check_bianchi: bool = True

    def __post_init__(self):
        r = np.array(self.R, dtype=float)
        if r.ndim != 4 or len(set(r.shape)) != 1:
            raise ValueError(f"curvature tensor must be n x n x n x n, got {r.shape}")
        tol = SYMMETRY_TOL * max(1.0, float(np.max(np.abs(r), initial=0.0)))
        for name, defect in symmetry_defects(r).items():
            if name == "bianchi" and not self.check_bianchi:
                continue
            if defect > tol:
                raise CurvatureSymmetryError(f"{name} symmetry violated by {defect:.3e}")
        r.flags.writeable = False
        object.__setattr__(self, "R", r)

    @property
    def n(self) -> int:
        return self.R.shape[0]

    def sectional(self, i: int, j: int) -> float:
        return float(self.R[i, j, i, j])


@dataclass(frozen=True, eq=False)
class CurvatureOperatorMatrix:
    """Curvature operator on Lambda^2 in the basis e_i ^ e_j, i < j.

    The basis is treated as orthonormal, so constant curvature ``c`` has
    spectrum ``{c}``.
    """

    n: int
    matrix: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return jacobi_eigvalsh(self.matrix)

    @property
    def min_eigenvalue(self) -> float:
        w = self.eigenvalues
        return float(w[0]) if w.size else 0.0


def constant_curvature(n: int, c: float) -> CurvatureTensor:
    if n < 2:
        raise ValueError("constant curvature needs n >= 2")
    d = np.eye(n)
    r = c * (np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d))
    return CurvatureTensor(r)


def kulkarni_nomizu(h: np.ndarray, k: np.ndarray | None = None) -> np.ndarray:
    """``h_ik k_jl - h_il k_jk`` (half the usual Kulkarni-Nomizu product when h = k)."""
    k = h if k is None else k
    return np.einsum("ik,jl->ijkl", h, k) - np.einsum("il,jk->ijkl", h, k)


def gauss_intrinsic(ambient: CurvatureTensor, B) -> CurvatureTensor:
    """Intrinsic curvature of a submanifold from the Gauss equation.

    ``R_ijkl = Rbar_ijkl + sum_a (h^a_ik h^a_jl - h^a_il h^a_jk)`` where
    ``ambient`` holds Rbar restricted to tangent indices.
    """
    h = np.asarray(B.h, dtype=float)
    if ambient.n != h.shape[1]:
        raise ValueError(f"ambient tensor has n={ambient.n}, second fundamental form n={h.shape[1]}")
    r = ambient.R.copy()
    for ha in h:
        r += kulkarni_nomizu(ha)
    return CurvatureTensor(r, check_bianchi=ambient.check_bianchi)


def ricci(R: CurvatureTensor) -> np.ndarray:
    return np.einsum("ikjk->ij", R.R)


def scalar_curvature(R: CurvatureTensor) -> float:
    return float(np.trace(ricci(R)))


def p_weak_ricci(R: CurvatureTensor, indices) -> float:
    """Sum of Ric_ii over a p-subset of frame indices (0-based)."""
    idx = list(indices)
    mask_from_indices(idx)  # rejects repeats
    ric = ricci(R)
    return float(sum(ric[i, i] for i in idx))


def ric_min(R: CurvatureTensor) -> float:
    """Smallest Ricci curvature over unit vectors (least eigenvalue of Ric)."""
    return float(jacobi_eigvalsh(ricci(R))[0])


def ric_p(R: CurvatureTensor, p: int) -> float:
    """Minimum of the p-th weak Ricci curvature over orthonormal p-frames.

    ``sum_{i<=p} Ric(e_i, e_i)`` is a partial trace of Ric, minimised over
    p-planes by the span of its p lowest eigenvectors (Ky Fan), so the
    minimum is the sum of the p smallest eigenvalues.
    """
    if not 1 <= p <= R.n:
        raise ValueError(f"p must lie in 1..{R.n}")
    return float(np.sum(jacobi_eigvalsh(ricci(R))[:p]))


def weitzenboeck(R: CurvatureTensor, p: int) -> OperatorOnForms:
    """Weitzenbock operator on Lambda^p by composing eta ^ iota operators."""
    n = R.n
    if not 0 <= p <= n:
        raise ValueError(f"degree {p} outside 0..{n}")
    d = dim(n, p)
    out = np.zeros((d, d))
    src, dst, ia, ib, sign = transitions(n, p)
    for i in range(n):
        for j in range(n):
            inner = R.R[i, j]
            if not np.any(inner):
                continue
            # right factor: sum_kl R_ijkl eta^k ^ i_{e_l}
            right = derivation_matrix(inner, p)
            # left factor eta^j ^ i_{e_i} is a signed partial permutation
            sel = (ia == j) & (ib == i)
            out[dst[sel]] += sign[sel][:, None] * right[src[sel]]
    return OperatorOnForms(n, p, out)


def rotation_generator(n: int, i: int, j: int) -> np.ndarray:
    """Elementary skew endomorphism of the (i, j) plane: e_j -> e_i, e_i -> -e_j."""
    x = np.zeros((n, n))
    x[i, j] = 1.0
    x[j, i] = -1.0
    return x


def ad_plane(n: int, p: int, i: int, j: int) -> np.ndarray:
    """Matrix of ad_{e_i ^ e_j} on Lambda^p.

    Normalised as the Clifford commutator ``[e_i e_j, .]``, which acts as
    twice the derivation extension of the plane rotation. With this
    normalisation the quarter-weighted sum over an orthonormal basis of
    Lambda^2 reproduces the Weitzenbock quadratic form.
    """
    return 2.0 * derivation_matrix(rotation_generator(n, i, j), p)


def curvature_operator(R: CurvatureTensor) -> CurvatureOperatorMatrix:
    pairs = list(combinations(range(R.n), 2))
    m = np.array([[R.R[i, j, k, l] for (k, l) in pairs] for (i, j) in pairs]).reshape(
        len(pairs), len(pairs)
    )
    return CurvatureOperatorMatrix(R.n, m)


def weitzenboeck_quadratic(R: CurvatureTensor, p: int, omega: PForm) -> float:
    """``<W omega, omega>`` via ``1/4 sum_IJ <Rc(t_I), t_J> <ad_I omega, ad_J omega>``."""
    if (omega.n, omega.p) != (R.n, p):
        raise ValueError("form does not match (n, p)")
    n = R.n
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return 0.0
    rc = curvature_operator(R).matrix
    images = np.array([ad_plane(n, p, i, j) @ omega.coeffs for (i, j) in pairs])
    gram = images @ images.T
    return float(0.25 * np.sum(rc * gram))


def weitzenboeck_min_eigenvalue(R: CurvatureTensor, p: int) -> float:
    w, _ = jacobi_eigh(weitzenboeck(R, p).matrix)
    return float(w[0])
