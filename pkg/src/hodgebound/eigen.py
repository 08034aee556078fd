"""Symmetric eigensolver (cyclic Jacobi) and the operator norms built on it."""
from __future__ import annotations

from typing import Sequence

import numpy as np

SYMMETRY_TOL = 1e-10


class ConvergenceError(ArithmeticError):
    """Raised when Jacobi sweeps fail to drive the off-diagonal mass to zero."""


def _as_symmetric(a, name: str = "matrix") -> np.ndarray:
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL * scale:
        raise ValueError(f"{name} is not symmetric")
    return 0.5 * (a + a.T)


def _off_norm(a: np.ndarray) -> float:
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # circle-method schedule: m - 1 rounds of m/2 disjoint pairs covering all pairs
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p = np.array([players[i] for i in range(m // 2)])
        q = np.array([players[m - 1 - i] for i in range(m // 2)])
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        rounds.append((lo, hi))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs so that a round is one vectorized update. Iteration stops
    once the off-diagonal Frobenius norm drops below ``tol * max(1, ||A||_F)``.

    Returns:
        (eigenvalues ascending, eigenvectors as columns)

    Raises:
        ConvergenceError: if ``max_sweeps`` sweeps do not converge.
    """
    a = _as_symmetric(a)
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return np.diag(a).copy(), v
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    m = n + (n % 2)
    rounds = [(p[q < n], q[q < n]) for p, q in _round_robin(m)]

    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off < threshold:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t[safe == 0.0] = 1.0
            t[big] = 0.5 / theta[big]
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cols_p * c - cols_q * s
            a[:, q] = cols_p * s + cols_q * c
            rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
            a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    else:
        off = _off_norm(a)
        if off >= threshold:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})"
            )
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def jacobi_eigvalsh(a, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    return jacobi_eigh(a, tol, max_sweeps)[0]


def spectral_norm(a) -> float:
    """Largest absolute eigenvalue of a symmetric matrix."""
    w = jacobi_eigvalsh(a)
    return float(np.max(np.abs(w), initial=0.0))


def stacked_opnorm(ops: Sequence) -> float:
    """Squared operator norm of ``x -> (A_1 x, ..., A_m x)``.

    Computed as the largest eigenvalue of ``sum A_i^T A_i``; this is the
    square of the norm, not the norm. Accepts arrays or objects with a
    ``matrix`` attribute.
    """
    mats = [np.asarray(getattr(o, "matrix", o), dtype=float) for o in ops]
    if not mats:
        raise ValueError("need at least one operator")
    gram = sum(m.T @ m for m in mats)
    return float(max(0.0, jacobi_eigvalsh(gram)[-1]))
