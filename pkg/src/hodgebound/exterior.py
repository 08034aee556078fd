"""Multilinear algebra on the exterior algebra of R^n in an orthonormal frame.

Basis p-forms are indexed by p-subsets of ``{0, ..., n-1}`` stored as
bitmasks (bit ``i`` stands for the covector eta^{i+1}). Within each degree
the basis is ordered lexicographically on increasing index tuples, so for
``n = 4, p = 2`` the order is 01, 02, 03, 12, 13, 23.

All signs come from transposition counts between bitmasks. The interior
product is defined as the adjoint of left exterior multiplication, which
makes ``<eta^k ^ w, t> = <w, i_{e_k} t>`` hold exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

MAX_FRAME_DIM = 12


def _check_dim(n: int) -> None:
    if n < 0:
        raise ValueError(f"frame dimension must be non-negative, got {n}")
    if n > MAX_FRAME_DIM:
        raise ValueError(
            f"frame dimension {n} exceeds MAX_FRAME_DIM={MAX_FRAME_DIM}; "
            "raise hodgebound.exterior.MAX_FRAME_DIM to allow it"
        )


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def mask_from_indices(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        if bits >> i & 1:
            raise ValueError(f"repeated index {i}")
        bits |= 1 << i
    return bits


def indices_from_mask(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def rank_subset(bits: int, n: int, p: int | None = None) -> int:
    """Position of a subset in the lexicographic basis of its degree.

    Uses the combinatorial number system, O(n) work.

    >>> rank_subset(0b0011, 4), rank_subset(0b1100, 4)
    (0, 5)
    """
    idx = indices_from_mask(bits)
    k = len(idx)
    if p is not None and k != p:
        raise ValueError(f"subset {idx} has cardinality {k}, expected {p}")
    if idx and idx[-1] >= n:
        raise ValueError(f"subset {idx} not contained in range({n})")
    r = 0
    prev = -1
    for pos, c in enumerate(idx):
        remaining = k - pos - 1
        for j in range(prev + 1, c):
            r += comb(n - 1 - j, remaining)
        prev = c
    return r


def unrank_subset(r: int, n: int, p: int) -> int:
    total = comb(n, p)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range for C({n},{p})={total}")
    bits = 0
    j = 0
    for pos in range(p):
        remaining = p - pos - 1
        while True:
            block = comb(n - 1 - j, remaining)
            if r < block:
                break
            r -= block
            j += 1
        bits |= 1 << j
        j += 1
    return bits


@lru_cache(maxsize=None)
def basis(n: int, p: int) -> tuple[int, ...]:
    """Bitmasks of all p-subsets of range(n) in basis order."""
    _check_dim(n)
    if not 0 <= p <= n:
        return ()
    return tuple(unrank_subset(r, n, p) for r in range(comb(n, p)))


@lru_cache(maxsize=None)
def _index(n: int, p: int) -> dict[int, int]:
    return {b: r for r, b in enumerate(basis(n, p))}


def dim(n: int, p: int) -> int:
    return comb(n, p) if 0 <= p <= n else 0


def _sign_below(bits: int, k: int) -> int:
    # (-1)^{#elements of bits smaller than k}
    return -1 if popcount(bits & ((1 << k) - 1)) & 1 else 1


@dataclass(frozen=True, eq=False)
class PForm:
    """A p-form on R^n given by its coefficients in the lexicographic basis."""

    n: int
    p: int
    coeffs: np.ndarray

    def __post_init__(self):
        _check_dim(self.n)
        if not 0 <= self.p <= self.n:
            raise ValueError(f"degree {self.p} outside 0..{self.n}")
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.shape[0] != dim(self.n, self.p):
            raise ValueError(
                f"expected {dim(self.n, self.p)} coefficients for degree {self.p} "
                f"on R^{self.n}, got {c.shape[0]}"
            )
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n: int, p: int) -> PForm:
        return cls(n, p, np.zeros(dim(n, p)))

    @classmethod
    def basis_form(cls, n: int, indices: Sequence[int]) -> PForm:
        """eta^{i1} ^ ... ^ eta^{ip} for 0-based, strictly increasing indices."""
        if list(indices) != sorted(set(indices)):
            raise ValueError("indices must be strictly increasing")
        p = len(indices)
        c = np.zeros(dim(n, p))
        c[rank_subset(mask_from_indices(indices), n, p)] = 1.0
        return cls(n, p, c)

    def coefficient(self, indices: Sequence[int]) -> float:
        return float(self.coeffs[rank_subset(mask_from_indices(indices), self.n, self.p)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def _same_space(self, other: PForm) -> None:
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError(
                f"degree/dimension mismatch: ({self.n},{self.p}) vs ({other.n},{other.p})"
            )

    def __add__(self, other: PForm) -> PForm:
        self._same_space(other)
        return PForm(self.n, self.p, self.coeffs + other.coeffs)

    def __sub__(self, other: PForm) -> PForm:
        self._same_space(other)
        return PForm(self.n, self.p, self.coeffs - other.coeffs)

    def __neg__(self) -> PForm:
        return PForm(self.n, self.p, -self.coeffs)

    def __mul__(self, scalar: float) -> PForm:
        return PForm(self.n, self.p, float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = [
            f"{c:+.6g}*e{''.join(str(i + 1) for i in indices_from_mask(b))}"
            for b, c in zip(basis(self.n, self.p), self.coeffs)
            if c != 0.0
        ]
        return f"PForm(n={self.n}, p={self.p}, {' '.join(terms) or '0'})"


@dataclass(frozen=True, eq=False)
class OperatorOnForms:
    """Dense matrix acting on Lambda^p R^n in the lexicographic basis."""

    n: int
    p: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        d = dim(self.n, self.p)
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __call__(self, omega: PForm) -> PForm:
        if (omega.n, omega.p) != (self.n, self.p):
            raise ValueError("operator and form live on different spaces")
        return PForm(self.n, self.p, self.matrix @ omega.coeffs)

    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T), initial=0.0))


def form_inner(omega: PForm, tau: PForm) -> float:
    omega._same_space(tau)
    return float(omega.coeffs @ tau.coeffs)


@lru_cache(maxsize=None)
def exterior_matrix(n: int, p: int, k: int) -> np.ndarray:
    """Matrix of omega -> eta^k ^ omega from Lambda^p to Lambda^{p+1}."""
    rows, cols = dim(n, p + 1), dim(n, p)
    m = np.zeros((rows, cols))
    if p < n:
        target = _index(n, p + 1)
        for r, b in enumerate(basis(n, p)):
            if not b >> k & 1:
                m[target[b | 1 << k], r] = _sign_below(b, k)
    m.flags.writeable = False
    return m


def interior_matrix(n: int, p: int, k: int) -> np.ndarray:
    """Matrix of i_{e_k} from Lambda^p to Lambda^{p-1} (adjoint of eta^k ^)."""
    if p == 0:
        return np.zeros((1, 1))
    return exterior_matrix(n, p - 1, k).T


@lru_cache(maxsize=None)
def _wedge_table(n: int, p: int, q: int):
    bp, bq = basis(n, p), basis(n, q)
    target = _index(n, p + q)
    i_idx, j_idx, k_idx, signs = [], [], [], []
    for i, a in enumerate(bp):
        for j, b in enumerate(bq):
            if a & b:
                continue
            # transpositions needed to sort (a, b): pairs x in a, y in b with x > y
            inversions = sum(popcount(a >> (y + 1)) for y in indices_from_mask(b))
            i_idx.append(i)
            j_idx.append(j)
            k_idx.append(target[a | b])
            signs.append(-1.0 if inversions & 1 else 1.0)
    return (np.array(i_idx, dtype=int), np.array(j_idx, dtype=int),
            np.array(k_idx, dtype=int), np.array(signs))


def wedge(omega: PForm, eta: PForm) -> PForm:
    """Exterior product. Overflowing degree n yields the zero n-form."""
    if omega.n != eta.n:
        raise ValueError("forms live on different frames")
    n, deg = omega.n, omega.p + eta.p
    if deg > n:
        return PForm.zero(n, n)
    i, j, k, s = _wedge_table(n, omega.p, eta.p)
    out = np.zeros(dim(n, deg))
    np.add.at(out, k, s * omega.coeffs[i] * eta.coeffs[j])
    return PForm(n, deg, out)


def interior(x: int | Sequence[float] | np.ndarray, omega: PForm) -> PForm:
    """Interior product with a frame vector (int index) or a vector in R^n.

    Returns the zero 0-form when ``omega`` has degree 0.
    """
    n, p = omega.n, omega.p
    if p == 0:
        return PForm.zero(n, 0)
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < n:
            raise ValueError(f"frame index {x} outside range({n})")
        return PForm(n, p - 1, interior_matrix(n, p, int(x)) @ omega.coeffs)
    vec = np.asarray(x, dtype=float)
    if vec.shape != (n,):
        raise ValueError(f"vector must have shape ({n},)")
    out = np.zeros(dim(n, p - 1))
    for k in np.flatnonzero(vec):
        out += vec[k] * (interior_matrix(n, p, int(k)) @ omega.coeffs)
    return PForm(n, p - 1, out)


@lru_cache(maxsize=None)
def hodge_star_matrix(n: int, p: int) -> np.ndarray:
    """Matrix of the Hodge star Lambda^p -> Lambda^{n-p}.

    ``*eta^a = sign * eta^{a*}`` where sign is the parity of the shuffle
    ``(a, a*)``, so that ``eta^a ^ *eta^a`` is the volume form.
    """
    full = (1 << n) - 1
    target = _index(n, n - p)
    m = np.zeros((dim(n, n - p), dim(n, p)))
    for r, a in enumerate(basis(n, p)):
        c = full ^ a
        inversions = sum(popcount(a >> (y + 1)) for y in indices_from_mask(c))
        m[target[c], r] = -1.0 if inversions & 1 else 1.0
    m.flags.writeable = False
    return m


def hodge_star(omega: PForm) -> PForm:
    return PForm(omega.n, omega.n - omega.p, hodge_star_matrix(omega.n, omega.p) @ omega.coeffs)


@lru_cache(maxsize=None)
def transitions(n: int, p: int):
    """Sparse description of every operator eta^a ^ i_{e_b} on Lambda^p.

    Returns arrays ``(src, dst, a, b, sign)`` with
    ``eta^a ^ i_{e_b} (basis[src]) = sign * basis[dst]``.
    For fixed ``(a, b)`` the map src -> dst is injective.
    """
    index = _index(n, p)
    src, dst, aa, bb, sg = [], [], [], [], []
    for r, alpha in enumerate(basis(n, p)):
        for b in indices_from_mask(alpha):
            rest = alpha & ~(1 << b)
            s1 = _sign_below(alpha, b)
            for a in range(n):
                if rest >> a & 1:
                    continue
                src.append(r)
                dst.append(index[rest | 1 << a])
                aa.append(a)
                bb.append(b)
                sg.append(float(s1 * _sign_below(rest, a)))
    arrays = tuple(np.array(v, dtype=int) for v in (src, dst, aa, bb)) + (np.array(sg),)
    for arr in arrays:
        arr.flags.writeable = False
    return arrays


def derivation_matrix(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    src, dst, ia, ib, sign = transitions(n, p)
    out = np.zeros((dim(n, p), dim(n, p)))
    np.add.at(out, (dst, src), a[ia, ib] * sign)
    return out


def derivation_extend(a: np.ndarray, p: int) -> OperatorOnForms:
    """Extend an endomorphism of R^n to Lambda^p as a derivation.

    The result is ``sum_ij A_ij eta^i ^ i_{e_j}``: it acts on Lambda^1 by
    the matrix ``A`` itself and obeys the Leibniz rule over wedge, so the
    identity extends to ``p * Id`` and ``A = diag(d)`` to eigenvalue sums.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"endomorphism must be square, got shape {a.shape}")
    n = a.shape[0]
    _check_dim(n)
    if not 0 <= p <= n:
        raise ValueError(f"degree {p} outside 0..{n}")
    return OperatorOnForms(n, p, derivation_matrix(a, p))
