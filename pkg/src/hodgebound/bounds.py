"""Closed-form eigenvalue lower bounds, rigidity thresholds and operator-norm checks.

Every bound returns a :class:`BoundReport`. A theorem whose hypotheses fail
(degree out of range, negative curvature where c >= 0 is required, ...)
yields ``value=None`` with status ``not-applicable`` rather than raising.
Degrees ``p > n/2`` are evaluated at ``n - p`` (Poincare duality) and
flagged with ``dual=True``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, NamedTuple, Sequence

import numpy as np

from ._config import default_tol
from .eigen import spectral_norm, stacked_opnorm
from .exterior import PForm, derivation_extend
from .submanifold import SecondFundamentalForm, gamma_from_norms, shape_extension, summarize

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"

# sense: how a comparison target must relate to ``value`` for the report to hold
LOWER_BOUND = ">="  # target (an eigenvalue) is at least the bound
UPPER_LIMIT = "<="  # target (a curvature quantity) is at most the threshold
STRICT_LOWER = ">"  # target must exceed the threshold


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: dict[str, Any] = field(default_factory=dict)
    value: float | None = None
    satisfied: str | None = None
    sense: str = LOWER_BOUND
    dual: bool = False
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def compare(self, target: float, tol: float | None = None) -> BoundReport:
        """Return a copy whose ``satisfied`` field judges ``target`` against the value."""
        if self.value is None:
            return replace(self, satisfied=NOT_APPLICABLE)
        tol = default_tol() if tol is None else tol
        if self.sense == LOWER_BOUND:
            ok = target >= self.value - tol
        elif self.sense == UPPER_LIMIT:
            ok = target <= self.value + tol
        else:
            ok = target > self.value
        return replace(self, satisfied=HOLDS if ok else VIOLATED)

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "value": self.value,
            "satisfied": self.satisfied,
            "sense": self.sense,
            "dual": self.dual,
            "note": self.note,
        }


def _na(name: str, inputs: dict, note: str, sense: str = LOWER_BOUND) -> BoundReport:
    return BoundReport(name, inputs, None, NOT_APPLICABLE, sense, note=note)


def _fold_degree(n: int, p: int) -> tuple[int, bool] | None:
    if not 1 <= p <= n - 1:
        return None
    if 2 * p > n:
        return n - p, True
    return p, False


def gallot_meyer_bound(n: int, p: int, lam: float) -> BoundReport:
    """``p(n-p+1) Lambda``: eigenvalue bound when ``W^[p] >= p(n-p) Lambda``."""
    inputs = {"n": n, "p": p, "Lambda": lam}
    folded = _fold_degree(n, p)
    if folded is None:
        return _na("gallot_meyer", inputs, "requires 1 <= p <= n-1")
    q, dual = folded
    return BoundReport("gallot_meyer", inputs, q * (n - q + 1) * lam, dual=dual)


def thm11_bound(B: SecondFundamentalForm, p: int, c: float, umbilic_tol: float = 1e-14) -> BoundReport:
    """Extrinsic bound ``p(n-p+1)(c + gamma_p)`` for ambient ``i*Wbar >= p(n-p)c``.

    For totally umbilical B this is ``p(n-p+1)(c + |H|^2)``.
    """
    n = B.n
    inputs = {"n": n, "p": p, "c": c}
    folded = _fold_degree(n, p)
    if folded is None:
        return _na("thm11", inputs, "requires 1 <= p <= n-1")
    q, dual = folded
    s = summarize(B)
    if s.Bring2 <= umbilic_tol * max(1.0, s.B2):
        gamma, note = s.Hnorm2, "umbilic"
    else:
        gamma, note = gamma_from_norms(n, q, s.Hnorm2, s.Bring2), ""
    return BoundReport("thm11", inputs, q * (n - q + 1) * (c + gamma), dual=dual, note=note)


def cor12_bounds(B: SecondFundamentalForm, p: int, c: float, eps: float = 0.0) -> dict[str, BoundReport]:
    """The four weakened forms of the extrinsic bound, keyed ``i``, ``ii``, ``iii``, ``eps``.

    ``iii`` bounds the middle degree and only applies for even n with p = n/2.
    """
    n = B.n
    s = summarize(B)
    inputs = {"n": n, "p": p, "c": c}
    folded = _fold_degree(n, p)
    if folded is None:
        note = "requires 1 <= p <= n-1"
        return {k: _na(f"cor12_{k}", inputs, note) for k in ("i", "ii", "iii", "eps")}
    q, dual = folded
    lead = q * (n - q + 1)
    qq = q * (n - q)
    out = {
        "i": BoundReport("cor12_i", inputs, lead * (c - n * s.Bring2 / (4 * qq)), dual=dual),
        "ii": BoundReport("cor12_ii", inputs, lead * (c - s.B2 / (2 * np.sqrt(qq))), dual=dual),
    }
    if n % 2 == 0 and 2 * p == n:
        out["iii"] = BoundReport(
            "cor12_iii", inputs, n * (n + 2) / 4 * (c - s.Bring2 / n + s.Hnorm2)
        )
    else:
        out["iii"] = _na("cor12_iii", inputs, "requires even n and p = n/2")
    eps_inputs = dict(inputs, eps=eps)
    if not eps > -1.0:
        out["eps"] = _na("cor12_eps", eps_inputs, "requires eps > -1")
    else:
        coef = (n * n / (4 * qq) + eps) / (n * (1 + eps))
        out["eps"] = BoundReport(
            "cor12_eps", eps_inputs, lead * (c - coef * s.Bring2 - eps * s.Hnorm2), dual=dual
        )
    return out


def alpha_threshold(n: int, p: int, c: float, Hnorm: float) -> BoundReport:
    """Rigidity threshold on ``|B|^2``:

    ``nc + n^3|H|^2/(2p(n-p)) - n|n-2p||H| sqrt(n^2|H|^2 + 4cp(n-p)) / (2p(n-p))``.
    """
    inputs = {"n": n, "p": p, "c": c, "Hnorm": Hnorm}
    if not 1 <= p <= n - 1:
        return _na("alpha", inputs, "requires 1 <= p <= n-1", UPPER_LIMIT)
    if c < 0:
        return _na("alpha", inputs, "requires c >= 0", UPPER_LIMIT)
    q = p * (n - p)
    h = abs(Hnorm)
    value = (
        n * c
        + n**3 * h * h / (2 * q)
        - n * abs(n - 2 * p) * h * np.sqrt(n * n * h * h + 4 * c * q) / (2 * q)
    )
    return BoundReport("alpha", inputs, float(value), sense=UPPER_LIMIT)


def _ejiri_denominator(n: int, p: int) -> float:
    return (n + 2) * p * (n - p) - n * n


def thm15_bound(
    n: int,
    p: int,
    c_lower: float,
    c_upper: float,
    ric_min: float,
    Hnorm2: float,
    denom_tol: float = 1e-12,
) -> BoundReport:
    """Eigenvalue bound from Ricci curvature with a two-sided ambient Weitzenbock bound."""
    inputs = {"n": n, "p": p, "c_lower": c_lower, "c_upper": c_upper,
              "ric_min": ric_min, "Hnorm2": Hnorm2}
    if n < 3:
        return _na("thm15", inputs, "requires n >= 3")
    if c_upper < c_lower:
        return _na("thm15", inputs, "requires c_upper >= c_lower")
    folded = _fold_degree(n, p)
    if folded is None:
        return _na("thm15", inputs, "requires 1 <= p <= n-1")
    q, dual = folded
    D = _ejiri_denominator(n, q)
    if D <= denom_tol:
        return _na("thm15", inputs, "(n+2)p(n-p) - n^2 must be positive")
    qq = q * (n - q)
    bracket = ric_min - (n - 1) * (c_upper + Hnorm2) + (n - 2) * qq / D * (c_lower + Hnorm2)
    value = (n - q + 1) / (n - q) * D / (n - 2) * bracket
    return BoundReport("thm15", inputs, float(value), dual=dual)


def ejiri_threshold(n: int, p: int, c_lower: float, c_upper: float, Hnorm2: float) -> BoundReport:
    """Ricci lower threshold above which the p-th Betti number vanishes."""
    inputs = {"n": n, "p": p, "c_lower": c_lower, "c_upper": c_upper, "Hnorm2": Hnorm2}
    if n < 3:
        return _na("ejiri", inputs, "requires n >= 3", STRICT_LOWER)
    if c_upper < c_lower:
        return _na("ejiri", inputs, "requires c_upper >= c_lower", STRICT_LOWER)
    if not 1 <= p <= n - 1:
        return _na("ejiri", inputs, "requires 0 < p < n", STRICT_LOWER)
    qq = p * (n - p)
    value = (n - 1) * (c_upper + Hnorm2) - (n - 2) * qq / _ejiri_denominator(n, p) * (c_lower + Hnorm2)
    return BoundReport("ejiri", inputs, float(value), sense=STRICT_LOWER)


def sharp_ricci_threshold(n: int, c_lower: float, c_upper: float, Hnorm2: float) -> BoundReport:
    """Homology-sphere Ricci threshold, the largest Ejiri threshold over 0 < p < n."""
    inputs = {"n": n, "c_lower": c_lower, "c_upper": c_upper, "Hnorm2": Hnorm2}
    if n < 3:
        return _na("sharpric", inputs, "requires n >= 3", STRICT_LOWER)
    if c_upper < c_lower:
        return _na("sharpric", inputs, "requires c_upper >= c_lower", STRICT_LOWER)
    if n % 2 == 0:
        coef = 1.0
    else:
        coef = (n - 2) * (n * n - 1) / (n**3 - 2 * n * n - n - 2)
    value = (n - 1) * (c_upper + Hnorm2) - coef * (c_lower + Hnorm2)
    return BoundReport("sharpric", inputs, float(value), sense=STRICT_LOWER)


def sphere_theorem_thresholds(
    n: int,
    p: int,
    c_lower: float,
    c_upper: float | None = None,
    Hnorm2: float = 0.0,
) -> dict[str, BoundReport]:
    """All Betti-vanishing thresholds for degree p.

    Keys: ``ejiri`` and ``sharpric`` (Ricci thresholds, two-sided ambient);
    ``gclaim`` (weak Ricci ``Ric_(p)/p`` threshold) and ``gu_xu_p1`` (Ricci,
    p = 1) for a space form of curvature c >= 0; ``bring2`` and ``b2``
    (upper limits on ``|B0|^2`` and ``|B|^2``) for ``i*Wbar >= c >= 0``.
    """
    c_upper = c_lower if c_upper is None else c_upper
    out = {
        "ejiri": ejiri_threshold(n, p, c_lower, c_upper, Hnorm2),
        "sharpric": sharp_ricci_threshold(n, c_lower, c_upper, Hnorm2),
    }
    c = c_lower
    space_form = {"n": n, "p": p, "c": c, "Hnorm2": Hnorm2}
    if c_upper != c_lower:
        out["gclaim"] = _na("gclaim", space_form, "requires a space form (c_lower = c_upper)", STRICT_LOWER)
        out["gu_xu_p1"] = _na("gu_xu_p1", space_form, "requires a space form (c_lower = c_upper)", STRICT_LOWER)
    else:
        if c < 0:
            out["gclaim"] = _na("gclaim", space_form, "requires c >= 0", STRICT_LOWER)
        elif n < 4 or not 1 < p < n - 1:
            out["gclaim"] = _na("gclaim", space_form, "requires n >= 4 and 1 < p < n-1", STRICT_LOWER)
        else:
            qq = p * (n - p)
            coef = n - 1 - (n - 2) * qq / _ejiri_denominator(n, p)
            out["gclaim"] = BoundReport("gclaim", space_form, float(coef * (c + Hnorm2)), sense=STRICT_LOWER)
        if c < 0:
            out["gu_xu_p1"] = _na("gu_xu_p1", space_form, "requires c >= 0", STRICT_LOWER)
        elif p not in (1, n - 1):
            out["gu_xu_p1"] = _na("gu_xu_p1", space_form, "requires p = 1 or p = n-1", STRICT_LOWER)
        else:
            out["gu_xu_p1"] = BoundReport(
                "gu_xu_p1", space_form, n * (n - 1) * (c + Hnorm2) / (n + 2),
                sense=STRICT_LOWER, dual=(p != 1),
            )
    extra = {"n": n, "p": p, "c": c}
    if c < 0 or not 1 <= p <= n - 1:
        note = "requires c >= 0 and 1 <= p <= n-1"
        out["bring2"] = _na("bring2", extra, note, UPPER_LIMIT)
        out["b2"] = _na("b2", extra, note, UPPER_LIMIT)
    else:
        out["bring2"] = BoundReport("bring2", extra, 4 * c * p * (n - p) / n, sense=UPPER_LIMIT)
        out["b2"] = BoundReport("b2", extra, float(2 * c * np.sqrt(p * (n - p))), sense=UPPER_LIMIT)
    return out


class InequalityCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def lemma42_check(
    A_list: Sequence[np.ndarray], p: int, omega: PForm, tol: float | None = None
) -> InequalityCheck:
    """``sum_a |A^a w|^2 <= p^2 |sum_a (A^a)^2|_2 |w|^2`` for derivation-extended A^a."""
    tol = default_tol() if tol is None else tol
    mats = [np.asarray(a, dtype=float) for a in A_list]
    if omega.p != p:
        raise ValueError("form degree does not match p")
    w = omega.coeffs
    lhs = sum(float(np.sum((derivation_extend(a, p).matrix @ w) ** 2)) for a in mats)
    rhs = p * p * spectral_norm(sum(a @ a for a in mats)) * float(w @ w)
    return InequalityCheck(lhs, rhs, lhs <= rhs + tol)


def thm15_opnorm_chain(B: SecondFundamentalForm, p: int, tol: float | None = None) -> InequalityCheck:
    """Operator-norm estimate behind the Ricci eigenvalue bound.

    lhs: ``|S0 - (n-2p)/2 H|^2_op - n^2|H|^2/4`` on Lambda^p.
    rhs: ``((n+2)p(n-p)-n^2)/(n-2) * (|sum_a (A0^a - (n-2)/2 H^a Id)^2|_2 - (n-2)^2|H|^2/4)``.
    """
    tol = default_tol() if tol is None else tol
    n = B.n
    if n < 3 or not 1 <= p <= n // 2:
        raise ValueError("requires n >= 3 and 1 <= p <= n/2")
    H = B.mean_curvature()
    Hn2 = float(H @ H)
    _, S_ring = shape_extension(B, p)
    eye = np.eye(S_ring[0].matrix.shape[0])
    shifted = [s.matrix - 0.5 * (n - 2 * p) * Ha * eye for s, Ha in zip(S_ring, H)]
    lhs = stacked_opnorm(shifted) - 0.25 * n * n * Hn2
    centred = [a - 0.5 * (n - 2) * Ha * np.eye(n) for a, Ha in zip(B.traceless(), H)]
    rhs = _ejiri_denominator(n, p) / (n - 2) * (
        spectral_norm(sum(a @ a for a in centred)) - 0.25 * (n - 2) ** 2 * Hn2
    )
    return InequalityCheck(lhs, rhs, lhs <= rhs + tol)


def gclaim_chain(B: SecondFundamentalForm, p: int, c: float, tol: float | None = None) -> InequalityCheck:
    """Lawson-Simons quantity on the coordinate split versus its Ricci upper estimate.

    ``LS <= D/(n-2) ((n-1)(c+|H|^2) - Ric_(p)/p) - p(n-p)|H|^2`` with
    ``D = (n+2)p(n-p) - n^2`` and intrinsic Ricci from the Gauss equation in
    a space form of curvature c.
    """
    from .curvature import constant_curvature, gauss_intrinsic, ric_p
    from .submanifold import ls_quantity

    tol = default_tol() if tol is None else tol
    n = B.n
    if c < 0 or not 2 <= p <= n // 2:
        raise ValueError("requires c >= 0 and 2 <= p <= n/2")
    Hn2 = float(np.sum(B.mean_curvature() ** 2))
    R = gauss_intrinsic(constant_curvature(n, c), B)
    lhs = ls_quantity(B, p)
    rhs = _ejiri_denominator(n, p) / (n - 2) * ((n - 1) * (c + Hn2) - ric_p(R, p) / p) - p * (n - p) * Hn2
    return InequalityCheck(lhs, rhs, lhs <= rhs + tol)


def alpha_equivalence_gap(n: int, p: int, c: float, Hnorm: float, Bring: float) -> tuple[bool, bool]:
    """Both sides of the equivalence behind the rigidity threshold.

    Returns ``(|B|^2 <= alpha, c >= |B0|^2/n + |n-2p||H||B0|/sqrt(np(n-p)) - |H|^2)``
    with ``|B|^2 = |B0|^2 + n|H|^2``.
    """
    alpha = alpha_threshold(n, p, c, Hnorm).value
    b2 = Bring * Bring + n * Hnorm * Hnorm
    rhs = Bring * Bring / n + abs(n - 2 * p) * abs(Hnorm) * Bring / np.sqrt(n * p * (n - p)) - Hnorm * Hnorm
    return b2 <= alpha, c >= rhs
