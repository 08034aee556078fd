"""Seeded random instances for the property suites."""
from __future__ import annotations

import numpy as np

from .curvature import CurvatureTensor, kulkarni_nomizu
from .exterior import PForm, dim
from .submanifold import SecondFundamentalForm


def random_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


def random_second_fundamental_form(rng: np.random.Generator, n: int, m: int) -> SecondFundamentalForm:
    """i.i.d. standard normal entries, symmetrised."""
    return SecondFundamentalForm(np.stack([random_symmetric(rng, n) for _ in range(m)]))


def random_curvature_tensor(rng: np.random.Generator, n: int, terms: int = 3) -> CurvatureTensor:
    """Signed sum of products ``h_ik h_jl - h_il h_jk``.

    These span the algebraic curvature tensors, so the result satisfies
    every symmetry including first Bianchi.
    """
    r = np.zeros((n, n, n, n))
    for _ in range(terms):
        r += rng.choice((-1.0, 1.0)) * kulkarni_nomizu(random_symmetric(rng, n))
    return CurvatureTensor(r)


def random_form(rng: np.random.Generator, n: int, p: int) -> PForm:
    return PForm(n, p, rng.standard_normal(dim(n, p)))


def random_unit_form(rng: np.random.Generator, n: int, p: int) -> PForm:
    w = rng.standard_normal(dim(n, p))
    return PForm(n, p, w / np.linalg.norm(w))
