"""Eigenvalue estimates for the Hodge Laplacian on p-forms of submanifolds.

The package computes exterior algebra on an orthonormal coframe, the
Weitzenbock curvature term, extrinsic quantities of a second fundamental
form, and the closed-form eigenvalue bounds and Betti-vanishing thresholds
that combine them.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    InequalityCheck,
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
from .curvature import (
    CurvatureOperatorMatrix,
    CurvatureSymmetryError,
    CurvatureTensor,
    constant_curvature,
    curvature_operator,
    gauss_intrinsic,
    ric_min,
    ric_p,
    ricci,
    scalar_curvature,
    weitzenboeck,
    weitzenboeck_quadratic,
)
from .eigen import ConvergenceError, jacobi_eigh, jacobi_eigvalsh, spectral_norm, stacked_opnorm
from .exterior import (
    OperatorOnForms,
    PForm,
    basis,
    derivation_extend,
    form_inner,
    hodge_star,
    interior,
    rank_subset,
    unrank_subset,
    wedge,
)
from .models import ModelSpace, SharpnessReport, clifford_torus, geodesic_sphere, mu_star, sharpness_suite
from .report import CheckRecord
from .submanifold import (
    ExtrinsicSummary,
    SecondFundamentalForm,
    gamma_p,
    gap_identity_residual,
    ls_quantity,
    p_curvature_beta,
    shape_extension,
    summarize,
    traceless_opnorm_bound,
    traceless_opnorm_sq,
)

__all__ = [
    "__version__",
    "alpha_threshold",
    "basis",
    "BoundReport",
    "CheckRecord",
    "clifford_torus",
    "constant_curvature",
    "ConvergenceError",
    "cor12_bounds",
    "curvature_operator",
    "CurvatureOperatorMatrix",
    "CurvatureSymmetryError",
    "CurvatureTensor",
    "derivation_extend",
    "ejiri_threshold",
    "ExtrinsicSummary",
    "form_inner",
    "gallot_meyer_bound",
    "gamma_p",
    "gap_identity_residual",
    "gauss_intrinsic",
    "gclaim_chain",
    "geodesic_sphere",
    "hodge_star",
    "InequalityCheck",
    "interior",
    "jacobi_eigh",
    "jacobi_eigvalsh",
    "lemma42_check",
    "ls_quantity",
    "ModelSpace",
    "mu_star",
    "OperatorOnForms",
    "p_curvature_beta",
    "PForm",
    "rank_subset",
    "ric_min",
    "ric_p",
    "ricci",
    "scalar_curvature",
    "SecondFundamentalForm",
    "shape_extension",
    "sharp_ricci_threshold",
    "sharpness_suite",
    "SharpnessReport",
    "spectral_norm",
    "sphere_theorem_thresholds",
    "stacked_opnorm",
    "summarize",
    "thm11_bound",
    "thm15_bound",
    "thm15_opnorm_chain",
    "traceless_opnorm_bound",
    "traceless_opnorm_sq",
    "unrank_subset",
    "wedge",
    "weitzenboeck",
    "weitzenboeck_quadratic",
]
