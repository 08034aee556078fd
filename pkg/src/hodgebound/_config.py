from __future__ import annotations

import os

DEFAULT_TOL = 1e-9
TOL_ENV = "HODGEBOUND_TOL"


def default_tol() -> float:
    """Tolerance for inequality checks; ``HODGEBOUND_TOL`` overrides it."""
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ValueError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol >= 0.0:
        raise ValueError(f"{TOL_ENV} must be non-negative, got {tol}")
    return tol
