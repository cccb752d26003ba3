"""Principal-branch Lambert W function and the e^(W(x)+1) kernel.

Every closed-form optimizer in this package is "closed form modulo W", so
the evaluation here is iterated to machine-level residual.  A compiled
Cython kernel is used when available; a vectorized NumPy fallback is
selected at import otherwise (or when MIMOEE_PURE_PYTHON=1 is set).
"""
import os

import numpy as np

from mimoee.errors import DomainError

if os.environ.get("MIMOEE_PURE_PYTHON") == "1":
    from mimoee.lambert._pure import w0_kernel

    BACKEND = "python"
else:
    try:
        from mimoee.lambert._wcore import w0_kernel

        BACKEND = "cython"
    except ImportError:
        from mimoee.lambert._pure import w0_kernel

        BACKEND = "python"

BRANCH_POINT = -np.exp(-1.0)

# absolute slack below -1/e tolerated for round-off in callers
DOMAIN_SLACK = 1e-12

__all__ = ["w0", "exp_w_plus_one", "BACKEND", "BRANCH_POINT"]


def w0(x):
    """Lambert W, principal branch: the w >= -1 solving w*exp(w) = x.

    Accepts a scalar or array; requires x >= -1/e (up to round-off slack).
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < BRANCH_POINT - DOMAIN_SLACK) or np.any(np.isnan(arr)):
        raise DomainError(
            f"w0 requires x >= -1/e = {BRANCH_POINT!r}; got minimum {np.min(arr)!r}"
        )
    w = w0_kernel(arr)
    return float(w) if np.isscalar(x) or np.ndim(x) == 0 else w


def exp_w_plus_one(x):
    """e^(W(x)+1), the kernel shared by all closed-form EE optimizers.

    Uses the identity e^(W(x)+1) = e*x/W(x) away from W = 0, which avoids
    exponentiating large W for big arguments.
    """
    arr = np.asarray(x, dtype=np.float64)
    w = w0(arr)
    w = np.asarray(w, dtype=np.float64)
    safe = np.abs(w) > 0.1
    out = np.where(
        safe,
        np.e * arr / np.where(safe, w, 1.0),
        np.exp(w + 1.0),
    )
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out
