"""Pure NumPy backend for the principal-branch Lambert W kernel.

Halley iteration on w*exp(w) - x = 0, initialized from the branch-point
square-root series for small x and the log-log asymptotic for large x.
Points very close to the branch point x = -1/e are returned directly from
the series: the Halley denominator degenerates as w -> -1, while the
series error there is O(p^5) with p = sqrt(2(e*x + 1)).
"""
import numpy as np

BRANCH_POINT = -np.exp(-1.0)

# below this value of p = sqrt(2(e x + 1)) the series alone is accurate
# to well under an ulp of the residual tolerance
_P_SERIES_ONLY = 1e-3


def w0_kernel(x):
    """Lambert W_0 for an array of x >= -1/e (domain already checked).

    Values in [-1/e, -1/e + eps) are clamped onto the branch point.
    """
    x = np.asarray(x, dtype=np.float64)
    p2 = np.maximum(2.0 * (np.e * x + 1.0), 0.0)
    p = np.sqrt(p2)
    series = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * (43.0 / 540.0))))

    small = x < 0.5
    mid = ~small & (x < 3.0)
    big = x >= 3.0

    w = np.where(small, series, 0.0)
    w = np.where(mid, np.log1p(np.where(mid, x, 0.0)), w)
    xs = np.where(big, x, 3.0)
    l1 = np.log(xs)
    l2 = np.log(l1)
    w = np.where(big, l1 - l2 + l2 / l1, w)

    frozen = p < _P_SERIES_ONLY  # keep the series value, skip Halley
    for _ in range(40):
        ew = np.exp(w)
        f = w * ew - x
        wp1 = np.where(frozen, 1.0, w + 1.0)
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        denom = np.where(denom == 0.0, 1.0, denom)
        dw = np.where(frozen, 0.0, f / denom)
        w = w - dw
        if np.all(np.abs(dw) <= 1e-16 * (2.0 + np.abs(w))):
            break
    return np.where(x == 0.0, 0.0, w)
