# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the principal-branch Lambert W kernel.

Same algorithm as mimoee.lambert._pure: branch-point series / log-log
initialization followed by Halley iteration, with an early exit per element.
"""
from libc.math cimport exp, fabs, log, log1p, sqrt

import numpy as np

DEF P_SERIES_ONLY = 1e-3


cdef double _w0_scalar(double x) noexcept nogil:
    cdef double p2, p, w, l1, l2, ew, f, wp1, dw
    cdef int i
    if x == 0.0:
        return 0.0
    p2 = 2.0 * (2.718281828459045235 * x + 1.0)
    if p2 < 0.0:
        p2 = 0.0
    p = sqrt(p2)
    if x < 0.5:
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * (43.0 / 540.0))))
        if p < P_SERIES_ONLY:
            return w
    elif x < 3.0:
        w = log1p(x)
    else:
        l1 = log(x)
        l2 = log(l1)
        w = l1 - l2 + l2 / l1
    for i in range(40):
        ew = exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w = w - dw
        if fabs(dw) <= 1e-16 * (2.0 + fabs(w)):
            break
    return w


def w0_kernel(x):
    """Lambert W_0 for an array of x >= -1/e (domain already checked)."""
    cdef double[::1] xv, wv
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.float64).ravel())
    out = np.empty_like(arr)
    xv = arr
    wv = out
    cdef Py_ssize_t i, n = arr.shape[0]
    with nogil:
        for i in range(n):
            wv[i] = _w0_scalar(xv[i])
    return out.reshape(np.shape(x))
