"""Pure numpy implementation of the truncated-series kernels.

Every kernel takes complex128 arrays of shape ``(k + 1, n)``: row ``m`` holds
the ``m``-th Taylor coefficient for each of ``n`` independent evaluation
points. Loops run over coefficient indices; the point axis is vectorized.
"""
import numpy as np


def mul(a, b):
    k = a.shape[0]
    out = np.empty_like(a)
    for m in range(k):
        out[m] = (a[: m + 1] * b[m::-1]).sum(axis=0)
    return out


def recip(a):
    k = a.shape[0]
    out = np.empty_like(a)
    inv = 1.0 / a[0]
    out[0] = inv
    for m in range(1, k):
        out[m] = -inv * (a[1 : m + 1] * out[m - 1 :: -1]).sum(axis=0)
    return out


def exp(a):
    k = a.shape[0]
    out = np.empty_like(a)
    out[0] = np.exp(a[0])
    for m in range(1, k):
        j = np.arange(1, m + 1, dtype=float)[:, None]
        out[m] = (j * a[1 : m + 1] * out[m - 1 :: -1]).sum(axis=0) / m
    return out


def log(a):
    k = a.shape[0]
    out = np.empty_like(a)
    out[0] = np.log(a[0])
    inv = 1.0 / a[0]
    for m in range(1, k):
        acc = a[m].copy()
        if m > 1:
            j = np.arange(1, m, dtype=float)[:, None]
            acc -= (j * out[1:m] * a[m - 1 : 0 : -1]).sum(axis=0) / m
        out[m] = acc * inv
    return out


def taylor_shift(coeffs, z, order):
    """Taylor coefficients of the polynomial ``coeffs`` re-centred at each ``z``."""
    deg = coeffs.shape[0] - 1
    n = z.shape[0]
    out = np.zeros((order + 1, n), dtype=complex)
    w = np.repeat(coeffs[:, None], n, axis=1).astype(complex)
    for m in range(min(order, deg) + 1):
        for i in range(deg - 1, m - 1, -1):
            w[i] += z * w[i + 1]
        out[m] = w[m]
    return out
