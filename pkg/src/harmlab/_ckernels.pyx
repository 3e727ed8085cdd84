# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the truncated-series kernels in ``_pykernels``.

Complex arrays are read as interleaved doubles (real at ``2p``, imaginary
at ``2p + 1``) without copying, and every inner loop runs over the point
axis so the C compiler can vectorize it.
"""
import numpy as np

from libc.math cimport exp as rexp, log as rlog, cos, sin, atan2, hypot


cdef inline _doubles(a):
    # (k, n) complex128 -> (k, 2n) float64 sharing memory
    return np.ascontiguousarray(a, dtype=np.complex128).view(np.float64)


cdef inline _result(Py_ssize_t k, Py_ssize_t n, bint zero):
    out = (np.zeros if zero else np.empty)((k, n), dtype=np.complex128)
    return out, out.view(np.float64)


def mul(a, b):
    cdef const double[:, ::1] A = _doubles(a), B = _doubles(b)
    cdef Py_ssize_t k = A.shape[0], n = A.shape[1] // 2, m, j, p
    out, o = _result(k, n, True)
    cdef double[:, ::1] O = o
    with nogil:
        for m in range(k):
            for j in range(m + 1):
                for p in range(n):
                    O[m, 2*p] += A[j, 2*p] * B[m-j, 2*p] - A[j, 2*p+1] * B[m-j, 2*p+1]
                    O[m, 2*p+1] += A[j, 2*p] * B[m-j, 2*p+1] + A[j, 2*p+1] * B[m-j, 2*p]
    return out


cdef void _inverse_lead(const double[:, ::1] A, double[::1] inv) noexcept nogil:
    cdef Py_ssize_t p
    cdef double d
    for p in range(A.shape[1] // 2):
        d = A[0, 2*p] * A[0, 2*p] + A[0, 2*p+1] * A[0, 2*p+1]
        inv[2*p] = A[0, 2*p] / d
        inv[2*p+1] = -A[0, 2*p+1] / d


def recip(a):
    cdef const double[:, ::1] A = _doubles(a)
    cdef Py_ssize_t k = A.shape[0], n = A.shape[1] // 2, m, j, p
    out, o = _result(k, n, False)
    cdef double[:, ::1] O = o
    cdef double[::1] inv = np.empty(2 * n), s = np.empty(2 * n)
    with nogil:
        _inverse_lead(A, inv)
        for p in range(2 * n):
            O[0, p] = inv[p]
        for m in range(1, k):
            s[:] = 0
            for j in range(1, m + 1):
                for p in range(n):
                    s[2*p] += A[j, 2*p] * O[m-j, 2*p] - A[j, 2*p+1] * O[m-j, 2*p+1]
                    s[2*p+1] += A[j, 2*p] * O[m-j, 2*p+1] + A[j, 2*p+1] * O[m-j, 2*p]
            for p in range(n):
                O[m, 2*p] = -(inv[2*p] * s[2*p] - inv[2*p+1] * s[2*p+1])
                O[m, 2*p+1] = -(inv[2*p] * s[2*p+1] + inv[2*p+1] * s[2*p])
    return out


def exp(a):
    cdef const double[:, ::1] A = _doubles(a)
    cdef Py_ssize_t k = A.shape[0], n = A.shape[1] // 2, m, j, p
    out, o = _result(k, n, False)
    cdef double[:, ::1] O = o
    cdef double[::1] s = np.empty(2 * n)
    cdef double r
    with nogil:
        for p in range(n):
            r = rexp(A[0, 2*p])
            O[0, 2*p] = r * cos(A[0, 2*p+1])
            O[0, 2*p+1] = r * sin(A[0, 2*p+1])
        for m in range(1, k):
            s[:] = 0
            for j in range(1, m + 1):
                for p in range(n):
                    s[2*p] += j * (A[j, 2*p] * O[m-j, 2*p] - A[j, 2*p+1] * O[m-j, 2*p+1])
                    s[2*p+1] += j * (A[j, 2*p] * O[m-j, 2*p+1] + A[j, 2*p+1] * O[m-j, 2*p])
            for p in range(2 * n):
                O[m, p] = s[p] / m
    return out


def log(a):
    cdef const double[:, ::1] A = _doubles(a)
    cdef Py_ssize_t k = A.shape[0], n = A.shape[1] // 2, m, j, p
    out, o = _result(k, n, False)
    cdef double[:, ::1] O = o
    cdef double[::1] inv = np.empty(2 * n), s = np.empty(2 * n)
    cdef double tr, ti
    with nogil:
        _inverse_lead(A, inv)
        for p in range(n):
            O[0, 2*p] = rlog(hypot(A[0, 2*p], A[0, 2*p+1]))
            O[0, 2*p+1] = atan2(A[0, 2*p+1], A[0, 2*p])
        for m in range(1, k):
            s[:] = 0
            for j in range(1, m):
                for p in range(n):
                    s[2*p] += j * (O[j, 2*p] * A[m-j, 2*p] - O[j, 2*p+1] * A[m-j, 2*p+1])
                    s[2*p+1] += j * (O[j, 2*p] * A[m-j, 2*p+1] + O[j, 2*p+1] * A[m-j, 2*p])
            for p in range(n):
                tr = A[m, 2*p] - s[2*p] / m
                ti = A[m, 2*p+1] - s[2*p+1] / m
                O[m, 2*p] = tr * inv[2*p] - ti * inv[2*p+1]
                O[m, 2*p+1] = tr * inv[2*p+1] + ti * inv[2*p]
    return out


def taylor_shift(coeffs, z, int order):
    cdef const double[::1] C = np.ascontiguousarray(coeffs, dtype=np.complex128).view(np.float64)
    cdef const double[::1] Z = np.ascontiguousarray(z, dtype=np.complex128).view(np.float64)
    cdef Py_ssize_t deg = C.shape[0] // 2 - 1, n = Z.shape[0] // 2, m, i, p
    cdef Py_ssize_t top = order if order < deg else deg
    out, o = _result(order + 1, n, True)
    cdef double[:, ::1] O = o
    cdef double[:, ::1] W = np.empty((deg + 1, 2 * n))
    with nogil:
        for i in range(deg + 1):
            for p in range(n):
                W[i, 2*p] = C[2*i]
                W[i, 2*p+1] = C[2*i+1]
        # repeated synthetic division by (u - z): pass m leaves the m-th
        # shifted coefficient in row m
        for m in range(top + 1):
            i = deg - 1
            while i >= m:
                for p in range(n):
                    W[i, 2*p] += Z[2*p] * W[i+1, 2*p] - Z[2*p+1] * W[i+1, 2*p+1]
                    W[i, 2*p+1] += Z[2*p] * W[i+1, 2*p+1] + Z[2*p+1] * W[i+1, 2*p]
                i -= 1
            for p in range(2 * n):
                O[m, p] = W[m, p]
    return out
