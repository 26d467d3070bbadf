# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in _pykernels."""
import numpy as np


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


def linear_entropy_batch(u, a, b):
    cdef double complex[:, ::1] uu = np.ascontiguousarray(u, dtype=np.complex128)
    cdef double complex[:, ::1] aa = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex[:, ::1] bb = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t n = aa.shape[0]
    if bb.shape[0] != n:
        raise ValueError("state batches differ in length")
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t s, k
    cdef double complex p[4]
    cdef double complex x[4]
    with nogil:
        for s in range(n):
            p[0] = aa[s, 0] * bb[s, 0]
            p[1] = aa[s, 0] * bb[s, 1]
            p[2] = aa[s, 1] * bb[s, 0]
            p[3] = aa[s, 1] * bb[s, 1]
            for k in range(4):
                x[k] = uu[k, 0] * p[0] + uu[k, 1] * p[1] + uu[k, 2] * p[2] + uu[k, 3] * p[3]
            o[s] = 2.0 * _abs2(x[0] * x[3] - x[1] * x[2])
    return out


def max_concurrence_grid(u, states):
    cdef double complex[:, ::1] uu = np.ascontiguousarray(u, dtype=np.complex128)
    cdef double complex[:, ::1] ss = np.ascontiguousarray(states, dtype=np.complex128)
    cdef Py_ssize_t n = ss.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double complex l[4][2]
    cdef double complex x[4]
    cdef double c2, best2 = -1.0
    cdef Py_ssize_t bi = 0, bj = 0
    with nogil:
        for i in range(n):
            # contract the first qubit once per row
            for k in range(4):
                l[k][0] = uu[k, 0] * ss[i, 0] + uu[k, 2] * ss[i, 1]
                l[k][1] = uu[k, 1] * ss[i, 0] + uu[k, 3] * ss[i, 1]
            for j in range(n):
                for k in range(4):
                    x[k] = l[k][0] * ss[j, 0] + l[k][1] * ss[j, 1]
                c2 = _abs2(x[0] * x[3] - x[1] * x[2])
                if c2 > best2:
                    best2 = c2
                    bi = i
                    bj = j
    return 2.0 * np.sqrt(best2), int(bi), int(bj)
