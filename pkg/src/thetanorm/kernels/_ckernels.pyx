# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; see _pykernels for the contract."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef int[6][7] _TERMS = [
    # sign, x-triple, y-triple (positions in tau)
    [+1, 0, 1, 2, 0, 3, 4],
    [+1, 0, 3, 4, 0, 1, 2],
    [-1, 0, 1, 3, 0, 2, 4],
    [-1, 0, 2, 4, 0, 1, 3],
    [+1, 0, 1, 4, 0, 2, 3],
    [+1, 0, 2, 3, 0, 1, 4],
]


cdef inline int _or(long a, long b, long c) noexcept nogil:
    cdef long s = (b - a) * (c - b) * (c - a)
    return (s > 0) - (s < 0)


cpdef int orientation(long a, long b, long c):
    return _or(a, b, c)


cdef long _theta30(long* x, long* y) noexcept nogil:
    cdef long total = 0
    cdef int k, j
    cdef int t[5]
    for k in range(5):
        for j in range(5):
            t[j] = (j + k) % 5
        for j in range(6):
            total += _TERMS[j][0] * _or(x[t[_TERMS[j][1]]], x[t[_TERMS[j][2]]], x[t[_TERMS[j][3]]]) \
                * _or(y[t[_TERMS[j][4]]], y[t[_TERMS[j][5]]], y[t[_TERMS[j][6]]])
    return total


def theta30_batch(X, Y):
    cdef long[:, ::1] xv = np.ascontiguousarray(X, dtype=np.int64)
    cdef long[:, ::1] yv = np.ascontiguousarray(Y, dtype=np.int64)
    cdef Py_ssize_t n = xv.shape[0], r
    out = np.empty(n, dtype=np.int64)
    cdef long[::1] ov = out
    with nogil:
        for r in range(n):
            ov[r] = _theta30(&xv[r, 0], &yv[r, 0])
    return out


def theta120_batch(X, Y):
    from ._pykernels import PERMS5, PERM_SIGNS5
    cdef long[:, ::1] xv = np.ascontiguousarray(X, dtype=np.int64)
    cdef long[:, ::1] yv = np.ascontiguousarray(Y, dtype=np.int64)
    cdef long[:, ::1] pv = np.ascontiguousarray(PERMS5, dtype=np.int64)
    cdef long[::1] sv = np.ascontiguousarray(PERM_SIGNS5, dtype=np.int64)
    cdef Py_ssize_t n = xv.shape[0], r, k
    out = np.empty(n, dtype=np.int64)
    cdef long[::1] ov = out
    cdef long total
    with nogil:
        for r in range(n):
            total = 0
            for k in range(120):
                total += sv[k] * _or(xv[r, pv[k, 0]], xv[r, pv[k, 1]], xv[r, pv[k, 2]]) \
                    * _or(yv[r, pv[k, 2]], yv[r, pv[k, 3]], yv[r, pv[k, 4]])
            ov[r] = total
    return out


def dtheta30_batch(X, Y):
    cdef long[:, ::1] xv = np.ascontiguousarray(X, dtype=np.int64)
    cdef long[:, ::1] yv = np.ascontiguousarray(Y, dtype=np.int64)
    cdef Py_ssize_t n = xv.shape[0], r
    out = np.empty(n, dtype=np.int64)
    cdef long[::1] ov = out
    cdef long fx[5]
    cdef long fy[5]
    cdef long total
    cdef int i, j, c
    with nogil:
        for r in range(n):
            total = 0
            for i in range(6):
                c = 0
                for j in range(6):
                    if j != i:
                        fx[c] = xv[r, j]
                        fy[c] = yv[r, j]
                        c += 1
                if i % 2 == 0:
                    total += _theta30(fx, fy)
                else:
                    total -= _theta30(fx, fy)
            ov[r] = total
    return out
