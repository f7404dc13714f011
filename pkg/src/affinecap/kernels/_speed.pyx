# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled projection kernel: the N x M reduction that dominates star-body
evaluations.  Same contract as kernels._py.projection_parts."""

import numpy as np

cimport cython
from cython.parallel cimport prange
from libc.math cimport pow


def projection_parts(thetas, normals, weights, double p):
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    normals = np.ascontiguousarray(normals, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[:, ::1] th = thetas
    cdef const double[:, ::1] nu = normals
    cdef const double[::1] w = weights
    cdef Py_ssize_t m = th.shape[0]
    cdef Py_ssize_t k = nu.shape[0]
    cdef Py_ssize_t n = th.shape[1]
    iplus = np.empty(m)
    iminus = np.empty(m)
    cdef double[::1] ip = iplus
    cdef double[::1] im = iminus
    cdef Py_ssize_t i, j, d
    cdef double t, sp, sm
    cdef int mode = 0
    if p == 1.0:
        mode = 1
    elif p == 2.0:
        mode = 2
    with nogil:
        for j in prange(m, schedule='static'):
            sp = 0.0
            sm = 0.0
            for i in range(k):
                t = 0.0
                for d in range(n):
                    t = t + th[j, d] * nu[i, d]
                if mode == 1:
                    if t > 0.0:
                        sp = sp + t * w[i]
                    elif t < 0.0:
                        sm = sm - t * w[i]
                elif mode == 2:
                    if t > 0.0:
                        sp = sp + t * t * w[i]
                    elif t < 0.0:
                        sm = sm + t * t * w[i]
                else:
                    if t > 0.0:
                        sp = sp + pow(t, p) * w[i]
                    elif t < 0.0:
                        sm = sm + pow(-t, p) * w[i]
            ip[j] = sp
            im[j] = sm
    return iplus, iminus
