# cython: language_level=3
"""Compiled kernels; see ``_pykernels`` for the reference implementation."""

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint64_t

cdef extern from "rk_kernels.h" nogil:
    int RK_MAXK
    uint64_t rk_term_mod(int k, const uint64_t *a, const uint64_t *init,
                         uint64_t n, uint64_t m)
    void rk_census(int k, const int64_t *coeffs, const int64_t *init,
                   uint64_t lo, uint64_t hi, uint8_t *out)

MAXK = RK_MAXK
NAME = "cython"


def term_mod(coeffs, init, n, m):
    """u_n mod m; ``coeffs`` and ``init`` must already be residues mod m."""
    cdef int k = len(coeffs)
    cdef uint64_t a[64]
    cdef uint64_t u[64]
    cdef uint64_t nn = n
    cdef uint64_t mm = m
    cdef uint64_t r
    cdef int i
    for i in range(k):
        a[i] = coeffs[i]
        u[i] = init[i]
    with nogil:
        r = rk_term_mod(k, a, u, nn, mm)
    return r


def census_block(coeffs, init, lo, hi):
    """Membership flags for lo <= n < hi as a uint8 array."""
    cdef int k = len(coeffs)
    cdef int64_t[::1] c = np.asarray(coeffs, dtype=np.int64)
    cdef int64_t[::1] u = np.asarray(init, dtype=np.int64)
    cdef uint64_t l = lo
    cdef uint64_t h = hi
    out = np.zeros(max(hi - lo, 0), dtype=np.uint8)
    cdef uint8_t[::1] o = out
    if h > l:
        with nogil:
            rk_census(k, &c[0], &u[0], l, h, &o[0])
    return out
