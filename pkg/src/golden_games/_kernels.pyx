# cython: language_level=3
"""Compiled kernels: counter-based leaf generation, pruned streaming
evaluation and the batched per-sample fragility tally.

Every function here has a numpy twin in ``_fallback`` with the same
signature and bit-identical results.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef double TWO53 = 9007199254740992.0


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z ^= z >> 30
    z *= 0xBF58476D1CE4E5B9ULL
    z ^= z >> 27
    z *= 0x94D049BB133111EBULL
    z ^= z >> 31
    return z


cdef inline uint64_t _sample_key(uint64_t seed, uint64_t index) noexcept nogil:
    return _mix(seed + (index + 1) * GAMMA)


cdef inline int _leaf(uint64_t base, uint64_t leaf, double threshold) noexcept nogil:
    # u < p  <=>  top53(z) < p * 2**53, exact in double arithmetic
    cdef uint64_t z = _mix(base + (leaf + 1) * GAMMA)
    return 1 if <double>(z >> 11) < threshold else 0


cdef int _eval(uint64_t base, uint64_t first, int h, double threshold) noexcept nogil:
    if h == 0:
        return _leaf(base, first, threshold)
    cdef int left = _eval(base, first, h - 1, threshold)
    if h & 1:
        if left == 0:
            return 0
    elif left == 1:
        return 1
    return _eval(base, first + ((<uint64_t>1) << (h - 1)), h - 1, threshold)


def sample_leaves(uint64_t seed, uint64_t index, int depth, double p):
    cdef Py_ssize_t n = (<Py_ssize_t>1) << depth
    cdef Py_ssize_t i
    cdef uint64_t base = _sample_key(seed, index)
    cdef double threshold = p * TWO53
    out = np.empty(n, dtype=np.uint8)
    cdef unsigned char[::1] view = out
    with nogil:
        for i in range(n):
            view[i] = <unsigned char>_leaf(base, <uint64_t>i, threshold)
    return out


def streamed_value(uint64_t seed, uint64_t index, int depth, double p):
    cdef uint64_t base = _sample_key(seed, index)
    cdef double threshold = p * TWO53
    cdef int v
    with nogil:
        v = _eval(base, 0, depth, threshold)
    return v


def fragility_tally(uint64_t seed, int depth, double p,
                    uint64_t start, uint64_t stop, int dmax):
    cdef Py_ssize_t n = (<Py_ssize_t>1) << depth
    cdef Py_ssize_t i, j, width
    cdef int h, value, b
    cdef int64_t a, c, frag
    cdef uint64_t k, base
    cdef double threshold = p * TWO53

    counts = np.zeros((2, dmax + 1), dtype=np.int64)
    to0 = np.empty(n, dtype=np.int64)
    to1 = np.empty(n, dtype=np.int64)
    cdef int64_t[:, ::1] cv = counts
    cdef int64_t[::1] c0 = to0
    cdef int64_t[::1] c1 = to1

    with nogil:
        k = start
        while k < stop:
            base = _sample_key(seed, k)
            for i in range(n):
                b = _leaf(base, <uint64_t>i, threshold)
                c0[i] = b
                c1[i] = 1 - b
            width = n
            for h in range(1, depth + 1):
                width >>= 1
                if h & 1:
                    for j in range(width):
                        a = c0[2 * j]
                        c = c0[2 * j + 1]
                        c0[j] = a if a < c else c
                        c1[j] = c1[2 * j] + c1[2 * j + 1]
                else:
                    for j in range(width):
                        a = c1[2 * j]
                        c = c1[2 * j + 1]
                        c1[j] = a if a < c else c
                        c0[j] = c0[2 * j] + c0[2 * j + 1]
            if c0[0] == 0:
                value = 0
                frag = c1[0]
            else:
                value = 1
                frag = c0[0]
            if frag > dmax + 1:
                frag = dmax + 1
            cv[value, frag - 1] += 1
            k += 1
    return counts
