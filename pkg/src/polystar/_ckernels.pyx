# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twins of the kernels in ``_pykernels``.

Words of equal length are packed into a 64-bit key, ``bits`` bits per letter.
Inputs whose packed length would not fit fall back to the Python kernel.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

from polystar import _pykernels

cnp.import_array()


cdef inline int _bits_for(int m):
    cdef int b = 1
    while (1 << b) <= m:
        b += 1
    return b


def shuffle_counts(a, b):
    """Shuffle of two words as a dict ``word -> multiplicity``."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t n = la + lb
    if n == 0:
        return {(): 1}
    cdef int top = 0
    for x in a:
        if x > top:
            top = x
    for x in b:
        if x > top:
            top = x
    cdef int bits = _bits_for(top)
    # multiplicities are bounded by C(n, n/2) < 2**63 for n <= 62
    if n * bits > 64 or n > 62:
        return _pykernels.shuffle_counts(a, b)

    cdef vector[uint64_t] av, bv
    for x in a:
        av.push_back(<uint64_t>x)
    for x in b:
        bv.push_back(<uint64_t>x)

    cdef vector[unordered_map[uint64_t, int64_t]] prev, cur
    prev.resize(lb + 1)
    cur.resize(lb + 1)
    cdef Py_ssize_t i, j
    cdef uint64_t la_letter, lb_letter
    cdef unordered_map[uint64_t, int64_t].iterator it

    prev[0][0] = 1
    for j in range(1, lb + 1):
        it = prev[j - 1].begin()
        while it != prev[j - 1].end():
            prev[j][(deref(it).first << bits) | bv[j - 1]] += deref(it).second
            inc(it)

    for i in range(1, la + 1):
        la_letter = av[i - 1]
        for j in range(lb + 1):
            cur[j].clear()
            it = prev[j].begin()
            while it != prev[j].end():
                cur[j][(deref(it).first << bits) | la_letter] += deref(it).second
                inc(it)
            if j > 0:
                lb_letter = bv[j - 1]
                it = cur[j - 1].begin()
                while it != cur[j - 1].end():
                    cur[j][(deref(it).first << bits) | lb_letter] += deref(it).second
                    inc(it)
        prev.swap(cur)

    cdef uint64_t mask = (<uint64_t>1 << bits) - 1
    cdef uint64_t key
    cdef Py_ssize_t k
    out = {}
    it = prev[lb].begin()
    while it != prev[lb].end():
        key = deref(it).first
        word = [0] * n
        for k in range(n - 1, -1, -1):
            word[k] = <int>(key & mask)
            key >>= bits
        out[tuple(word)] = deref(it).second
        inc(it)
    return out


def li_taylor(letters, Py_ssize_t n_max):
    """Float Taylor coefficients ``c[0..n_max]`` of Li_w(z) for w over {0, 1}."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arr = np.zeros(n_max + 1)
    cdef double[:] c = arr
    cdef Py_ssize_t m
    cdef double acc, prev_c
    c[0] = 1.0
    for x in reversed(tuple(letters)):
        if x == 0:
            for m in range(1, n_max + 1):
                c[m] = c[m] / m
        else:
            acc = c[0]
            for m in range(1, n_max + 1):
                prev_c = c[m]
                c[m] = acc / m
                acc += prev_c
        c[0] = 0.0
    return arr
