# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twist kernels. Same contract as ``_pure``."""

from libc.string cimport memset


cdef double _coset_twist_sum(const unsigned char[:] codes, Py_ssize_t m) except? -1.0:
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t j, i, a, b, size
    cdef long counts[26]
    cdef long tmp, top, bottom
    cdef unsigned char c
    cdef double total = 0.0
    for j in range(m):
        memset(counts, 0, sizeof(counts))
        size = 0
        i = j
        while i < n:
            c = codes[i]
            if c > 25:
                raise ValueError("codes must be letter indices in 0..25")
            counts[c] += 1
            size += 1
            i += m
        # insertion sort, ascending
        for a in range(1, 26):
            tmp = counts[a]
            b = a - 1
            while b >= 0 and counts[b] > tmp:
                counts[b + 1] = counts[b]
                b -= 1
            counts[b + 1] = tmp
        top = 0
        bottom = 0
        for a in range(13):
            bottom += counts[a]
            top += counts[a + 13]
        total += <double>(top - bottom) / <double>size
    return total


def coset_twist_sum(const unsigned char[:] codes, Py_ssize_t m):
    return _coset_twist_sum(codes, m)


def twist_index(const unsigned char[:] codes, Py_ssize_t m):
    cdef Py_ssize_t n = codes.shape[0]
    if m < 1 or m > n:
        raise ValueError(f"m must satisfy 1 <= m <= N={n}, got {m}")
    return 100.0 * _coset_twist_sum(codes, m) / m


def twist_range(const unsigned char[:] codes, Py_ssize_t m_max):
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t m
    if m_max < 1 or m_max > n:
        raise ValueError(f"m_max must satisfy 1 <= m_max <= N={n}, got {m_max}")
    return [100.0 * _coset_twist_sum(codes, m) / m for m in range(1, m_max + 1)]


def shift_codes(const unsigned char[:] codes, const unsigned char[:] shifts, int sign=1):
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t k = shifts.shape[0]
    cdef Py_ssize_t i, ki = 0
    if k == 0:
        raise ValueError("shift sequence must be nonempty")
    out = bytearray(n)
    cdef unsigned char[:] view = out
    for i in range(n):
        view[i] = <unsigned char>(((<int>codes[i] + sign * <int>shifts[ki]) % 26 + 26) % 26)
        ki += 1
        if ki == k:
            ki = 0
    return bytes(out)
