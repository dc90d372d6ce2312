# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled batch kernels, the fast twin of _kernels_py.

Same functions, same signatures, same buffer layouts, bit-identical results;
see _kernels_py for the layout documentation.  The hash walks each key's
bytes explicitly (little-endian assembly of 8-byte chunks), so output does
not depend on host byte order.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_Check, PyBytes_GET_SIZE
from libc.stdint cimport uint8_t, uint64_t

import numpy as np

CBF_MAX = 15

cdef uint64_t _M = 0xC6A4A7935BD1E995
cdef int _R = 47


cdef inline uint64_t _load64(const unsigned char *p) noexcept nogil:
    return ((<uint64_t>p[0])
            | (<uint64_t>p[1]) << 8
            | (<uint64_t>p[2]) << 16
            | (<uint64_t>p[3]) << 24
            | (<uint64_t>p[4]) << 32
            | (<uint64_t>p[5]) << 40
            | (<uint64_t>p[6]) << 48
            | (<uint64_t>p[7]) << 56)


cdef inline uint64_t _murmur64(const unsigned char *data, Py_ssize_t n, uint64_t seed) noexcept nogil:
    cdef uint64_t h = seed ^ (<uint64_t>n * _M)
    cdef uint64_t k
    cdef uint64_t tail = 0
    cdef Py_ssize_t full = n - (n & 7)
    cdef Py_ssize_t off, t

    for off in range(0, full, 8):
        k = _load64(data + off)
        k = k * _M
        k = k ^ (k >> _R)
        k = k * _M
        h = h ^ k
        h = h * _M

    if n & 7:
        for t in range(n & 7):
            tail = tail | ((<uint64_t>data[full + t]) << (8 * t))
        h = h ^ tail
        h = h * _M

    h = h ^ (h >> _R)
    h = h * _M
    h = h ^ (h >> _R)
    return h


cdef inline uint64_t _counter_mask(int alpha) noexcept nogil:
    if alpha >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << alpha) - 1


cdef inline const unsigned char *_key_data(object key, Py_ssize_t *n) except NULL:
    if not PyBytes_Check(key):
        raise TypeError("keys must be bytes")
    n[0] = PyBytes_GET_SIZE(key)
    return <const unsigned char *>PyBytes_AS_STRING(key)


def hash64(key, seed):
    """Hash `key` to a 64-bit unsigned integer under `seed` (MurmurHash64A)."""
    cdef Py_ssize_t n
    cdef const unsigned char *data = _key_data(key, &n)
    return _murmur64(data, n, <uint64_t>seed)


cdef uint64_t[::1] _seed_view(object seeds):
    return np.ascontiguousarray(seeds, dtype=np.uint64)


cdef void _check_dims(uint64_t x, uint64_t y, uint64_t eta, int alpha) except *:
    if x == 0 or y == 0 or eta == 0:
        raise ValueError("x, y, and eta must all be positive")
    if not 1 <= alpha <= 64:
        raise ValueError("alpha must be in [1, 64]")


def countbf_insert(uint64_t[::1] cells, list keys, seeds, uint64_t x, uint64_t y, uint64_t eta, int alpha):
    """Increment the k derived counters for every key; return overflow count."""
    _check_dims(x, y, eta, alpha)
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef uint64_t low = _counter_mask(alpha)
    cdef Py_ssize_t overflows = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t h, ci
    cdef int shift
    for key in keys:
        data = _key_data(key, &n)
        for s in range(nseeds):
            h = _murmur64(data, n, sv[s])
            ci = (h % x) * y + (h % y)
            shift = alpha * <int>(h % eta)
            if (cells[ci] >> shift) & low == low:
                overflows += 1
            else:
                cells[ci] = cells[ci] + ((<uint64_t>1) << shift)
    return overflows


def countbf_lookup(uint64_t[::1] cells, list keys, seeds, uint64_t x, uint64_t y, uint64_t eta, int alpha, out=None):
    """Test every key (all k counters >= 1); fill `out` with 0/1 if given."""
    _check_dims(x, y, eta, alpha)
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef uint8_t[::1] ov = out if out is not None else None
    cdef bint have_out = out is not None
    cdef uint64_t low = _counter_mask(alpha)
    cdef Py_ssize_t positives = 0, idx = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t h, ci
    cdef bint hit
    for key in keys:
        data = _key_data(key, &n)
        hit = True
        for s in range(nseeds):
            h = _murmur64(data, n, sv[s])
            ci = (h % x) * y + (h % y)
            if (cells[ci] >> (alpha * <int>(h % eta))) & low == 0:
                hit = False
                break
        if hit:
            positives += 1
        if have_out:
            ov[idx] = 1 if hit else 0
        idx += 1
    return positives


def countbf_delete(uint64_t[::1] cells, list keys, seeds, uint64_t x, uint64_t y, uint64_t eta, int alpha):
    """Decrement the k derived counters for every key; return underflow count."""
    _check_dims(x, y, eta, alpha)
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef uint64_t low = _counter_mask(alpha)
    cdef Py_ssize_t underflows = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t h, ci, value
    cdef int shift
    for key in keys:
        data = _key_data(key, &n)
        for s in range(nseeds):
            h = _murmur64(data, n, sv[s])
            ci = (h % x) * y + (h % y)
            shift = alpha * <int>(h % eta)
            value = (cells[ci] >> shift) & low
            if value == 0:
                underflows += 1
            elif value != low:  # saturated counters stay pinned
                cells[ci] = cells[ci] - ((<uint64_t>1) << shift)
    return underflows


def countbf_count(uint64_t[::1] cells, list keys, seeds, uint64_t x, uint64_t y, uint64_t eta, int alpha, uint64_t[::1] out):
    """Fill `out` with the minimum counter value over the k probes per key."""
    _check_dims(x, y, eta, alpha)
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef uint64_t low = _counter_mask(alpha)
    cdef Py_ssize_t idx = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t h, value, best
    for key in keys:
        data = _key_data(key, &n)
        best = low
        for s in range(nseeds):
            h = _murmur64(data, n, sv[s])
            value = (cells[(h % x) * y + (h % y)] >> (alpha * <int>(h % eta))) & low
            if value < best:
                best = value
                if best == 0:
                    break
        out[idx] = best
        idx += 1


def sbf_insert(uint64_t[::1] words, list keys, seeds, uint64_t m_bits):
    """Set the k derived bits for every key."""
    if m_bits == 0:
        raise ValueError("m_bits must be positive")
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef Py_ssize_t n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t pos
    for key in keys:
        data = _key_data(key, &n)
        for s in range(nseeds):
            pos = _murmur64(data, n, sv[s]) % m_bits
            words[pos >> 6] = words[pos >> 6] | ((<uint64_t>1) << (pos & 63))


def sbf_lookup(uint64_t[::1] words, list keys, seeds, uint64_t m_bits, out=None):
    """Test every key (all k bits set); fill `out` with 0/1 if given."""
    if m_bits == 0:
        raise ValueError("m_bits must be positive")
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef uint8_t[::1] ov = out if out is not None else None
    cdef bint have_out = out is not None
    cdef Py_ssize_t positives = 0, idx = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t pos
    cdef bint hit
    for key in keys:
        data = _key_data(key, &n)
        hit = True
        for s in range(nseeds):
            pos = _murmur64(data, n, sv[s]) % m_bits
            if (words[pos >> 6] >> (pos & 63)) & 1 == 0:
                hit = False
                break
        if hit:
            positives += 1
        if have_out:
            ov[idx] = 1 if hit else 0
        idx += 1
    return positives


def cbf_insert(uint8_t[::1] nibbles, list keys, seeds, uint64_t n_counters):
    """Increment the k derived 4-bit counters per key; return overflow count."""
    if n_counters == 0:
        raise ValueError("n_counters must be positive")
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef Py_ssize_t overflows = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t pos
    cdef uint8_t byte, value
    for key in keys:
        data = _key_data(key, &n)
        for s in range(nseeds):
            pos = _murmur64(data, n, sv[s]) % n_counters
            byte = nibbles[pos >> 1]
            value = (byte >> 4) if pos & 1 else (byte & 0x0F)
            if value == 15:
                overflows += 1
            elif pos & 1:
                nibbles[pos >> 1] = (byte & 0x0F) | ((value + 1) << 4)
            else:
                nibbles[pos >> 1] = (byte & 0xF0) | (value + 1)
    return overflows


def cbf_lookup(uint8_t[::1] nibbles, list keys, seeds, uint64_t n_counters, out=None):
    """Test every key (all k counters >= 1); fill `out` with 0/1 if given."""
    if n_counters == 0:
        raise ValueError("n_counters must be positive")
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef uint8_t[::1] ov = out if out is not None else None
    cdef bint have_out = out is not None
    cdef Py_ssize_t positives = 0, idx = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t pos
    cdef uint8_t byte, value
    cdef bint hit
    for key in keys:
        data = _key_data(key, &n)
        hit = True
        for s in range(nseeds):
            pos = _murmur64(data, n, sv[s]) % n_counters
            byte = nibbles[pos >> 1]
            value = (byte >> 4) if pos & 1 else (byte & 0x0F)
            if value == 0:
                hit = False
                break
        if hit:
            positives += 1
        if have_out:
            ov[idx] = 1 if hit else 0
        idx += 1
    return positives


def cbf_delete(uint8_t[::1] nibbles, list keys, seeds, uint64_t n_counters):
    """Decrement the k derived 4-bit counters per key; return underflow count."""
    if n_counters == 0:
        raise ValueError("n_counters must be positive")
    cdef uint64_t[::1] sv = _seed_view(seeds)
    cdef Py_ssize_t underflows = 0, n, s
    cdef Py_ssize_t nseeds = sv.shape[0]
    cdef const unsigned char *data
    cdef uint64_t pos
    cdef uint8_t byte, value
    for key in keys:
        data = _key_data(key, &n)
        for s in range(nseeds):
            pos = _murmur64(data, n, sv[s]) % n_counters
            byte = nibbles[pos >> 1]
            value = (byte >> 4) if pos & 1 else (byte & 0x0F)
            if value == 0:
                underflows += 1
            elif value != 15:  # saturated counters stay pinned
                if pos & 1:
                    nibbles[pos >> 1] = (byte & 0x0F) | ((value - 1) << 4)
                else:
                    nibbles[pos >> 1] = (byte & 0xF0) | (value - 1)
    return underflows
