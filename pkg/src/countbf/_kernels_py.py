"""Pure-Python batch kernels.

Reference implementations of the hot loops: hashing, packed-counter updates,
and bitmap updates, each operating on a whole list of keys per call.  The
compiled twin in _speedups.pyx exposes the same functions with the same
signatures and must produce bit-identical results; tests drive both against
each other.  Buffers are 1D numpy arrays owned by the caller:

  countbf  cells    uint64[x*y]            cell (i, j) at index i*y + j
  sbf      words    uint64[ceil(m/64)]     bit p at word p>>6, bit p&63
  cbf      nibbles  uint8[ceil(c/2)]       counter p at byte p>>1, high nibble if p odd

All counter updates saturate stickily at their maximum value; decrements are
refused at zero (underflow) and at the maximum (tally unknown).
"""

from __future__ import annotations

from .hashing import hash64

__all__ = [
    "hash64",
    "countbf_insert",
    "countbf_lookup",
    "countbf_delete",
    "countbf_count",
    "sbf_insert",
    "sbf_lookup",
    "cbf_insert",
    "cbf_lookup",
    "cbf_delete",
]

CBF_MAX = 15  # 4-bit baseline counters


def _int_seeds(seeds) -> list[int]:
    """Normalize any seed container (numpy arrays included) to plain ints."""
    return [int(s) for s in seeds]


def countbf_insert(cells, keys, seeds, x, y, eta, alpha) -> int:
    """Increment the k derived counters for every key; return overflow count."""
    seeds = _int_seeds(seeds)
    low = (1 << alpha) - 1
    overflows = 0
    for key in keys:
        for seed in seeds:
            h = hash64(key, seed)
            ci = (h % x) * y + (h % y)
            shift = alpha * (h % eta)
            value = (int(cells[ci]) >> shift) & low
            if value == low:
                overflows += 1
            else:
                cells[ci] = int(cells[ci]) + (1 << shift)
    return overflows


def countbf_lookup(cells, keys, seeds, x, y, eta, alpha, out=None) -> int:
    """Test every key (all k counters >= 1); fill `out` with 0/1 if given."""
    seeds = _int_seeds(seeds)
    low = (1 << alpha) - 1
    positives = 0
    for idx, key in enumerate(keys):
        hit = True
        for seed in seeds:
            h = hash64(key, seed)
            ci = (h % x) * y + (h % y)
            if (int(cells[ci]) >> (alpha * (h % eta))) & low == 0:
                hit = False
                break
        if hit:
            positives += 1
        if out is not None:
            out[idx] = 1 if hit else 0
    return positives


def countbf_delete(cells, keys, seeds, x, y, eta, alpha) -> int:
    """Decrement the k derived counters for every key; return underflow count."""
    seeds = _int_seeds(seeds)
    low = (1 << alpha) - 1
    underflows = 0
    for key in keys:
        for seed in seeds:
            h = hash64(key, seed)
            ci = (h % x) * y + (h % y)
            shift = alpha * (h % eta)
            value = (int(cells[ci]) >> shift) & low
            if value == 0:
                underflows += 1
            elif value != low:  # saturated counters stay pinned
                cells[ci] = int(cells[ci]) - (1 << shift)
    return underflows


def countbf_count(cells, keys, seeds, x, y, eta, alpha, out) -> None:
    """Fill `out` with the minimum counter value over the k probes per key."""
    seeds = _int_seeds(seeds)
    low = (1 << alpha) - 1
    for idx, key in enumerate(keys):
        best = low
        for seed in seeds:
            h = hash64(key, seed)
            ci = (h % x) * y + (h % y)
            value = (int(cells[ci]) >> (alpha * (h % eta))) & low
            if value < best:
                best = value
                if best == 0:
                    break
        out[idx] = best


def sbf_insert(words, keys, seeds, m_bits) -> None:
    """Set the k derived bits for every key."""
    seeds = _int_seeds(seeds)
    for key in keys:
        for seed in seeds:
            pos = hash64(key, seed) % m_bits
            words[pos >> 6] = int(words[pos >> 6]) | (1 << (pos & 63))


def sbf_lookup(words, keys, seeds, m_bits, out=None) -> int:
    """Test every key (all k bits set); fill `out` with 0/1 if given."""
    seeds = _int_seeds(seeds)
    positives = 0
    for idx, key in enumerate(keys):
        hit = True
        for seed in seeds:
            pos = hash64(key, seed) % m_bits
            if (int(words[pos >> 6]) >> (pos & 63)) & 1 == 0:
                hit = False
                break
        if hit:
            positives += 1
        if out is not None:
            out[idx] = 1 if hit else 0
    return positives


def _cbf_read(nibbles, pos: int) -> int:
    byte = int(nibbles[pos >> 1])
    return (byte >> 4) if pos & 1 else (byte & 0x0F)


def _cbf_write(nibbles, pos: int, value: int) -> None:
    bi = pos >> 1
    byte = int(nibbles[bi])
    if pos & 1:
        nibbles[bi] = (byte & 0x0F) | (value << 4)
    else:
        nibbles[bi] = (byte & 0xF0) | value


def cbf_insert(nibbles, keys, seeds, n_counters) -> int:
    """Increment the k derived 4-bit counters per key; return overflow count."""
    seeds = _int_seeds(seeds)
    overflows = 0
    for key in keys:
        for seed in seeds:
            pos = hash64(key, seed) % n_counters
            value = _cbf_read(nibbles, pos)
            if value == CBF_MAX:
                overflows += 1
            else:
                _cbf_write(nibbles, pos, value + 1)
    return overflows


def cbf_lookup(nibbles, keys, seeds, n_counters, out=None) -> int:
    """Test every key (all k counters >= 1); fill `out` with 0/1 if given."""
    seeds = _int_seeds(seeds)
    positives = 0
    for idx, key in enumerate(keys):
        hit = True
        for seed in seeds:
            pos = hash64(key, seed) % n_counters
            if _cbf_read(nibbles, pos) == 0:
                hit = False
                break
        if hit:
            positives += 1
        if out is not None:
            out[idx] = 1 if hit else 0
    return positives


def cbf_delete(nibbles, keys, seeds, n_counters) -> int:
    """Decrement the k derived 4-bit counters per key; return underflow count."""
    seeds = _int_seeds(seeds)
    underflows = 0
    for key in keys:
        for seed in seeds:
            pos = hash64(key, seed) % n_counters
            value = _cbf_read(nibbles, pos)
            if value == 0:
                underflows += 1
            elif value != CBF_MAX:
                _cbf_write(nibbles, pos, value - 1)
    return underflows
