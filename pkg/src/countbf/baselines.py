"""Comparison baselines: standard and conventional counting Bloom filters.

Both size themselves with the classic budget m = sbf_bits(n, epsilon) and
k = optimal_k(m, n), and both reduce each hash to the same bit position
h % m.  SBF keeps one bit per position; CBF keeps a saturating 4-bit counter
per position (two per byte), so it supports delete and costs exactly 4x the
memory.  Because positions and seeds coincide, SBF and CBF built from the
same (n, epsilon, master_seed) answer every lookup identically.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import backend
from .hashing import expand_seeds
from .sizing import optimal_k, sbf_bits

CBF_COUNTER_BITS = 4


def _resolve_seeds(k: int, master_seed: int, seeds) -> tuple[int, ...]:
    if seeds is None:
        return expand_seeds(master_seed, k)
    seeds = tuple(int(s) for s in seeds)
    if len(seeds) != k:
        raise ValueError(f"expected {k} seeds, got {len(seeds)}")
    if len(set(seeds)) != k:
        raise ValueError("seeds must be pairwise distinct")
    return seeds


class SBF:
    """Standard Bloom filter: m-bit bitmap, k set-or-test positions per key.

    The bitmap is padded to whole 64-bit words internally; the reported
    memory is the logical m bits.  No delete exists.
    """

    name = "sbf"
    alpha = None

    def __init__(self, n: int, epsilon: float, master_seed: int = 42, *, seeds=None, kernels=None):
        self.n = n
        self.epsilon = epsilon
        self.m_bits = sbf_bits(n, epsilon)
        self.k = optimal_k(self.m_bits, n)
        self.seeds = _resolve_seeds(self.k, master_seed, seeds)
        self.words = np.zeros((self.m_bits + 63) // 64, dtype=np.uint64)
        self._seeds = np.asarray(self.seeds, dtype=np.uint64)
        self._kernels = kernels if kernels is not None else backend.kernels

    @property
    def wastage_bits(self) -> int:
        return 0

    def insert(self, key: bytes) -> None:
        self.insert_many([key])

    def insert_many(self, keys: Sequence[bytes]) -> None:
        self._kernels.sbf_insert(self.words, list(keys), self._seeds, self.m_bits)

    def lookup(self, key: bytes) -> bool:
        return self.lookup_many([key]) == 1

    def lookup_many(self, keys: Sequence[bytes], out: np.ndarray | None = None) -> int:
        return self._kernels.sbf_lookup(self.words, list(keys), self._seeds, self.m_bits, out)

    def memory_bits(self) -> int:
        return self.m_bits


class CBF:
    """Counting Bloom filter: one saturating 4-bit counter per SBF position."""

    name = "cbf"
    alpha = CBF_COUNTER_BITS

    def __init__(self, n: int, epsilon: float, master_seed: int = 42, *, seeds=None, kernels=None):
        self.n = n
        self.epsilon = epsilon
        self.n_counters = sbf_bits(n, epsilon)
        self.k = optimal_k(self.n_counters, n)
        self.seeds = _resolve_seeds(self.k, master_seed, seeds)
        self.nibbles = np.zeros((self.n_counters + 1) // 2, dtype=np.uint8)
        self.overflow_events = 0
        self.underflow_events = 0
        self._seeds = np.asarray(self.seeds, dtype=np.uint64)
        self._kernels = kernels if kernels is not None else backend.kernels

    @property
    def wastage_bits(self) -> int:
        return 0

    def insert(self, key: bytes) -> int:
        return self.insert_many([key])

    def insert_many(self, keys: Sequence[bytes]) -> int:
        overflows = self._kernels.cbf_insert(self.nibbles, list(keys), self._seeds, self.n_counters)
        self.overflow_events += overflows
        return overflows

    def lookup(self, key: bytes) -> bool:
        return self.lookup_many([key]) == 1

    def lookup_many(self, keys: Sequence[bytes], out: np.ndarray | None = None) -> int:
        return self._kernels.cbf_lookup(self.nibbles, list(keys), self._seeds, self.n_counters, out)

    def delete(self, key: bytes) -> int:
        """Delete one key; returns how many of its k decrements were refused."""
        underflows = self._kernels.cbf_delete(self.nibbles, [key], self._seeds, self.n_counters)
        self.underflow_events += underflows
        return underflows

    def memory_bits(self) -> int:
        return CBF_COUNTER_BITS * self.n_counters
