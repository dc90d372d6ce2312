"""The packed counting filter.

CountBF keeps an x-by-y grid of beta-bit cells, each packed with eta
saturating alpha-bit counters.  Every key is hashed once per seed and each
hash places one increment at cell (h % x, h % y), counter slot h % eta.
Lookup tests all k slots for a nonzero counter, delete decrements them under
the underflow/saturation guards, and count estimates a key's multiplicity as
the minimum of its k counters (a one-sided overestimate while no counter has
saturated).

Storage is a numpy uint64 array even for beta=32; the mask algebra confines
values to the low beta bits and snapshots serialize in the logical word
width.  Writers need exclusive access; any number of readers may run when no
writer is active.  Deletes are not transactional: a delete that underflows
has already applied its other decrements, which is why it reports a count
instead of raising.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from . import backend
from .cells import build_masks
from .sizing import FilterPlan, is_prime


class FilterStats(NamedTuple):
    inserted_ops: int
    overflow_events: int
    underflow_events: int


_SNAPSHOT_MAGIC = b"COUNTBF1"


class CountBF:
    """2D grid of bit-packed saturating counters with k-seed hashing."""

    name = "countbf"

    def __init__(self, plan: FilterPlan, kernels=None):
        if plan.x == plan.y:
            raise ValueError("grid dimensions must differ")
        if not (is_prime(plan.x) and is_prime(plan.y)):
            raise ValueError("grid dimensions must both be prime")
        if plan.k < 1:
            raise ValueError("hash count k must be >= 1")
        if len(plan.seeds) != plan.k:
            raise ValueError("plan must carry exactly k seeds")
        if len(set(plan.seeds)) != plan.k:
            raise ValueError("seeds must be pairwise distinct")
        self.plan = plan
        self.masks = build_masks(plan.alpha, plan.beta)
        if self.masks.eta != plan.eta:
            raise ValueError("plan eta disagrees with floor(beta/alpha)")
        self.cells = np.zeros((plan.x, plan.y), dtype=np.uint64)
        self.inserted_ops = 0
        self.overflow_events = 0
        self.underflow_events = 0
        self._flat = self.cells.reshape(-1)
        self._seeds = np.asarray(plan.seeds, dtype=np.uint64)
        self._kernels = kernels if kernels is not None else backend.kernels

    @property
    def alpha(self) -> int:
        return self.plan.alpha

    @property
    def wastage_bits(self) -> int:
        """Unused bits per cell: beta mod alpha."""
        return self.plan.beta % self.plan.alpha

    def _args(self) -> tuple:
        p = self.plan
        return (self._flat, self._seeds, p.x, p.y, p.eta, p.alpha)

    def insert(self, key: bytes) -> int:
        """Insert one key; returns how many of its k increments saturated."""
        return self.insert_many([key])

    def insert_many(self, keys: Sequence[bytes]) -> int:
        """Insert keys in order; returns total saturated increments."""
        flat, seeds, x, y, eta, alpha = self._args()
        overflows = self._kernels.countbf_insert(flat, list(keys), seeds, x, y, eta, alpha)
        self.inserted_ops += len(keys)
        self.overflow_events += overflows
        return overflows

    def lookup(self, key: bytes) -> bool:
        """Probable membership: all k counters nonzero."""
        return self.lookup_many([key]) == 1

    def lookup_many(self, keys: Sequence[bytes], out: np.ndarray | None = None) -> int:
        """Count positive answers; optionally fill `out` (uint8) with 0/1."""
        flat, seeds, x, y, eta, alpha = self._args()
        return self._kernels.countbf_lookup(flat, list(keys), seeds, x, y, eta, alpha, out)

    def delete(self, key: bytes) -> int:
        """Delete one key; returns how many of its k decrements were refused.

        A nonzero return signals deletion of a probably-absent key.  The
        refused decrements aside, the others have already been applied.
        """
        flat, seeds, x, y, eta, alpha = self._args()
        underflows = self._kernels.countbf_delete(flat, [key], seeds, x, y, eta, alpha)
        self.underflow_events += underflows
        return underflows

    def count(self, key: bytes) -> int:
        """Estimated multiplicity: minimum of the key's k counters."""
        return int(self.count_many([key])[0])

    def count_many(self, keys: Sequence[bytes]) -> np.ndarray:
        """Estimated multiplicities for all keys, as a uint64 array."""
        flat, seeds, x, y, eta, alpha = self._args()
        out = np.zeros(len(keys), dtype=np.uint64)
        self._kernels.countbf_count(flat, list(keys), seeds, x, y, eta, alpha, out)
        return out

    def memory_bits(self) -> int:
        """Cell-array footprint in bits: x * y * beta."""
        return self.plan.memory_bits

    def occupancy(self) -> float:
        """Fraction of nonzero counters, by full scan."""
        nonzero = 0
        for l in range(self.masks.eta):
            nonzero += int(np.count_nonzero(self._flat & np.uint64(self.masks.extract[l])))
        return nonzero / (self.plan.x * self.plan.y * self.masks.eta)

    def stats(self) -> FilterStats:
        return FilterStats(self.inserted_ops, self.overflow_events, self.underflow_events)

    def to_snapshot(self) -> bytes:
        """Serialize: magic, then x, y, alpha, beta, k, seeds as little-endian
        64-bit fields, then the x*y cell words little-endian in the logical
        word width (4 bytes when beta=32, 8 when beta=64)."""
        p = self.plan
        header = [p.x, p.y, p.alpha, p.beta, p.k, *p.seeds]
        blob = bytearray(_SNAPSHOT_MAGIC)
        for value in header:
            blob += value.to_bytes(8, "little")
        word = "<u4" if p.beta == 32 else "<u8"
        blob += self._flat.astype(word).tobytes()
        return bytes(blob)
