"""Keyed 64-bit hashing and index derivation.

One hash value drives everything: a key is hashed once per seed, and each
hash is reduced to a (row, column, counter) triple by three modulo
operations.  The hash itself is MurmurHash64A with the seed folded into the
initial state, implemented here in pure Python; the compiled backend carries
an identical C version.  Golden vectors pin the exact output values so the
two implementations (and future releases) can never drift apart silently.

Seeds for the k hash calls of one filter are expanded from a single master
seed with a splitmix-style generator, so a filter's identity is fully
described by (master_seed, k) and growing k keeps the existing seed prefix.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

_MASK64 = (1 << 64) - 1

# MurmurHash64A multiplier and shift.
_MURMUR_M = 0xC6A4A7935BD1E995
_MURMUR_R = 47

# splitmix64 increment and mixer multipliers.
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MIX_M1 = 0xBF58476D1CE4E5B9
_MIX_M2 = 0x94D049BB133111EB


class CellIndex(NamedTuple):
    """Position of one counter: row i, column j, in-cell counter slot l."""

    i: int
    j: int
    l: int


def hash64(key: bytes, seed: int) -> int:
    """Hash `key` to a 64-bit unsigned integer under `seed`.

    MurmurHash64A: the seed is XORed into the initial state together with the
    key length, the key is consumed in little-endian 8-byte chunks, and the
    tail (< 8 bytes) is XORed in before the final avalanche.  Deterministic
    across runs and platforms; not cryptographic.
    """
    seed = int(seed) & _MASK64  # plain int: numpy scalars would wrap noisily
    n = len(key)
    h = seed ^ ((n * _MURMUR_M) & _MASK64)

    full = n - (n % 8)
    for off in range(0, full, 8):
        k = int.from_bytes(key[off : off + 8], "little")
        k = (k * _MURMUR_M) & _MASK64
        k ^= k >> _MURMUR_R
        k = (k * _MURMUR_M) & _MASK64
        h ^= k
        h = (h * _MURMUR_M) & _MASK64

    tail = key[full:]
    if tail:
        h ^= int.from_bytes(tail, "little")
        h = (h * _MURMUR_M) & _MASK64

    h ^= h >> _MURMUR_R
    h = (h * _MURMUR_M) & _MASK64
    h ^= h >> _MURMUR_R
    return h


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; return (new_state, output)."""
    state = (state + _SPLITMIX_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX_M1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_M2) & _MASK64
    return state, z ^ (z >> 31)


def expand_seeds(master_seed: int, count: int) -> tuple[int, ...]:
    """Derive `count` pairwise-distinct 64-bit seeds from one master seed.

    The sequence is a prefix-stable stream: expand_seeds(s, k) is always the
    first k entries of expand_seeds(s, k+1), so filters that share a master
    seed but use different k still agree on their common hash functions.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    state = master_seed & _MASK64
    seeds: list[int] = []
    seen: set[int] = set()
    while len(seeds) < count:
        state, value = splitmix64(state)
        if value not in seen:  # collisions are astronomically rare but cheap to guard
            seen.add(value)
            seeds.append(value)
    return tuple(seeds)


def derive_indices(h: int, x: int, y: int, eta: int) -> CellIndex:
    """Reduce one hash to (row, column, counter-slot) = (h%x, h%y, h%eta)."""
    if x <= 0 or y <= 0 or eta <= 0:
        raise ValueError("x, y, and eta must all be positive")
    return CellIndex(h % x, h % y, h % eta)


def dump_golden_vectors(path: str, vectors: Iterable[tuple[bytes, int, int]]) -> None:
    """Write golden vectors as text lines `hex(key) <TAB> seed <TAB> hash`."""
    with open(path, "w", encoding="ascii") as fh:
        for key, seed, value in vectors:
            fh.write(f"{key.hex()}\t{seed}\t{value}\n")


def load_golden_vectors(path: str) -> list[tuple[bytes, int, int]]:
    """Read vectors written by dump_golden_vectors."""
    out: list[tuple[bytes, int, int]] = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            key_hex, seed, value = line.split("\t")
            out.append((bytes.fromhex(key_hex), int(seed), int(value)))
    return out
