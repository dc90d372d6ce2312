"""Derive filter geometry from (n, epsilon, alpha, beta).

The classic Bloom bit budget m = ceil(-n ln(eps) / ln(2)^2) and hash count
k = round((m/n) ln 2) anchor everything.  The packed filter then spends
roughly half that budget: it uses k/2 hash functions (round half up, floor
1) over b = ceil(m / (2 beta)) cells arranged as an x-by-y grid of distinct
primes straddling q = ceil(sqrt(b)): with PN the ascending prime sequence
and i the 1-based rank of the smallest prime >= q, x = PN[i+3] and
y = PN[i-3].  Tiny grids where i < 4 fall back to the two smallest distinct
primes >= q.  All rounding is by ceiling except hash counts, so memory is
never under-provisioned.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .cells import build_masks
from .hashing import expand_seeds


@dataclass(frozen=True)
class FilterPlan:
    """Complete configuration of one packed filter."""

    n: int
    epsilon: float
    m_bits: int
    k: int
    alpha: int
    beta: int
    eta: int
    x: int
    y: int
    seeds: tuple[int, ...]

    @property
    def memory_bits(self) -> int:
        """Cell-array footprint in bits: x * y * beta."""
        return self.x * self.y * self.beta


def _validate_load(n: int, epsilon: float) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0, 1)")


def _round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


def sbf_bits(n: int, epsilon: float) -> int:
    """Bit budget of a standard Bloom filter: ceil(-n ln(eps) / ln(2)^2)."""
    _validate_load(n, epsilon)
    return math.ceil(-n * math.log(epsilon) / (math.log(2) ** 2))


def optimal_k(m: int, n: int) -> int:
    """Optimal hash count for an m-bit filter over n keys: round((m/n) ln 2)."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    return max(1, _round_half_up(m / n * math.log(2)))


def countbf_k(m: int, n: int) -> int:
    """Hash count for the packed filter: half the optimal count, floor 1."""
    return max(1, _round_half_up(optimal_k(m, n) / 2))


def is_prime(p: int) -> bool:
    """Trial-division primality check (dimensions stay far below 2**32)."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _primes_through(limit: int) -> list[int]:
    """Ascending primes <= limit by Eratosthenes sieve."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [p for p in range(2, limit + 1) if flags[p]]


def dimensions(m: int, beta: int = 64) -> tuple[int, int]:
    """Prime grid (x, y) for an m-bit budget and beta-bit cells.

    The grid holds b = ceil(m / (2 beta)) cells, about half the budget.
    Primes are sieved per call; no global table is kept.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if beta not in (32, 64):
        raise ValueError("beta must be 32 or 64")
    b = math.ceil(m / (2 * beta))
    q = math.ceil(math.sqrt(b))
    limit = max(64, 2 * q)
    while True:
        primes = _primes_through(limit)
        idx = bisect_left(primes, q)
        if idx + 3 < len(primes):
            break
        limit *= 2  # rare: not enough primes past q yet
    if idx + 1 >= 4:  # 1-based rank of the anchor prime
        return primes[idx + 3], primes[idx - 3]
    return primes[idx + 1], primes[idx]


def plan(
    n: int,
    epsilon: float,
    alpha: int,
    beta: int = 64,
    master_seed: int = 42,
) -> FilterPlan:
    """Assemble the full plan: budget, hash count, grid, and seeds."""
    masks = build_masks(alpha, beta)
    m = sbf_bits(n, epsilon)
    k = countbf_k(m, n)
    x, y = dimensions(m, beta)
    return FilterPlan(
        n=n,
        epsilon=epsilon,
        m_bits=m,
        k=k,
        alpha=alpha,
        beta=beta,
        eta=masks.eta,
        x=x,
        y=y,
        seeds=expand_seeds(master_seed, k),
    )
