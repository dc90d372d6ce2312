"""Bit algebra over one cell word.

A cell is a beta-bit unsigned integer (32 or 64 bits) packed with
eta = floor(beta/alpha) saturating alpha-bit counters.  Counter l lives in
bits [alpha*l, alpha*(l+1)); the top (beta mod alpha) bits are waste and stay
zero.  Every counter operation is expressed through two mask tables:

  extract[l] isolates counter l:      (2^alpha - 1) << (alpha * l)
  reset[l]   clears counter l:        ~extract[l] within beta bits

Counters saturate stickily at MAX = 2^alpha - 1: once a counter reaches MAX
it is never incremented past it and never decremented, because its true
tally may exceed what it can represent and decrementing it could manufacture
false negatives downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class MaskTable:
    """Extract/reset masks for all counter slots of an (alpha, beta) cell."""

    alpha: int
    beta: int
    eta: int = field(init=False)
    max_value: int = field(init=False)
    extract: tuple[int, ...] = field(init=False)
    reset: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.beta not in (32, 64):
            raise ValueError("beta must be 32 or 64")
        if not 1 <= self.alpha <= self.beta:
            raise ValueError("alpha must be in [1, beta]")
        eta = self.beta // self.alpha
        word_mask = (1 << self.beta) - 1
        low = (1 << self.alpha) - 1
        extract = tuple(low << (self.alpha * l) for l in range(eta))
        reset = tuple(word_mask ^ m for m in extract)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "max_value", low)
        object.__setattr__(self, "extract", extract)
        object.__setattr__(self, "reset", reset)

    def _check_slot(self, l: int) -> None:
        if not 0 <= l < self.eta:
            raise IndexError(f"counter slot {l} out of range [0, {self.eta})")


def build_masks(alpha: int, beta: int = 64) -> MaskTable:
    """Build the mask table for alpha-bit counters in beta-bit cells."""
    return MaskTable(alpha, beta)


def counters_per_cell(alpha: int, beta: int = 64) -> int:
    """How many alpha-bit counters fit in a beta-bit cell: floor(beta/alpha)."""
    return build_masks(alpha, beta).eta


def wastage(alpha: int, beta: int = 64) -> int:
    """Unused bits per cell: beta mod alpha."""
    build_masks(alpha, beta)  # validates the pair
    return beta % alpha


def read_counter(cell: int, l: int, table: MaskTable) -> int:
    """Value of counter l: (cell AND extract[l]) >> (alpha*l)."""
    table._check_slot(l)
    return (cell & table.extract[l]) >> (table.alpha * l)


def write_counter(cell: int, l: int, value: int, table: MaskTable) -> int:
    """Set counter l to `value`, leaving every other counter untouched."""
    table._check_slot(l)
    if not 0 <= value <= table.max_value:
        raise ValueError(f"counter value {value} out of range [0, {table.max_value}]")
    return (cell & table.reset[l]) | (value << (table.alpha * l))


def saturating_increment(cell: int, l: int, table: MaskTable) -> tuple[int, bool]:
    """Increment counter l, pinning at MAX.

    Returns (new_cell, overflowed).  At MAX the cell is returned unchanged
    and overflowed is True.
    """
    current = read_counter(cell, l, table)
    if current == table.max_value:
        return cell, True
    return write_counter(cell, l, current + 1, table), False


def guarded_decrement(cell: int, l: int, table: MaskTable) -> tuple[int, bool]:
    """Decrement counter l unless it is 0 (underflow) or pinned at MAX.

    Returns (new_cell, underflowed).  A zero counter is left at zero with
    underflowed True; a saturated counter is left at MAX with underflowed
    False, since its true tally is unknown.
    """
    current = read_counter(cell, l, table)
    if current == 0:
        return cell, True
    if current == table.max_value:
        return cell, False
    return write_counter(cell, l, current - 1, table), False
