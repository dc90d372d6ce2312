"""countbf: a counting Bloom filter on bit-packed counter cells.

The filter stores small saturating counters packed into machine words laid
out as a 2D grid addressed by two prime moduli of one 64-bit hash.  It
supports insert, lookup, delete, and frequency estimation, and ships with
standard Bloom filter (SBF) and conventional counting Bloom filter (CBF)
baselines plus a benchmark CLI.
"""

from .backend import active_backend
from .baselines import CBF, SBF
from .cells import MaskTable, build_masks, counters_per_cell, wastage
from .filter import CountBF
from .hashing import CellIndex, derive_indices, expand_seeds, hash64
from .metrics import BenchReport, accuracy_pct, bits_per_item, evaluate
from .sizing import FilterPlan, countbf_k, dimensions, optimal_k, plan, sbf_bits
from .workloads import ExactOracle, QueryWorkload, gen_keys, make_workload

__version__ = "0.1.0"

__all__ = [
    "CBF",
    "SBF",
    "BenchReport",
    "CellIndex",
    "CountBF",
    "ExactOracle",
    "FilterPlan",
    "MaskTable",
    "QueryWorkload",
    "accuracy_pct",
    "active_backend",
    "bits_per_item",
    "build_masks",
    "counters_per_cell",
    "countbf_k",
    "derive_indices",
    "dimensions",
    "evaluate",
    "expand_seeds",
    "gen_keys",
    "hash64",
    "make_workload",
    "optimal_k",
    "plan",
    "sbf_bits",
    "wastage",
    "__version__",
]
