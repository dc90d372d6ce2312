"""CountBF behavior: membership, counting, deletes, snapshots, invariants."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from countbf.filter import CountBF, FilterStats
from countbf.hashing import derive_indices, expand_seeds, hash64
from countbf.sizing import FilterPlan, plan
from countbf.workloads import ExactOracle, gen_keys


def tiny_plan(alpha=4, beta=64, k=3, x=101, y=103, master_seed=7):
    return FilterPlan(
        n=1_000,
        epsilon=0.01,
        m_bits=2 * x * y * beta,
        k=k,
        alpha=alpha,
        beta=beta,
        eta=beta // alpha,
        x=x,
        y=y,
        seeds=expand_seeds(master_seed, k),
    )


def counter_sum(filt: CountBF) -> int:
    """Total of every counter in the grid, by mask extraction."""
    flat = filt.cells.reshape(-1)
    masks = filt.masks
    total = 0
    for l in range(masks.eta):
        total += int(((flat & np.uint64(masks.extract[l])) >> np.uint64(masks.alpha * l)).sum())
    return total


def slots_of(filt: CountBF, key: bytes) -> list[tuple[int, int, int]]:
    p = filt.plan
    return [tuple(derive_indices(hash64(key, s), p.x, p.y, p.eta)) for s in p.seeds]


def test_empty_filter_rejects_everything():
    filt = CountBF(tiny_plan())
    assert not filt.lookup(b"anything")
    assert filt.count(b"anything") == 0
    assert filt.occupancy() == 0.0


def test_memory_bits_is_grid_area_times_cell_width():
    filt = CountBF(tiny_plan(x=101, y=103, beta=64))
    assert filt.memory_bits() == 101 * 103 * 64 == 665_792
    assert filt.wastage_bits == 0  # 64 % 4


def test_construction_rejects_bad_plans():
    with pytest.raises(ValueError):
        CountBF(tiny_plan(x=101, y=101))
    with pytest.raises(ValueError):
        CountBF(tiny_plan(x=100, y=103))  # composite dimension
    bad_k = tiny_plan()
    object.__setattr__(bad_k, "k", 0)
    object.__setattr__(bad_k, "seeds", ())
    with pytest.raises(ValueError):
        CountBF(bad_k)
    bad_seeds = tiny_plan(k=3)
    object.__setattr__(bad_seeds, "seeds", (1, 2))
    with pytest.raises(ValueError):
        CountBF(bad_seeds)
    dup_seeds = tiny_plan(k=3)
    object.__setattr__(dup_seeds, "seeds", (1, 2, 2))
    with pytest.raises(ValueError):
        CountBF(dup_seeds)
    bad_eta = tiny_plan(alpha=4)
    object.__setattr__(bad_eta, "eta", 15)
    with pytest.raises(ValueError):
        CountBF(bad_eta)


def test_single_insert_adds_exactly_k_increments():
    filt = CountBF(tiny_plan(alpha=8, k=5))
    key = b"sentinel-key"
    assert len(set(slots_of(filt, key))) == 5  # seeds hit 5 distinct slots
    assert filt.insert(key) == 0
    assert counter_sum(filt) == 5
    assert filt.lookup(key)
    assert filt.count(key) == 1


def test_insert_many_returns_total_overflows_and_tracks_stats():
    filt = CountBF(tiny_plan(alpha=8, k=3))
    keys = gen_keys(200, 11)
    assert filt.insert_many(keys) == 0
    assert filt.stats() == FilterStats(200, 0, 0)
    out = np.zeros(200, dtype=np.uint8)
    assert filt.lookup_many(keys, out) == 200
    assert out.all()


def test_saturation_at_alpha3_is_sticky():
    filt = CountBF(tiny_plan(alpha=3, k=3))
    key = b"sentinel-key"
    assert len(set(slots_of(filt, key))) == 3
    for _ in range(7):
        assert filt.insert(key) == 0
    assert filt.count(key) == 7
    # all 3 counters sit at 7 = max; the 8th insert is refused everywhere
    assert filt.insert(key) == 3
    assert filt.overflow_events == 3
    assert filt.count(key) == 7
    assert filt.lookup(key)
    # decrement at max is refused too: pinned, not underflow
    assert filt.delete(key) == 0
    assert filt.count(key) == 7


def test_delete_restores_empty_filter():
    filt = CountBF(tiny_plan())
    empty = filt.to_snapshot()
    filt.insert(b"transient")
    assert filt.lookup(b"transient")
    assert filt.delete(b"transient") == 0
    assert not filt.lookup(b"transient")
    assert filt.to_snapshot() == empty


def test_delete_on_empty_reports_k_underflows():
    filt = CountBF(tiny_plan(k=4))
    empty = filt.to_snapshot()
    assert filt.delete(b"never-inserted") == 4
    assert filt.underflow_events == 4
    assert filt.to_snapshot() == empty


def test_inserted_keys_survive_unrelated_deletes():
    filt = CountBF(tiny_plan(alpha=4, k=3))
    keys = gen_keys(1_000, 3)
    oracle = ExactOracle()
    filt.insert_many(keys)
    for key in keys:
        oracle.add(key)
    for key in keys[:500]:
        filt.delete(key)
        oracle.remove(key)
    # deletes may leave phantom positives but never erase a present key
    for key in keys[500:]:
        assert oracle.contains(key)
        assert filt.lookup(key)
        assert filt.count(key) >= oracle.count(key)


def test_count_tracks_multiplicity_until_saturation():
    filt = CountBF(tiny_plan(alpha=4, k=3))
    key = b"repeat-me"
    for expected in range(1, 11):
        filt.insert(key)
        assert filt.count(key) == expected


def test_count_many_upper_bounds_truth():
    filt = CountBF(tiny_plan(alpha=8, k=3))
    keys = gen_keys(300, 5)
    rng = random.Random(5)
    truth = [rng.randint(1, 9) for _ in keys]
    for key, times in zip(keys, truth):
        for _ in range(times):
            filt.insert(key)
    assert filt.overflow_events == 0
    estimates = filt.count_many(keys)
    assert (estimates >= np.array(truth, dtype=np.uint64)).all()


def test_occupancy_counts_nonzero_counters():
    filt = CountBF(tiny_plan(alpha=8, k=5))
    filt.insert(b"sentinel-key")  # known to hit 5 distinct slots
    slots = 101 * 103 * 8
    assert filt.occupancy() == pytest.approx(5 / slots)


def test_lookup_agrees_with_count_threshold():
    filt = CountBF(tiny_plan(alpha=4, k=3))
    keys = gen_keys(400, 9)
    filt.insert_many(keys[:200])
    for key in keys:
        assert filt.lookup(key) == (filt.count(key) >= 1)


def test_snapshot_layout_and_determinism():
    def build():
        filt = CountBF(tiny_plan(alpha=5, k=3, master_seed=13))
        filt.insert_many(gen_keys(150, 2))
        filt.delete(gen_keys(150, 2)[0])
        return filt

    a, b = build(), build()
    snap = a.to_snapshot()
    assert snap == b.to_snapshot()
    assert snap[:8] == b"COUNTBF1"
    header = [int.from_bytes(snap[8 + 8 * i : 16 + 8 * i], "little") for i in range(5)]
    assert header == [101, 103, 5, 64, 3]
    assert len(snap) == 8 + 8 * (5 + 3) + 101 * 103 * 8


def test_snapshot_word_width_follows_beta():
    filt32 = CountBF(tiny_plan(alpha=4, beta=32, x=31, y=29))
    filt32.insert(b"word-width")
    assert filt32.lookup(b"word-width")
    snap = filt32.to_snapshot()
    assert len(snap) == 8 + 8 * (5 + 3) + 31 * 29 * 4


def test_insert_delete_restores_loaded_filter():
    filt = CountBF(tiny_plan(alpha=8, k=3))
    filt.insert_many(gen_keys(500, 21))
    before = filt.to_snapshot()
    batch = gen_keys(200, 22)
    filt.insert_many(batch)
    # restore only holds when no touched counter is pinned at max
    assert filt.overflow_events == 0
    assert filt.count_many(batch).max() < filt.masks.max_value
    for key in reversed(batch):
        filt.delete(key)
    assert filt.to_snapshot() == before


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.integers(0, 19)), min_size=1, max_size=60),
       st.integers(3, 8))
def test_random_op_sequences_never_false_negative(ops, alpha):
    filt = CountBF(tiny_plan(alpha=alpha, k=3, master_seed=31))
    oracle = ExactOracle()
    universe = gen_keys(20, 17)
    for is_insert, idx in ops:
        key = universe[idx]
        if is_insert:
            filt.insert(key)
            oracle.add(key)
        elif oracle.contains(key):
            filt.delete(key)
            oracle.remove(key)
    for key in universe:
        if oracle.contains(key):
            assert filt.lookup(key)
            # saturation caps the estimate, so truth is only a floor below max
            assert filt.count(key) >= min(oracle.count(key), filt.masks.max_value)


def test_plan_integration_headline_shape():
    p = plan(2_000, 0.01, 4, 64, master_seed=42)
    filt = CountBF(p)
    keys = gen_keys(2_000, 42)
    filt.insert_many(keys)
    assert filt.lookup_many(keys) == 2_000
    assert 0.0 < filt.occupancy() < 1.0
