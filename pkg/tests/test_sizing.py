"""Sizing pipeline: bit budgets, hash counts, prime grid dimensions."""

import pytest

from countbf.sizing import (
    FilterPlan,
    countbf_k,
    dimensions,
    is_prime,
    optimal_k,
    plan,
    sbf_bits,
)

MB = 8 * 1024 * 1024  # bits per mebibyte


def test_sbf_bits_headline_config():
    m = sbf_bits(10**7, 0.001)
    assert m == 143_775_876
    assert abs(m / 10**7 - 14.377587572736) < 1e-6
    assert abs(m / MB - 17.13942) < 0.001


def test_sbf_bits_minimal():
    assert sbf_bits(1, 0.5) == 2


def test_sbf_bits_rejects_bad_inputs():
    with pytest.raises(ValueError):
        sbf_bits(0, 0.001)
    for eps in (0.0, 1.0, -0.5, 2.0):
        with pytest.raises(ValueError):
            sbf_bits(100, eps)


def test_sbf_bits_monotone():
    assert sbf_bits(2_000, 0.001) > sbf_bits(1_000, 0.001)
    assert sbf_bits(1_000, 0.0001) > sbf_bits(1_000, 0.001)


def test_optimal_k_examples():
    assert optimal_k(143_775_876, 10**7) == 10
    assert optimal_k(100, 100) == 1
    assert optimal_k(2_000, 100) == 14  # m/n = 20


def test_countbf_k_examples():
    assert countbf_k(143_775_876, 10**7) == 5  # optimal 10 -> 5
    assert countbf_k(100, 100) == 1  # optimal 1 -> floor at 1
    # optimal 7 -> round-half-up(3.5) = 4
    assert optimal_k(10_100, 1_000) == 7  # 10.1 * ln 2 ~= 7.0005
    assert countbf_k(10_100, 1_000) == 4


def test_dimensions_headline_config():
    assert dimensions(143_775_876, 64) == (1087, 1039)


def test_dimensions_tiny_fallback():
    # b = 25 -> q = 5; the anchor prime 5 is only third, so the fallback
    # takes the two smallest distinct primes >= q.
    m = 25 * 128
    assert dimensions(m, 64) == (7, 5)


def test_dimensions_band_sweep():
    for n in (10**5, 10**6, 10**7, 10**8):
        for eps in (1e-2, 1e-3, 1e-4):
            m = sbf_bits(n, eps)
            x, y = dimensions(m, 64)
            assert x != y
            assert is_prime(x) and is_prime(y)
            assert 0.4 * m <= x * y * 64 <= 0.6 * m


def test_dimensions_rejects_bad_inputs():
    with pytest.raises(ValueError):
        dimensions(0, 64)
    with pytest.raises(ValueError):
        dimensions(1000, 48)


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 1039, 1087}
    for p in primes:
        assert is_prime(p)
    for c in (0, 1, 4, 9, 1037, 1039 * 1087):
        assert not is_prime(c)


def test_plan_headline_config():
    p = plan(10**7, 0.001, 8, 64, master_seed=42)
    assert (p.k, p.x, p.y, p.eta) == (5, 1087, 1039, 8)
    assert p.m_bits == 143_775_876
    assert len(p.seeds) == 5
    assert abs(p.memory_bits / MB - 8.799034) / 8.799034 < 0.05
    assert abs(p.memory_bits / 10**7 - 7.381) / 7.381 < 0.05


def test_plan_half_budget():
    p = plan(10**6, 0.001, 8, 64)
    m = sbf_bits(10**6, 0.001)
    assert m == 14_377_588
    assert 0.4 * m <= p.memory_bits <= 0.6 * m


def test_plan_rejects_alpha_above_beta():
    with pytest.raises(ValueError):
        plan(1000, 0.01, 65, 64)
    with pytest.raises(ValueError):
        plan(1000, 0.01, 33, 32)


def test_plan_bits_per_item_beats_flat_bitmap():
    for n in (10**5, 10**6, 10**7):
        for eps in (1e-2, 1e-3, 1e-4):
            p = plan(n, eps, 4, 64)
            assert p.memory_bits / n < sbf_bits(n, eps) / n


def test_memory_ratio_bands():
    for n in (10**5, 10**6, 10**7):
        m = sbf_bits(n, 0.001)
        p = plan(n, 0.001, 4, 64)
        sbf_ratio = m / p.memory_bits
        assert 1.8 <= sbf_ratio <= 2.2
        assert 7.2 <= 4 * m / p.memory_bits <= 8.6


def test_plan_is_frozen():
    p = plan(1000, 0.01, 4)
    assert isinstance(p, FilterPlan)
    with pytest.raises(AttributeError):
        p.x = 11
