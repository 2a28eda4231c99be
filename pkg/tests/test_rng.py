import math

import numpy as np

from lpfollow.rng import SplitMix64

# published splitmix64 outputs for seed 0
SEED0_VECTOR = [
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
    0xF88BB8A8724C81EC,
]


def test_golden_vector_seed_zero():
    g = SplitMix64(0)
    assert [g.next_u64() for _ in range(4)] == SEED0_VECTOR


def test_uniform_matches_documented_mapping():
    g1 = SplitMix64(123)
    g2 = SplitMix64(123)
    for _ in range(100):
        u = g1.uniform()
        assert u == (g2.next_u64() >> 11) * 2.0**-53
        assert 0.0 <= u < 1.0


def test_normal_matches_documented_box_muller():
    g1 = SplitMix64(9)
    g2 = SplitMix64(9)
    for _ in range(50):
        value = g1.normal()
        u1, u2 = g2.uniform(), g2.uniform()
        assert value == math.sqrt(-2.0 * math.log1p(-u1)) * math.cos(
            2.0 * math.pi * u2
        )


def test_streams_are_deterministic_and_seed_dependent():
    a = SplitMix64(7).uniforms(20)
    b = SplitMix64(7).uniforms(20)
    c = SplitMix64(8).uniforms(20)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_seed_wraps_to_64_bits():
    assert SplitMix64(2**64 + 5).next_u64() == SplitMix64(5).next_u64()


def test_permutation_is_a_permutation():
    for seed in range(5):
        p = SplitMix64(seed).permutation(30)
        assert sorted(p.tolist()) == list(range(30))


def test_normals_have_sane_moments():
    draws = SplitMix64(1234).normals(4000)
    assert abs(draws.mean()) < 0.06
    assert abs(draws.std() - 1.0) < 0.05
