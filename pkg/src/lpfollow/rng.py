"""SplitMix64 pseudo-random generator.

All randomness in the package flows through this one generator so that
noise vectors and generated test problems are reproducible bit-for-bit,
including from reimplementations in other languages. The algorithm is
the SplittableRandom / splitmix64 finalizer: state advances by the
64-bit golden gamma and each output is

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z XOR (z >> 31)

Seed 0 produces 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4,
0x06C45D188009454F, ... (the standard published vector, frozen in the
test suite).

Derived draws, in the exact order they consume outputs:

* ``uniform()``  -- one output; top 53 bits scaled to [0, 1).
* ``normal()``   -- two uniforms u1, u2; returns
  sqrt(-2 ln(1 - u1)) * cos(2 pi u2) (the Box-Muller sine branch is
  discarded, so every call costs exactly two outputs).
* ``permutation(n)`` -- Fisher-Yates over [0..n-1], swapping position i
  (from n-1 down to 1) with j = floor(uniform() * (i + 1)).
"""

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; see the module docstring."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """One float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniforms(self, k: int) -> np.ndarray:
        return np.array([self.uniform() for _ in range(k)])

    def normal(self) -> float:
        """One standard normal draw (Box-Muller cosine branch)."""
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log1p(-u1)) * math.cos(2.0 * math.pi * u2)

    def normals(self, k: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(k)])

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates permutation of range(n)."""
        perm = np.arange(n, dtype=np.intp)
        for i in range(n - 1, 0, -1):
            j = int(self.uniform() * (i + 1))
            perm[i], perm[j] = perm[j], perm[i]
        return perm
