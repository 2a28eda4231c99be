"""Seeded random test-problem factory.

Every generated instance carries an exact optimality certificate: the
feasible triple the data was built around has complementary supports,
so it is primal-dual optimal and c^T xfeas is the known optimum. That
makes each instance self-validating without an external solver.

Draw order (one SplitMix64 stream per attempt, see random_full_rank):
matrix cells row-major (one uniform per cell, plus one normal when the
cell is filled), primal support values, slack support values, one
shared permutation, dual values.
"""

import math

import numpy as np

from .linalg import DEFAULT_RANK_TOL, qr_column_pivoting
from .model import Iterate, StandardFormLP
from .rng import SplitMix64

__all__ = ["make_rank_deficient", "random_full_rank"]


def random_full_rank(
    m: int, n: int, density: float = 0.2, seed: int = 0
) -> tuple[StandardFormLP, Iterate]:
    """Random full-row-rank standard-form LP with a known optimum.

    The matrix has standard-normal entries on a Bernoulli(density)
    pattern. The certificate primal has ceil(n/2) positive entries in
    (0, 1], the slack fills the complementary support, duals are uniform
    on [-2, 2); b and c are assembled so the certificate is exactly
    feasible. Rank-deficient draws (possible for tiny m*n*density) are
    retried on substream seed+attempt, at most 10 times.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must lie in (0, 1], got {density}")

    for attempt in range(10):
        rng = SplitMix64(seed + attempt)
        a = np.zeros((m, n))
        for i in range(m):
            for j in range(n):
                if rng.uniform() < density:
                    a[i, j] = rng.normal()

        k = math.ceil(n / 2)
        xfeas = np.zeros(n)
        sfeas = np.zeros(n)
        for j in range(k):
            xfeas[j] = 1.0 - rng.uniform()  # in (0, 1], strictly positive
        for j in range(k, n):
            sfeas[j] = 1.0 - rng.uniform()
        perm = rng.permutation(n)
        # one shared permutation keeps the supports complementary
        xfeas = xfeas[perm]
        sfeas = sfeas[perm]
        yfeas = np.array([(rng.uniform() - 0.5) * 4.0 for _ in range(m)])

        if m <= n and qr_column_pivoting(a, DEFAULT_RANK_TOL).rank == m:
            b = a @ xfeas
            c = a.T @ yfeas + sfeas
            lp = StandardFormLP(a, b, c, name=f"rand-m{m}-n{n}-s{seed}")
            return lp, Iterate(x=xfeas, y=yfeas, s=sfeas)

    raise ValueError(
        f"could not draw a full-row-rank {m}x{n} matrix at density {density} "
        f"in 10 attempts (seed {seed})"
    )


def make_rank_deficient(
    lp: StandardFormLP, extra_rows: int, seed: int = 0
) -> StandardFormLP:
    """Append redundant rows: random combinations of the original rows.

    Coefficients are uniform on [-1, 1) with at least one nonzero; the
    right-hand side combines identically, so the system stays consistent
    and the rank is unchanged.
    """
    if extra_rows < 1:
        raise ValueError(f"extra_rows must be at least 1, got {extra_rows}")
    rng = SplitMix64(seed)
    new_rows = []
    new_rhs = []
    for _ in range(extra_rows):
        while True:
            coeffs = np.array([2.0 * rng.uniform() - 1.0 for _ in range(lp.m)])
            if np.any(coeffs != 0.0):
                break
        new_rows.append(coeffs @ lp.a)
        new_rhs.append(float(coeffs @ lp.b))
    a = np.vstack([lp.a, np.array(new_rows)])
    b = np.concatenate([lp.b, np.array(new_rhs)])
    return StandardFormLP(a, b, lp.c, name=lp.name)
