"""Independent oracles used across the suite.

Everything here is deliberately computed through a different route than
the library under test: Gaussian elimination instead of QR for ranks,
LAPACK (numpy.linalg) instead of the package kernels for dense solves
and least squares, exhaustive vertex enumeration for tiny LP optima.
"""

from itertools import combinations

import numpy as np

from lpfollow.model import Iterate, StandardFormLP


def gauss_rank(a, tol=1e-8):
    """Rank via row echelon with partial pivoting (no QR involved)."""
    a = np.array(a, dtype=float)
    m, n = a.shape
    scale = np.abs(a).max()
    if scale == 0.0:
        return 0
    rank = 0
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[piv, col]) <= tol * scale:
            continue
        a[[row, piv]] = a[[piv, row]]
        factors = a[row + 1 :, col] / a[row, col]
        a[row + 1 :, col:] -= np.outer(factors, a[row, col:])
        row += 1
        rank += 1
    return rank


def min_residual_norm(a, b):
    """Global minimum of ||a x - b||_2 via SVD least squares."""
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    return float(np.linalg.norm(a @ x - b))


def vertex_enum_optimum(lp: StandardFormLP, feas_tol=1e-9):
    """Brute-force optimum of a bounded-feasible standard-form LP.

    Tries every m-subset of columns as a basis, keeps the feasible
    vertices, and returns the best objective (None when no vertex is
    feasible). Only sane for n choose m in the hundreds.
    """
    m, n = lp.m, lp.n
    best = None
    for basis in combinations(range(n), m):
        sub = lp.a[:, basis]
        try:
            xb = np.linalg.solve(sub, lp.b)
        except np.linalg.LinAlgError:
            continue
        if not np.isfinite(xb).all() or xb.min() < -feas_tol:
            continue
        x = np.zeros(n)
        x[list(basis)] = np.maximum(xb, 0.0)
        if np.abs(lp.a @ x - lp.b).max() > 1e-7 * (1 + np.abs(lp.b).max()):
            continue
        value = float(lp.c @ x)
        if best is None or value < best:
            best = value
    return best


def dense_newton_oracle(lp: StandardFormLP, z: Iterate, sigma_mu: float):
    """Solve the full (n+m+n) block Newton system with LAPACK."""
    m, n = lp.m, lp.n
    x, y, s = z.x, z.y, z.s
    jac = np.zeros((2 * n + m, 2 * n + m))
    jac[:m, :n] = lp.a
    jac[m : m + n, n : n + m] = lp.a.T
    jac[m : m + n, n + m :] = np.eye(n)
    jac[m + n :, :n] = np.diag(s)
    jac[m + n :, n + m :] = np.diag(x)
    rhs = -np.concatenate(
        [lp.a @ x - lp.b, lp.a.T @ y + s - lp.c, x * s - sigma_mu]
    )
    sol = np.linalg.solve(jac, rhs)
    return sol[:n], sol[n : n + m], sol[n + m :]


def random_interior_lp(rng: np.random.Generator, m: int, n: int):
    """Full-row-rank LP with a strictly feasible primal-dual pair.

    Returns (lp, z0) where z0 is strictly interior and exactly feasible
    (b and c are assembled from it).
    """
    while True:
        a = rng.standard_normal((m, n))
        if np.linalg.matrix_rank(a) == m:
            break
    x = rng.uniform(0.5, 2.0, size=n)
    s = rng.uniform(0.5, 2.0, size=n)
    y = rng.uniform(-1.0, 1.0, size=m)
    lp = StandardFormLP(a, a @ x, a.T @ y + s, name="interior")
    return lp, Iterate(x=x, y=y, s=s)


def bounded_random_lp(rng: np.random.Generator, m: int, n: int):
    """Random consistent LP whose feasible region is bounded and has an
    interior point: the first row is strictly positive, which caps every
    coordinate."""
    while True:
        a = rng.standard_normal((m, n))
        a[0] = rng.uniform(0.5, 1.5, size=n)
        if np.linalg.matrix_rank(a) == m:
            break
    x0 = rng.uniform(0.2, 1.0, size=n)
    b = a @ x0
    c = rng.standard_normal(n)
    return StandardFormLP(a, b, c, name="bounded")
