"""Householder QR kernels, pure numpy implementation.

This is the fallback backend, used whenever the compiled extension
``lpfollow.linalg._qrcore`` is missing or ``LPFOLLOW_BACKEND=python`` is
set.  It must stay algorithmically identical to the compiled kernels:
same pivot rule (exact trailing column norms, recomputed every step),
same reflector sign convention (``alpha = -sign(x0) * ||x||`` with
``sign(0) = +1``), so both backends agree on permutations, ranks and
signs, and differ only by floating-point reassociation.

Callers are expected to pass validated, C-contiguous float64 arrays;
validation lives in ``lpfollow.linalg``.
"""

import numpy as np

from .errors import SingularFactorError, SingularSystemError

THIN_QR_RANK_TOL = 1e-12


def _reflect_columns(a, k):
    """Apply one Householder step at position k of `a` (in place).

    Returns the reflector pair (v, beta) with H = I - 2 v v^T / beta
    acting on rows k:. The caller guarantees column k has nonzero
    trailing norm.
    """
    x = a[k:, k]
    nrm = np.sqrt(x @ x)
    alpha = -np.copysign(nrm, x[0]) if x[0] != 0.0 else -nrm
    v = x.copy()
    v[0] -= alpha
    beta = v @ v
    w = (a[k:, k + 1 :].T @ v) * (2.0 / beta)
    a[k:, k + 1 :] -= np.outer(v, w)
    a[k, k] = alpha
    a[k + 1 :, k] = 0.0
    return v, beta


def pivoted_qr(a, rank_tol):
    """Column-pivoted Householder QR with explicit m-by-m Q.

    Returns (q, r, perm, rank). Pivoting picks the trailing column of
    largest exact 2-norm at every step, which makes |diag(r)|
    non-increasing and rank detection a prefix scan.
    """
    r = np.array(a, dtype=np.float64, order="C", copy=True)
    m, n = r.shape
    q = np.eye(m)
    perm = np.arange(n, dtype=np.intp)
    for k in range(min(m, n)):
        block = r[k:, k:]
        norms = np.sqrt(np.einsum("ij,ij->j", block, block))
        j = int(np.argmax(norms))
        if norms[j] <= 0.0:
            r[k:, k:] = 0.0
            break
        if j != 0:
            jj = k + j
            r[:, [k, jj]] = r[:, [jj, k]]
            perm[[k, jj]] = perm[[jj, k]]
        v, beta = _reflect_columns(r, k)
        u = (q[:, k:] @ v) * (2.0 / beta)
        q[:, k:] -= np.outer(u, v)

    diag = np.abs(np.diagonal(r))
    rank = 0
    if diag.size > 0 and diag[0] > 0.0:
        thresh = rank_tol * diag[0]
        while rank < diag.size and diag[rank] > thresh:
            rank += 1
    return q, r, perm, rank


def thin_qr(a):
    """Householder QR of a tall matrix, thin factors only.

    Returns (q1, r1) with q1 carrying orthonormal columns and r1 square
    upper triangular. Raises SingularFactorError when a diagonal of r1
    falls below THIN_QR_RANK_TOL relative to |r1[0, 0]|.
    """
    r = np.array(a, dtype=np.float64, order="C", copy=True)
    m, n = r.shape
    reflectors = []
    for k in range(n):
        x = r[k:, k]
        if np.sqrt(x @ x) <= 0.0:
            raise SingularFactorError(k)
        reflectors.append(_reflect_columns(r, k))

    r1 = r[:n, :n].copy()
    d0 = abs(r1[0, 0])
    for k in range(n):
        if abs(r1[k, k]) <= THIN_QR_RANK_TOL * d0:
            raise SingularFactorError(k)

    # accumulate Q1 = H_0 ... H_{n-1} E_n by sweeping the reflectors backward
    q1 = np.zeros((m, n))
    q1[:n, :n] = np.eye(n)
    for k in range(n - 1, -1, -1):
        v, beta = reflectors[k]
        w = (q1[k:, :].T @ v) * (2.0 / beta)
        q1[k:, :] -= np.outer(v, w)
    return q1, r1


def _check_diagonal(diag):
    mx = diag.max() if diag.size else 0.0
    if mx <= 0.0:
        raise SingularSystemError(0)
    bad = np.flatnonzero(diag < 1e-14 * mx)
    if bad.size:
        raise SingularSystemError(int(bad[0]))


def solve_upper(r, b):
    """Back substitution for upper-triangular r."""
    n = r.shape[0]
    _check_diagonal(np.abs(np.diagonal(r)))
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - r[i, i + 1 :] @ x[i + 1 :]) / r[i, i]
    return x


def solve_lower(lo, b):
    """Forward substitution for lower-triangular lo."""
    n = lo.shape[0]
    _check_diagonal(np.abs(np.diagonal(lo)))
    x = np.empty(n)
    for i in range(n):
        x[i] = (b[i] - lo[i, :i] @ x[:i]) / lo[i, i]
    return x
