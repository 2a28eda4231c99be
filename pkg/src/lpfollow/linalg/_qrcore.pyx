# cython: boundscheck=False, wraparound=False, cdivision=True
"""Householder QR kernels, compiled backend.

Mirror of ``pykernels`` with the loops in C: same pivot rule (exact
trailing column norms recomputed every step) and the same reflector
sign convention, so both backends produce identical permutations and
ranks. Inputs are validated by ``lpfollow.linalg`` before they get here.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport copysign, fabs, sqrt

from .errors import SingularFactorError, SingularSystemError

cnp.import_array()

THIN_QR_RANK_TOL = 1e-12


cdef double _trailing_norm(double[:, ::1] a, Py_ssize_t k, Py_ssize_t j, Py_ssize_t m):
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(k, m):
        acc += a[i, j] * a[i, j]
    return sqrt(acc)


cdef double _make_reflector(double[:, ::1] a, double[::1] v, Py_ssize_t k,
                            Py_ssize_t m, Py_ssize_t n):
    """Form the Householder vector for column k and apply it to columns k+1:.

    Writes the reflector into v[k:m], stores alpha on the diagonal, zeros
    below it, and returns beta = v^T v (0.0 signals a zero column).
    """
    cdef double nrm = _trailing_norm(a, k, k, m)
    cdef double alpha, beta, t, scale
    cdef Py_ssize_t i, j
    if nrm <= 0.0:
        return 0.0
    if a[k, k] != 0.0:
        alpha = -copysign(nrm, a[k, k])
    else:
        alpha = -nrm
    beta = 0.0
    for i in range(k, m):
        v[i] = a[i, k]
    v[k] -= alpha
    for i in range(k, m):
        beta += v[i] * v[i]
    scale = 2.0 / beta
    for j in range(k + 1, n):
        t = 0.0
        for i in range(k, m):
            t += v[i] * a[i, j]
        t *= scale
        for i in range(k, m):
            a[i, j] -= t * v[i]
    a[k, k] = alpha
    for i in range(k + 1, m):
        a[i, k] = 0.0
    return beta


def pivoted_qr(a, double rank_tol):
    """Column-pivoted Householder QR; returns (q, r, perm, rank)."""
    r_arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] r = r_arr
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t n = r.shape[1]
    q_arr = np.eye(m)
    cdef double[:, ::1] q = q_arr
    perm_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] perm = perm_arr
    v_arr = np.zeros(m)
    cdef double[::1] v = v_arr
    cdef Py_ssize_t k, i, j, best, tmp_i
    cdef double best_norm, cur, beta, t, scale, tmp

    for k in range(min(m, n)):
        best = k
        best_norm = _trailing_norm(r, k, k, m)
        for j in range(k + 1, n):
            cur = _trailing_norm(r, k, j, m)
            if cur > best_norm:
                best_norm = cur
                best = j
        if best_norm <= 0.0:
            for i in range(k, m):
                for j in range(k, n):
                    r[i, j] = 0.0
            break
        if best != k:
            for i in range(m):
                tmp = r[i, k]
                r[i, k] = r[i, best]
                r[i, best] = tmp
            tmp_i = perm[k]
            perm[k] = perm[best]
            perm[best] = tmp_i
        beta = _make_reflector(r, v, k, m, n)
        scale = 2.0 / beta
        for i in range(m):
            t = 0.0
            for j in range(k, m):
                t += q[i, j] * v[j]
            t *= scale
            for j in range(k, m):
                q[i, j] -= t * v[j]

    cdef Py_ssize_t steps = min(m, n)
    cdef Py_ssize_t rank = 0
    cdef double thresh
    if steps > 0 and fabs(r[0, 0]) > 0.0:
        thresh = rank_tol * fabs(r[0, 0])
        while rank < steps and fabs(r[rank, rank]) > thresh:
            rank += 1
    return q_arr, r_arr, perm_arr, rank


def thin_qr(a):
    """Householder QR of a tall matrix; returns thin (q1, r1)."""
    r_arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] r = r_arr
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t n = r.shape[1]
    vs_arr = np.zeros((n, m))
    cdef double[:, ::1] vs = vs_arr
    betas_arr = np.zeros(n)
    cdef double[::1] betas = betas_arr
    cdef Py_ssize_t k, i, j
    cdef double beta, t, scale, d0

    for k in range(n):
        beta = _make_reflector(r, vs[k], k, m, n)
        if beta == 0.0:
            raise SingularFactorError(k)
        betas[k] = beta

    d0 = fabs(r[0, 0])
    for k in range(n):
        if fabs(r[k, k]) <= THIN_QR_RANK_TOL * d0:
            raise SingularFactorError(k)

    r1_arr = np.ascontiguousarray(r_arr[:n, :n])
    # accumulate Q1 = H_0 ... H_{n-1} E_n by sweeping the reflectors backward
    q1_arr = np.zeros((m, n))
    cdef double[:, ::1] q1 = q1_arr
    for k in range(n):
        q1[k, k] = 1.0
    for k in range(n - 1, -1, -1):
        scale = 2.0 / betas[k]
        for j in range(n):
            t = 0.0
            for i in range(k, m):
                t += q1[i, j] * vs[k, i]
            t *= scale
            for i in range(k, m):
                q1[i, j] -= t * vs[k, i]
    return q1_arr, r1_arr


cdef Py_ssize_t _diag_check(double[:, ::1] t, Py_ssize_t n) except -2:
    cdef double mx = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if fabs(t[i, i]) > mx:
            mx = fabs(t[i, i])
    if mx <= 0.0:
        return 0
    for i in range(n):
        if fabs(t[i, i]) < 1e-14 * mx:
            return i
    return -1


def solve_upper(r, b):
    """Back substitution for upper-triangular r."""
    r_arr = np.ascontiguousarray(r, dtype=np.float64)
    b_arr = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[:, ::1] rm = r_arr
    cdef double[::1] bv = b_arr
    cdef Py_ssize_t n = rm.shape[0]
    cdef Py_ssize_t bad = _diag_check(rm, n)
    if bad >= 0:
        raise SingularSystemError(bad)
    x_arr = np.empty(n)
    cdef double[::1] x = x_arr
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n - 1, -1, -1):
        acc = bv[i]
        for j in range(i + 1, n):
            acc -= rm[i, j] * x[j]
        x[i] = acc / rm[i, i]
    return x_arr


def solve_lower(lo, b):
    """Forward substitution for lower-triangular lo."""
    l_arr = np.ascontiguousarray(lo, dtype=np.float64)
    b_arr = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[:, ::1] lm = l_arr
    cdef double[::1] bv = b_arr
    cdef Py_ssize_t n = lm.shape[0]
    cdef Py_ssize_t bad = _diag_check(lm, n)
    if bad >= 0:
        raise SingularSystemError(bad)
    x_arr = np.empty(n)
    cdef double[::1] x = x_arr
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = bv[i]
        for j in range(i):
            acc -= lm[i, j] * x[j]
        x[i] = acc / lm[i, i]
    return x_arr
