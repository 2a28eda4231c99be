"""Dense linear-algebra kernel: rank-revealing pivoted QR, thin QR, triangular solves.

Two interchangeable backends implement the kernels: a Cython extension
(``_qrcore``) and a numpy fallback (``pykernels``). The extension is
picked at import time when built; set ``LPFOLLOW_BACKEND=python`` to
force the fallback, or ``LPFOLLOW_BACKEND=compiled`` to fail loudly when
the extension is missing. ``BACKEND`` names the active choice.

All matrices are dense, row-major float64 numpy arrays.
"""

import os
from dataclasses import dataclass

import numpy as np

from . import pykernels as _pykernels
from .errors import SingularFactorError, SingularSystemError

_forced = os.environ.get("LPFOLLOW_BACKEND", "").strip().lower()
if _forced == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _qrcore as _impl

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise ImportError(
                "LPFOLLOW_BACKEND=compiled but lpfollow.linalg._qrcore is not built; "
                "run 'python setup.py build_ext --inplace' or reinstall"
            )
        _impl = _pykernels
        BACKEND = "python"

DEFAULT_RANK_TOL = 1e-8

__all__ = [
    "BACKEND",
    "DEFAULT_RANK_TOL",
    "PivotedQR",
    "SingularFactorError",
    "SingularSystemError",
    "ThinQR",
    "qr_column_pivoting",
    "solve_lower_triangular",
    "solve_upper_triangular",
    "thin_qr",
]


@dataclass(frozen=True)
class PivotedQR:
    """Factors of a*P = q*r with numerical rank `rank`.

    q is m-by-m orthogonal, r is m-by-n upper trapezoidal with
    |r[0,0]| >= |r[1,1]| >= ..., perm holds the column order (column j of
    the pivoted matrix is column perm[j] of the input).
    """

    q: np.ndarray
    r: np.ndarray
    perm: np.ndarray
    rank: int


@dataclass(frozen=True)
class ThinQR:
    """Thin factors of a tall matrix: a = q1*r1.

    q1 has orthonormal columns, r1 is square upper triangular and
    nonsingular (the factorization raises otherwise).
    """

    q1: np.ndarray
    r1: np.ndarray


def _as_matrix(a, name="a"):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if a.shape[0] == 0 or a.shape[1] == 0:
        raise ValueError(f"{name} must have at least one row and one column")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    return np.ascontiguousarray(a)


def _as_vector(v, length, name="rhs"):
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != length:
        raise ValueError(f"{name} must be a vector of length {length}")
    if not np.isfinite(v).all():
        raise ValueError(f"{name} contains non-finite entries")
    return np.ascontiguousarray(v)


def qr_column_pivoting(a, rank_tol: float = DEFAULT_RANK_TOL) -> PivotedQR:
    """Factor a*P = q*r with column pivoting and detect the numerical rank.

    The rank is the largest k with |r[k-1,k-1]| > rank_tol * |r[0,0]|
    (0 for a zero matrix). rank_tol must be positive.
    """
    a = _as_matrix(a)
    if not rank_tol > 0.0:
        raise ValueError(f"rank_tol must be positive, got {rank_tol}")
    q, r, perm, rank = _impl.pivoted_qr(a, rank_tol)
    return PivotedQR(q=q, r=r, perm=perm, rank=int(rank))


def thin_qr(a) -> ThinQR:
    """Thin QR of a matrix with at least as many rows as columns.

    Raises SingularFactorError naming the offending column when the input
    is numerically column rank deficient (relative tolerance 1e-12 on the
    r1 diagonal).
    """
    a = _as_matrix(a)
    if a.shape[0] < a.shape[1]:
        raise ValueError(
            f"thin_qr needs rows >= cols, got shape {a.shape[0]}x{a.shape[1]}"
        )
    q1, r1 = _impl.thin_qr(a)
    return ThinQR(q1=q1, r1=r1)


def solve_upper_triangular(r, rhs) -> np.ndarray:
    """Solve r*x = rhs by back substitution; r square upper triangular.

    Raises SingularSystemError when a diagonal entry is below 1e-14 of
    the largest diagonal magnitude.
    """
    r = _as_matrix(r, "r")
    if r.shape[0] != r.shape[1]:
        raise ValueError(f"r must be square, got shape {r.shape}")
    rhs = _as_vector(rhs, r.shape[0])
    return _impl.solve_upper(r, rhs)


def solve_lower_triangular(lt, rhs) -> np.ndarray:
    """Solve lt*x = rhs by forward substitution; lt square lower triangular."""
    lt = _as_matrix(lt, "lt")
    if lt.shape[0] != lt.shape[1]:
        raise ValueError(f"lt must be square, got shape {lt.shape}")
    rhs = _as_vector(rhs, lt.shape[0])
    return _impl.solve_lower(lt, rhs)
