"""Perturbed Newton system: assembly and solution through thin QR.

The step (dx, dy, ds) solves

    a dx            = -rp
    a^T dy + ds     = -rd
    s*dx   + x*ds   = -(x*s - sigma_mu)

via the normal equations a X S^-1 a^T dy = rhs. Scaling d = sqrt(x/s)
gives a X S^-1 a^T = (d*a^T)^T (d*a^T), so one thin QR of d*a^T yields
both triangular solves; Cholesky on the normal-equations matrix is
avoided on purpose (it degrades first as iterates approach the
boundary).
"""

from dataclasses import dataclass

import numpy as np

from .linalg import (
    SingularFactorError,
    SingularSystemError,
    solve_lower_triangular,
    solve_upper_triangular,
    thin_qr,
)
from .model import Iterate, StandardFormLP, _check_dims

__all__ = [
    "IllConditionedStepError",
    "InteriorViolationError",
    "StepDirection",
    "apply_step",
    "newton_direction",
]


class InteriorViolationError(ValueError):
    """The iterate is not strictly interior (some x_i <= 0 or s_i <= 0)."""


class IllConditionedStepError(RuntimeError):
    """The step system could not be solved; `index` names the failing
    diagonal (or column) of the triangular factor."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(
            message or f"step system numerically singular at index {index}"
        )


@dataclass(frozen=True)
class StepDirection:
    dx: np.ndarray
    dy: np.ndarray
    ds: np.ndarray
    linear_residual_inf: float


def newton_direction(lp: StandardFormLP, z: Iterate, sigma_mu: float) -> StepDirection:
    """Solve the shifted Newton system at a strictly interior iterate.

    lp.a is expected to have full row rank (guaranteed after
    preprocessing); a numerically singular factor raises
    IllConditionedStepError. The achieved residual of the three block
    equations is reported, not gated: a poor direction is the
    trust-region controller's problem, and aborting near the boundary
    would kill legitimate end-game iterations.
    """
    _check_dims(lp, z)
    x, y, s = z.x, z.y, z.s
    if x.min() <= 0.0 or s.min() <= 0.0:
        raise InteriorViolationError(
            "newton_direction requires x > 0 and s > 0 componentwise"
        )
    a = lp.a
    rp = a @ x - lp.b
    rd = a.T @ y + s - lp.c
    rc = x * s - sigma_mu

    d = np.sqrt(x / s)
    try:
        f = thin_qr(a.T * d[:, None])
    except SingularFactorError as e:
        raise IllConditionedStepError(
            e.column, f"scaled constraint transpose rank deficient at column {e.column}"
        ) from e

    rhs = -(rp + a @ ((x * rd - rc) / s))
    try:
        w = solve_lower_triangular(f.r1.T, rhs)
        dy = solve_upper_triangular(f.r1, w)
    except SingularSystemError as e:
        raise IllConditionedStepError(e.index) from e

    ds = -rd - a.T @ dy
    dx = -(x * s + x * ds - sigma_mu) / s

    res = max(
        float(np.abs(a @ dx + rp).max()),
        float(np.abs(a.T @ dy + ds + rd).max()),
        float(np.abs(s * dx + x * ds + rc).max()),
    )
    return StepDirection(dx=dx, dy=dy, ds=ds, linear_residual_inf=res)


def apply_step(z: Iterate, d: StepDirection, dt: float) -> Iterate:
    """Move along d with the damped factor dt/(1+dt).

    Positivity of the result is the caller's concern.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    alpha = dt / (1.0 + dt)
    return Iterate(
        x=z.x + alpha * d.dx,
        y=z.y + alpha * d.dy,
        s=z.s + alpha * d.ds,
    )
