"""Classical long-step path-following baseline.

Damped Newton on the raw problem with the traditional centering
mu = x^T s / n and a fixed fraction-to-the-boundary step rule. No
constraint repair: on rank-deficient or noise-inconsistent inputs the
step system is singular and the run ends with status
"numerical-failure" -- that outcome is reported, not raised, because the
robustness comparison needs it as a data point.
"""

import time
from dataclasses import dataclass

import numpy as np

from .model import Iterate, StandardFormLP, residuals
from .newton import (
    IllConditionedStepError,
    InteriorViolationError,
    newton_direction,
)
from .trust_region import (
    STATUS_CONVERGED,
    STATUS_MAX_ITERATIONS,
    STATUS_NUMERICAL_FAILURE,
    STATUS_STALLED,
    SolveReport,
    TraceRecord,
)

__all__ = ["BaselineConfig", "solve_baseline"]


@dataclass(frozen=True)
class BaselineConfig:
    epsilon: float = 1e-6
    maxit: int = 200
    sigma: float = 0.1
    boundary_fraction: float = 0.9995

    def __post_init__(self):
        if not 0.0 < self.sigma < 1.0:
            raise ValueError(f"sigma must lie in (0, 1), got {self.sigma}")
        if not 0.0 < self.boundary_fraction < 1.0:
            raise ValueError(
                f"boundary_fraction must lie in (0, 1), got {self.boundary_fraction}"
            )
        if self.maxit < 1:
            raise ValueError(f"maxit must be at least 1, got {self.maxit}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def _max_feasible_step(v, dv) -> float:
    """Largest alpha with v + alpha*dv >= 0, given v > 0."""
    shrinking = dv < 0.0
    if not shrinking.any():
        return np.inf
    return float((-v[shrinking] / dv[shrinking]).min())


def solve_baseline(lp: StandardFormLP, cfg: BaselineConfig | None = None) -> SolveReport:
    """Run the long-step method on lp as-is (no preprocessing).

    The report mirrors the trust-region solver's; `rank` is nominally m
    because the baseline never detects rank. Trace records reuse dt for
    the damped step length and step_limit for the distance to the
    positivity boundary.
    """
    cfg = cfg or BaselineConfig()
    t0 = time.perf_counter()
    n = lp.n

    big_m = max(
        float(np.abs(lp.a).max()),
        float(np.abs(lp.b).max()),
        float(np.abs(lp.c).max()),
    )
    if big_m <= 0.0:
        big_m = 1.0
    x = np.full(n, big_m)
    s = x.copy()
    y = np.zeros(lp.m)

    status = STATUS_MAX_ITERATIONS
    detail = ""
    iters = 0
    trace: list[TraceRecord] = []

    for _ in range(cfg.maxit):
        rp = lp.a @ x - lp.b
        rd = lp.a.T @ y + s - lp.c
        comp = x * s
        resk = max(
            float(np.abs(rp).max()),
            float(np.abs(rd).max()),
            float(comp.max()),
        )
        if resk < cfg.epsilon:
            status = STATUS_CONVERGED
            break
        gap = float(x @ s)
        mu = gap / n
        try:
            d = newton_direction(lp, Iterate(x, y, s), cfg.sigma * mu)
        except (InteriorViolationError, IllConditionedStepError) as e:
            status = STATUS_NUMERICAL_FAILURE
            detail = str(e)
            break
        iters += 1

        limit = min(_max_feasible_step(x, d.dx), _max_feasible_step(s, d.ds))
        alpha = min(1.0, cfg.boundary_fraction * limit)
        if not alpha > 1e-16:
            status = STATUS_STALLED
            detail = "step to the positivity boundary underflowed"
            break
        x = x + alpha * d.dx
        y = y + alpha * d.dy
        s = s + alpha * d.ds
        trace.append(
            TraceRecord(
                fresh=True,
                mu=mu,
                sigma=cfg.sigma,
                dt=alpha,
                rho=None,
                resk=resk,
                accepted=True,
                min_x=float(x.min()),
                min_s=float(s.min()),
                gap=gap,
                step_limit=float(limit) if np.isfinite(limit) else None,
            )
        )

    z = Iterate(x, y, s)
    res = residuals(lp, z)
    # the loop checks convergence before stepping, so a run that lands
    # inside tolerance on its final step would otherwise be mislabeled
    if status == STATUS_MAX_ITERATIONS and res.kkt_error_inf < cfg.epsilon:
        status = STATUS_CONVERGED
    return SolveReport(
        status=status,
        z=z,
        kkt_error_inf=res.kkt_error_inf,
        duality_gap=res.duality_gap,
        successful_iterations=iters,
        trial_steps=iters,
        rank=lp.m,
        elapsed=time.perf_counter() - t0,
        trace=tuple(trace),
        detail=detail,
    )
