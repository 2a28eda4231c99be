"""Path-following solver with trust-region control of the step size.

One Newton direction is computed per "fresh" pass and reused across
rejected retries; the damping factor alpha = dt/(1+dt) maps the
time-step dt onto (0, 1), so doubling dt pushes the step toward a full
Newton step while halving backs it off. dt itself is doubled, kept or
halved depending on how well the linearized residual model predicted
the achieved residual.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .model import Iterate, StandardFormLP, residuals
from .newton import (
    IllConditionedStepError,
    InteriorViolationError,
    newton_direction,
)
from .preprocess import ReducedProblem, recover, reduce

__all__ = [
    "DT_CAP",
    "DT_STALL",
    "SolveReport",
    "SolverConfig",
    "TraceRecord",
    "next_dt",
    "solve",
    "solve_with_trace",
]

# dt/(1+dt) is 1.0 to double precision beyond this; growing dt further is noise
DT_CAP = 1e12
# below this no trial can move the iterate; treat as stalled
DT_STALL = 1e-14

STATUS_CONVERGED = "converged"
STATUS_MAX_ITERATIONS = "max-iterations"
STATUS_STALLED = "stalled"
STATUS_NUMERICAL_FAILURE = "numerical-failure"


@dataclass(frozen=True)
class SolverConfig:
    eta_a: float = 1e-6
    eta1: float = 0.25
    eta2: float = 0.75
    epsilon: float = 1e-6
    dt0: float = 0.9
    maxit: int = 100
    big_m_factor: float = 1.0
    rank_tol: float = 1e-8

    def __post_init__(self):
        if not (0.0 < self.eta_a < self.eta1 < self.eta2 < 1.0):
            raise ValueError(
                f"need 0 < eta_a < eta1 < eta2 < 1, got "
                f"{self.eta_a}, {self.eta1}, {self.eta2}"
            )
        if not self.dt0 > 0.0:
            raise ValueError(f"dt0 must be positive, got {self.dt0}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.maxit < 1:
            raise ValueError(f"maxit must be at least 1, got {self.maxit}")
        if not self.big_m_factor > 0.0:
            raise ValueError(f"big_m_factor must be positive, got {self.big_m_factor}")
        if not self.rank_tol > 0.0:
            raise ValueError(f"rank_tol must be positive, got {self.rank_tol}")


@dataclass(frozen=True)
class TraceRecord:
    """One trial step. `fresh` marks passes where the direction (and mu,
    sigma, resk, gap, block norms) were recomputed; retry records repeat
    them. rp_inf/rd_inf are the reduced-space feasibility block norms of
    the current iterate."""

    fresh: bool
    mu: float
    sigma: float
    dt: float
    rho: float | None
    resk: float
    accepted: bool
    min_x: float
    min_s: float
    gap: float
    rp_inf: float = 0.0
    rd_inf: float = 0.0
    proximity: float | None = None
    step_limit: float | None = None


@dataclass(frozen=True)
class SolveReport:
    status: str
    z: Iterate
    kkt_error_inf: float
    duality_gap: float
    successful_iterations: int
    trial_steps: int
    rank: int
    elapsed: float
    trace: tuple[TraceRecord, ...] = field(default=())
    detail: str = ""

    @property
    def converged(self) -> bool:
        return self.status == STATUS_CONVERGED


def next_dt(dt: float, rho: float | None, positive: bool, eta1: float, eta2: float) -> float:
    """Three-case time-step schedule.

    Double when the linear model tracked the achieved residual
    (|1 - rho| <= eta1) at an interior trial point, keep it when the
    match is mediocre (eta1 < |1 - rho| <= eta2, still interior), halve
    otherwise. rho=None (guarded denominator) always halves.
    """
    if rho is not None and positive:
        err = abs(1.0 - rho)
        if err <= eta1:
            return min(2.0 * dt, DT_CAP)
        if err <= eta2:
            return dt
    return 0.5 * dt


def _blocks_norm(f1, f2, f3):
    return float(np.sqrt(f1 @ f1 + f2 @ f2 + f3 @ f3))


def _reduced_start(red: ReducedProblem, cfg: SolverConfig, z0: Iterate | None):
    n = red.perm.shape[0]
    if z0 is None:
        big_m = max(
            float(np.abs(red.r1).max()),
            float(np.abs(red.b_r).max()),
            float(np.abs(red.c_r).max()),
        )
        x = np.full(n, cfg.big_m_factor * big_m)
        return x, np.zeros(red.rank), x.copy()
    if z0.x.shape[0] != n or z0.y.shape[0] != red.original_m:
        raise ValueError("z0 must be dimensioned for the original problem")
    x = z0.x[red.perm]
    s = z0.s[red.perm]
    if x.min() <= 0.0 or s.min() <= 0.0:
        raise InteriorViolationError("z0 must be strictly interior")
    return x, red.q1.T @ z0.y, s


def solve(
    lp: StandardFormLP,
    cfg: SolverConfig | None = None,
    z0: Iterate | None = None,
    keep_trace: bool = True,
) -> SolveReport:
    """Repair the constraints, then path-follow the reduced problem.

    The returned iterate, KKT error and duality gap live in the original
    space; `status` refers to the reduced-space residual test (converged
    means the reduced residual dropped below cfg.epsilon). z0, when
    given, is an original-space strictly interior start; the default is
    the scale-matched constant point.
    """
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    red = reduce(lp, cfg.rank_tol)
    reduced_lp = red.as_lp(name=f"{lp.name}:reduced")
    r1, b_r, c_r = red.r1, red.b_r, red.c_r
    n = lp.n

    x, y, s = _reduced_start(red, cfg, z0)
    dt = cfg.dt0
    fresh = True
    directions = 0
    trials = 0
    trace: list[TraceRecord] = []
    status = STATUS_MAX_ITERATIONS
    detail = ""

    # carried across retries within one fresh pass
    mu = sigma = shift = norm_f = resk = gap = 0.0
    rp_inf = rd_inf = 0.0
    f3_shifted = None
    d = None

    while True:
        if fresh:
            f1 = r1 @ x - b_r
            f2 = r1.T @ y + s - c_r
            f3 = x * s
            gap = float(x @ s)
            mu = float((np.abs(f1).sum() + np.abs(f2).sum() + gap) / n)
            rp_inf = float(np.abs(f1).max())
            rd_inf = float(np.abs(f2).max())
            resk = max(rp_inf, rd_inf, float(f3.max()))
            if resk < cfg.epsilon:
                status = STATUS_CONVERGED
                break
            if directions >= cfg.maxit:
                status = STATUS_MAX_ITERATIONS
                break
            directions += 1
            sigma = min(0.05, mu)
            shift = sigma * mu
            f3_shifted = f3 - shift
            norm_f = _blocks_norm(f1, f2, f3_shifted)
            try:
                d = newton_direction(reduced_lp, Iterate(x, y, s), shift)
            except (InteriorViolationError, IllConditionedStepError) as e:
                status = STATUS_NUMERICAL_FAILURE
                detail = str(e)
                break

        alpha = dt / (1.0 + dt)
        xp = x + alpha * d.dx
        yp = y + alpha * d.dy
        sp = s + alpha * d.ds
        f1p = r1 @ xp - b_r
        f2p = r1.T @ yp + sp - c_r
        f3p = xp * sp - shift
        norm_fp = _blocks_norm(f1p, f2p, f3p)
        # first/second blocks are linear, so the model matches them exactly;
        # only the complementarity block is linearized
        lin3 = f3_shifted + x * (sp - s) + s * (xp - x)
        norm_lin = _blocks_norm(f1p, f2p, lin3)

        positive = xp.min() > 0.0 and sp.min() > 0.0
        denom = norm_f - norm_lin
        rho = None if denom <= 1e-14 * norm_f else (norm_f - norm_fp) / denom
        accepted = rho is not None and rho >= cfg.eta_a and positive
        dt_next = next_dt(dt, rho, positive, cfg.eta1, cfg.eta2)
        trials += 1

        if keep_trace:
            gap_p = float(xp @ sp)
            prox = (
                float((xp * sp).min() / (gap_p / n))
                if positive and gap_p > 0.0
                else None
            )
            trace.append(
                TraceRecord(
                    fresh=fresh,
                    mu=mu,
                    sigma=sigma,
                    dt=dt,
                    rho=None if rho is None else float(rho),
                    resk=resk,
                    accepted=accepted,
                    min_x=float(xp.min()),
                    min_s=float(sp.min()),
                    gap=gap,
                    rp_inf=rp_inf,
                    rd_inf=rd_inf,
                    proximity=prox,
                )
            )

        if accepted:
            x, y, s = xp, yp, sp
            fresh = True
        else:
            fresh = False
        dt = dt_next
        if not accepted and dt < DT_STALL:
            status = STATUS_STALLED
            detail = f"time step underflowed below {DT_STALL:g} without acceptance"
            break

    z = recover(red, Iterate(x, y, s))
    res = residuals(lp, z)
    return SolveReport(
        status=status,
        z=z,
        kkt_error_inf=res.kkt_error_inf,
        duality_gap=res.duality_gap,
        successful_iterations=directions,
        trial_steps=trials,
        rank=red.rank,
        elapsed=time.perf_counter() - t0,
        trace=tuple(trace),
        detail=detail,
    )


def solve_with_trace(
    lp: StandardFormLP,
    cfg: SolverConfig | None = None,
    z0: Iterate | None = None,
) -> SolveReport:
    """Same as solve() with the per-trial trace always fully populated."""
    return solve(lp, cfg, z0=z0, keep_trace=True)
