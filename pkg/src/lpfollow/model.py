"""Standard-form problem container, iterates, and the residual/merit rules
shared by both solvers."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Iterate",
    "Residuals",
    "StandardFormLP",
    "mu_rule",
    "residuals",
    "sigma_rule",
]


def _coerce_vector(v, name):
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {v.shape}")
    if not np.isfinite(v).all():
        raise ValueError(f"{name} contains non-finite entries")
    return np.ascontiguousarray(v)


@dataclass(frozen=True)
class StandardFormLP:
    """min c^T x subject to a x = b, x >= 0, with dense a (m-by-n)."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    name: str = "lp"

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
            raise ValueError(f"constraint matrix must be m>=1 by n>=1, got {a.shape}")
        if not np.isfinite(a).all():
            raise ValueError("constraint matrix contains non-finite entries")
        object.__setattr__(self, "a", np.ascontiguousarray(a))
        object.__setattr__(self, "b", _coerce_vector(self.b, "b"))
        object.__setattr__(self, "c", _coerce_vector(self.c, "c"))
        if self.b.shape[0] != a.shape[0]:
            raise ValueError(
                f"b has length {self.b.shape[0]}, expected {a.shape[0]}"
            )
        if self.c.shape[0] != a.shape[1]:
            raise ValueError(
                f"c has length {self.c.shape[0]}, expected {a.shape[1]}"
            )

    @property
    def m(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.a.shape[1]

    def objective(self, x) -> float:
        return float(self.c @ x)


@dataclass(frozen=True)
class Iterate:
    """Primal x, dual y, dual slack s. Solvers only ever accept points
    with x > 0 and s > 0 componentwise; the container itself does not
    enforce that (trial points may violate it)."""

    x: np.ndarray
    y: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce_vector(self.x, "x"))
        object.__setattr__(self, "y", _coerce_vector(self.y, "y"))
        object.__setattr__(self, "s", _coerce_vector(self.s, "s"))
        if self.x.shape[0] != self.s.shape[0]:
            raise ValueError("x and s must have equal length")


@dataclass(frozen=True)
class Residuals:
    """Primal/dual/complementarity residual blocks at an iterate.

    kkt_error_inf uses the unshifted complementarity x*s regardless of
    the shift that produced rc.
    """

    rp: np.ndarray
    rd: np.ndarray
    rc: np.ndarray
    mu: float
    kkt_error_inf: float
    duality_gap: float


def _check_dims(lp: StandardFormLP, z: Iterate):
    if z.x.shape[0] != lp.n or z.s.shape[0] != lp.n:
        raise ValueError(f"iterate primal/slack length {z.x.shape[0]}, expected {lp.n}")
    if z.y.shape[0] != lp.m:
        raise ValueError(f"iterate dual length {z.y.shape[0]}, expected {lp.m}")


def residuals(lp: StandardFormLP, z: Iterate, sigma_mu: float = 0.0) -> Residuals:
    """Evaluate the first-order optimality residuals at z.

    rp = a x - b, rd = a^T y + s - c, rc = x*s - sigma_mu.
    """
    _check_dims(lp, z)
    rp = lp.a @ z.x - lp.b
    rd = lp.a.T @ z.y + z.s - lp.c
    comp = z.x * z.s
    rc = comp - sigma_mu
    kkt = max(
        float(np.abs(rp).max()),
        float(np.abs(rd).max()),
        float(np.abs(comp).max()),
    )
    return Residuals(
        rp=rp,
        rd=rd,
        rc=rc,
        mu=mu_rule(lp, z),
        kkt_error_inf=kkt,
        duality_gap=float(z.x @ z.s),
    )


def mu_rule(lp: StandardFormLP, z: Iterate) -> float:
    """Average residual sum (||a x - b||_1 + ||a^T y + s - c||_1 + x^T s) / n.

    Unlike the classical x^T s / n this folds the feasibility residuals
    in, so infeasible iterates keep the perturbation from collapsing; at
    primal-dual feasible points the two rules coincide.
    """
    _check_dims(lp, z)
    rp = lp.a @ z.x - lp.b
    rd = lp.a.T @ z.y + z.s - lp.c
    return float(
        (np.abs(rp).sum() + np.abs(rd).sum() + z.x @ z.s) / lp.n
    )


def sigma_rule(mu: float) -> float:
    """Centering coefficient: min(0.05, mu)."""
    if mu < 0.0:
        raise ValueError(f"mu must be nonnegative, got {mu}")
    return min(0.05, mu)
