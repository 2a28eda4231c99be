"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line (run with -s to see them on success).

Criteria 2/3 share one set of solver runs (module-scoped fixture); the
trust-region solver there uses epsilon=1e-8 because the least-squares
repair bound (1 + 1e-4) * rho_star requires the reduced constraints to
be solved tighter than the 1e-6 default leaves them.
"""

import csv
import io
import time
from itertools import combinations

import numpy as np
import pytest

from lpfollow.baseline import BaselineConfig, solve_baseline
from lpfollow.generate import make_rank_deficient, random_full_rank
from lpfollow.linalg import qr_column_pivoting
from lpfollow.model import Iterate, StandardFormLP, mu_rule, residuals, sigma_rule
from lpfollow.newton import apply_step, newton_direction
from lpfollow.preprocess import lsq_residual_norm
from lpfollow.problem_io import inject_noise
from lpfollow.trust_region import DT_CAP, SolverConfig, next_dt, solve, solve_with_trace

from helpers import (
    bounded_random_lp,
    dense_newton_oracle,
    min_residual_norm,
    random_interior_lp,
    vertex_enum_optimum,
)
from test_cli import run_cli


def report(criterion: str, ok: bool, detail: str = ""):
    tag = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance] {criterion}: {tag}{suffix}", flush=True)
    assert ok, f"{criterion} failed{suffix}"


@pytest.fixture(scope="module")
def noisy_rank_deficient_runs():
    """Five seeded noisy rank-deficient instances solved by both methods."""
    runs = []
    t0 = time.perf_counter()
    cfg = SolverConfig(epsilon=1e-8)
    for seed in range(5):
        lp, _ = random_full_rank(20, 200, seed=seed)
        noisy = inject_noise(
            make_rank_deficient(lp, 5, seed=seed + 100), 1e-5, seed=seed + 200
        )
        runs.append(
            {
                "lp": noisy,
                "tr": solve(noisy, cfg),
                "baseline": solve_baseline(noisy, BaselineConfig()),
            }
        )
    return runs, time.perf_counter() - t0


def test_criterion_1_certificate_optimality():
    t0 = time.perf_counter()
    failures = []
    for m in (10, 20, 30, 40, 50):
        for seed in (1, 2):
            lp, cert = random_full_rank(m, 10 * m, density=0.2, seed=seed)
            rep = solve(lp)
            obj = lp.objective(rep.z.x)
            obj_star = lp.objective(cert.x)
            if not (
                rep.status == "converged"
                and rep.kkt_error_inf <= 1e-4
                and abs(obj - obj_star) <= 1e-3 * (1 + abs(obj_star))
                and rep.successful_iterations <= 100
            ):
                failures.append((m, seed, rep.status, rep.kkt_error_inf))
    elapsed = time.perf_counter() - t0
    report(
        "criterion 1 certificate optimality",
        not failures and elapsed < 30.0,
        f"10 instances in {elapsed:.1f}s" + (f"; failures: {failures}" if failures else ""),
    )


def test_criterion_2_robustness_contrast(noisy_rank_deficient_runs):
    runs, elapsed = noisy_rank_deficient_runs
    ok = True
    details = []
    for i, run in enumerate(runs):
        tr, base = run["tr"], run["baseline"]
        tr_ok = tr.status in ("converged", "max-iterations") and np.isfinite(
            tr.kkt_error_inf
        )
        base_ok = base.status in ("numerical-failure", "max-iterations")
        ok &= tr_ok and base_ok
        details.append(f"seed{i}: tr={tr.status}, baseline={base.status}")
    ok &= elapsed < 60.0
    report("criterion 2 robustness contrast", ok, "; ".join(details))


def test_criterion_3_least_squares_repair(noisy_rank_deficient_runs):
    runs, _ = noisy_rank_deficient_runs
    worst = 0.0
    ok = True
    for run in runs:
        lp = run["lp"]
        achieved = lsq_residual_norm(lp, run["tr"].z.x)
        rho_star = min_residual_norm(lp.a, lp.b)
        ok &= achieved <= (1.0 + 1e-4) * rho_star
        worst = max(worst, achieved / rho_star - 1.0)
    report("criterion 3 least-squares repair", ok, f"worst ratio-1 = {worst:.2e}")


def test_criterion_4_newton_step_oracle_equivalence():
    bad = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(1, 7))
        n = int(rng.integers(m + 1, 13))
        lp, z = random_interior_lp(rng, m, n)
        z = Iterate(
            x=z.x * rng.uniform(0.5, 2.0, n),
            y=z.y + rng.standard_normal(m),
            s=z.s * rng.uniform(0.5, 2.0, n),
        )
        sigma_mu = sigma_rule(mu_rule(lp, z)) * mu_rule(lp, z)
        d = newton_direction(lp, z, sigma_mu)
        dx, dy, ds = dense_newton_oracle(lp, z, sigma_mu)
        got = np.concatenate([d.dx, d.dy, d.ds])
        want = np.concatenate([dx, dy, ds])
        if np.abs(got - want).max() > 1e-8 * (1 + np.abs(want).max()):
            bad += 1
    report("criterion 4 newton-step oracle equivalence", bad == 0, f"{bad}/50 mismatched")


def test_criterion_5a_feasible_mu_recursion():
    bad = 0
    for seed in range(100):
        rng = np.random.default_rng(1000 + seed)
        lp, z = random_interior_lp(rng, 3, 8)
        mu = (z.x @ z.s) / lp.n
        sigma = sigma_rule(mu_rule(lp, z))
        d = newton_direction(lp, z, sigma * mu_rule(lp, z))
        dt = float(rng.uniform(0.1, 5.0))
        alpha = dt / (1 + dt)
        z1 = apply_step(z, d, dt)
        mu1 = (z1.x @ z1.s) / lp.n
        want = (1 - (1 - sigma) * alpha) * mu
        if abs(mu1 - want) > 1e-8 * abs(want):
            bad += 1
    report("criterion 5a feasible-start mu recursion", bad == 0, f"{bad}/100 violated")


def test_criterion_5b_feasible_step_orthogonality():
    bad = 0
    for seed in range(100):
        rng = np.random.default_rng(2000 + seed)
        lp, z = random_interior_lp(rng, 4, 10)
        d = newton_direction(lp, z, 0.05 * mu_rule(lp, z))
        scale = max(np.linalg.norm(d.dx) * np.linalg.norm(d.ds), 1e-30)
        if abs(d.dx @ d.ds) > 1e-8 * scale:
            bad += 1
    report("criterion 5b feasible-start orthogonality", bad == 0, f"{bad}/100 violated")


def test_criterion_5c_linear_block_contraction():
    bad = 0
    for seed in range(100):
        rng = np.random.default_rng(3000 + seed)
        lp, z = random_interior_lp(rng, 3, 7)
        z = Iterate(
            x=z.x * rng.uniform(0.5, 2.0, lp.n),
            y=z.y + rng.standard_normal(lp.m),
            s=z.s * rng.uniform(0.5, 2.0, lp.n),
        )
        res0 = residuals(lp, z)
        d = newton_direction(lp, z, 0.05 * res0.mu)
        dt = float(rng.uniform(0.1, 5.0))
        alpha = dt / (1 + dt)
        z1 = apply_step(z, d, dt)
        res1 = residuals(lp, z1)
        tol_p = 1e-10 * (1 + np.abs(res0.rp).max())
        tol_d = 1e-10 * (1 + np.abs(res0.rd).max())
        if (
            np.abs(res1.rp - (1 - alpha) * res0.rp).max() > tol_p
            or np.abs(res1.rd - (1 - alpha) * res0.rd).max() > tol_d
        ):
            bad += 1
    report("criterion 5c linear-block contraction", bad == 0, f"{bad}/100 violated")


def test_criterion_5d_accepted_iterate_positivity():
    accepted = 0
    bad = 0
    seed = 0
    while accepted < 100:
        lp, _ = random_full_rank(6, 60, seed=5000 + seed)
        seed += 1
        rep = solve_with_trace(lp)
        for rec in rep.trace:
            if rec.accepted:
                accepted += 1
                if not (rec.min_x > 0.0 and rec.min_s > 0.0):
                    bad += 1
    report(
        "criterion 5d accepted-iterate positivity",
        bad == 0,
        f"{accepted} accepted trials checked",
    )


def test_criterion_5e_dt_update_table():
    checked = 0
    bad = 0
    for seed in range(150):
        rng = np.random.default_rng(6000 + seed)
        dt = float(rng.uniform(1e-8, 20.0))
        rho = None if seed % 13 == 0 else float(rng.uniform(-3.0, 5.0))
        positive = bool(rng.integers(0, 2))
        got = next_dt(dt, rho, positive, 0.25, 0.75)
        if rho is not None and positive and abs(1 - rho) <= 0.25:
            want = min(2 * dt, DT_CAP)
        elif rho is not None and positive and 0.25 < abs(1 - rho) <= 0.75:
            want = dt
        else:
            want = 0.5 * dt
        checked += 1
        if got != want:
            bad += 1
    report("criterion 5e dt update table", bad == 0, f"{checked} synthesized cases")


def test_criterion_6_tiny_lp_vertex_oracle():
    cfg = SolverConfig(epsilon=1e-8)
    bad = []
    for seed in range(20):
        rng = np.random.default_rng(7000 + seed)
        m = int(rng.integers(2, 5))
        n = int(rng.integers(m + 1, 9))
        lp = bounded_random_lp(rng, m, n)
        want = vertex_enum_optimum(lp)
        rep = solve(lp, cfg)
        got = lp.objective(rep.z.x)
        if want is None or abs(got - want) > 1e-5:
            bad.append((seed, got, want, rep.status))
    report("criterion 6 tiny-LP vertex oracle", not bad, f"failures: {bad}" if bad else "20 LPs")


def test_criterion_7_factorization_invariants():
    bad = 0
    for seed in range(50):
        rng = np.random.default_rng(8000 + seed)
        m = int(rng.integers(4, 13))
        n = int(rng.integers(4, 13))
        r = int(rng.integers(1, min(m, n) + 1))
        left, _ = np.linalg.qr(rng.standard_normal((m, r)))
        right, _ = np.linalg.qr(rng.standard_normal((n, r)))
        a = left @ np.diag(rng.uniform(1.0, 2.0, r)) @ right.T
        f = qr_column_pivoting(a, rank_tol=1e-8)
        recon = np.abs(a[:, f.perm] - f.q @ f.r).max() <= 1e-10 * (1 + np.abs(a).max())
        orth = np.abs(f.q.T @ f.q - np.eye(m)).max() <= 1e-10
        diag = np.abs(np.diagonal(f.r))
        monotone = all(diag[i] >= diag[i + 1] for i in range(len(diag) - 1))
        if not (recon and orth and monotone and f.rank == r):
            bad += 1
    report("criterion 7 factorization invariants", bad == 0, "50 planted-rank matrices")


def test_criterion_8_bench_determinism():
    args = ("bench", "--suite", "5,8", "--seed", "21", "--noise", "1e-5",
            "--rank-deficient", "2")
    out1 = run_cli(*args)
    out2 = run_cli(*args)
    ok = out1.returncode == 0 and out2.returncode == 0

    def strip_seconds(text):
        return [row[:-1] for row in csv.reader(io.StringIO(text))]

    rows1, rows2 = strip_seconds(out1.stdout), strip_seconds(out2.stdout)
    ok = ok and rows1 == rows2 and len(rows1) == 5
    report("criterion 8 bench determinism", ok, f"{len(rows1) - 1} rows compared")
