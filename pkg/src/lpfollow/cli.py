"""Command-line front end: solve one problem, benchmark a suite, or
generate seeded test instances.

Exit codes: 0 solved/ran, 1 solver did not converge, 2 usage or parse
errors.
"""

import argparse
import csv
import io
import sys
from pathlib import Path

from .baseline import BaselineConfig, solve_baseline
from .generate import make_rank_deficient, random_full_rank
from .preprocess import DegenerateProblemError
from .problem_io import (
    ParseError,
    UnsupportedFeatureError,
    inject_noise,
    read_coordinate_lp,
    read_mps,
    to_standard_form,
    write_coordinate_lp,
)
from .trust_region import SolverConfig, solve

CSV_COLUMNS = [
    "problem",
    "m",
    "n",
    "rank",
    "solver",
    "status",
    "kkt_error",
    "gap",
    "iterations",
    "trial_steps",
    "seconds",
]


def _add_solver_options(parser):
    parser.add_argument("--noise", type=float, default=0.0, metavar="EPS",
                        help="perturb b by EPS*uniform[0,1) before solving")
    parser.add_argument("--seed", type=int, default=0, help="seed for noise/generation")
    parser.add_argument("--maxit", type=int, default=None)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--dt0", type=float, default=None)
    parser.add_argument("--big-m-factor", type=float, default=None)
    parser.add_argument("--rank-tol", type=float, default=None)


def _solver_config(args) -> SolverConfig:
    overrides = {}
    for attr, key in [
        ("maxit", "maxit"),
        ("epsilon", "epsilon"),
        ("dt0", "dt0"),
        ("big_m_factor", "big_m_factor"),
        ("rank_tol", "rank_tol"),
    ]:
        value = getattr(args, attr)
        if value is not None:
            overrides[key] = value
    return SolverConfig(**overrides)


def _baseline_config(args) -> BaselineConfig:
    overrides = {}
    if args.maxit is not None:
        overrides["maxit"] = args.maxit
    if args.epsilon is not None:
        overrides["epsilon"] = args.epsilon
    return BaselineConfig(**overrides)


def _run_solver(lp, solver: str, args):
    if solver == "baseline":
        return solve_baseline(lp, _baseline_config(args))
    return solve(lp, _solver_config(args))


def _load_problem(path: Path, fmt: str):
    text = path.read_text()
    if fmt == "auto":
        fmt = "mps" if path.suffix.lower() == ".mps" else "coordinate"
    if fmt == "mps":
        general = read_mps(text)
        lp, mapping = to_standard_form(general)
        note = (
            f"general form {general.n_rows}x{general.n_cols} "
            f"-> standard form {lp.m}x{lp.n}"
        )
        return lp, note
    return read_coordinate_lp(text), ""


def cmd_solve(args) -> int:
    if args.noise < 0.0:
        print(f"error: --noise must be nonnegative, got {args.noise}", file=sys.stderr)
        return 2
    try:
        lp, note = _load_problem(Path(args.file), args.format)
    except OSError as e:
        print(f"error: cannot read {args.file}: {e}", file=sys.stderr)
        return 2
    except (ParseError, UnsupportedFeatureError, ValueError) as e:
        print(f"error: {args.file}: {e}", file=sys.stderr)
        return 2

    if args.noise > 0.0:
        lp = inject_noise(lp, args.noise, args.seed)
    try:
        report = _run_solver(lp, args.solver, args)
    except DegenerateProblemError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    if note:
        print(f"# {note}")
    print(
        f"problem={lp.name} m={lp.m} n={lp.n} rank={report.rank} "
        f"solver={args.solver} status={report.status} "
        f"kkt_error={report.kkt_error_inf:.6e} gap={report.duality_gap:.6e} "
        f"iterations={report.successful_iterations} "
        f"trial_steps={report.trial_steps} seconds={report.elapsed:.3f}"
    )
    if report.detail:
        print(f"# {report.detail}")
    return 0 if report.converged else 1


def _suite_instances(args):
    instances = []
    if args.suite:
        try:
            m_values = [int(tok) for tok in args.suite.split(",") if tok.strip()]
        except ValueError:
            raise ValueError(f"bad --suite list: {args.suite!r}") from None
        for idx, m in enumerate(m_values):
            seed = args.seed + idx
            lp, _ = random_full_rank(m, 10 * m, density=args.density, seed=seed)
            if args.rank_deficient > 0:
                lp = make_rank_deficient(lp, args.rank_deficient, seed=seed + 1000)
            instances.append(lp)
    elif args.dir:
        root = Path(args.dir)
        if not root.is_dir():
            raise ValueError(f"not a directory: {args.dir}")
        for path in sorted(root.iterdir()):
            if path.suffix.lower() in (".lp", ".txt", ".mps"):
                lp, _ = _load_problem(path, "auto")
                instances.append(lp)
    return instances


def cmd_bench(args) -> int:
    if args.noise < 0.0:
        print(f"error: --noise must be nonnegative, got {args.noise}", file=sys.stderr)
        return 2
    try:
        instances = _suite_instances(args)
    except (ParseError, UnsupportedFeatureError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if not instances:
        print("error: empty suite (use --suite or --dir)", file=sys.stderr)
        return 2
    solvers = [tok.strip() for tok in args.solvers.split(",") if tok.strip()]
    for solver in solvers:
        if solver not in ("pfmtrlp", "baseline"):
            print(f"error: unknown solver {solver!r}", file=sys.stderr)
            return 2

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for idx, lp in enumerate(instances):
        # noise stream is offset so it never aliases the generation stream
        solved = inject_noise(lp, args.noise, args.seed + 5000 + idx) if args.noise > 0 else lp
        for solver in solvers:
            try:
                report = _run_solver(solved, solver, args)
                row = [
                    solved.name,
                    solved.m,
                    solved.n,
                    report.rank,
                    solver,
                    report.status,
                    f"{report.kkt_error_inf:.6e}",
                    f"{report.duality_gap:.6e}",
                    report.successful_iterations,
                    report.trial_steps,
                    f"{report.elapsed:.4f}",
                ]
            except DegenerateProblemError:
                row = [solved.name, solved.m, solved.n, 0, solver,
                       "numerical-failure", "nan", "nan", 0, 0, "0.0000"]
            writer.writerow(row)

    text = buf.getvalue()
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_generate(args) -> int:
    if args.m < 1 or args.n < 2:
        print(f"error: invalid dimensions m={args.m} n={args.n}", file=sys.stderr)
        return 2
    try:
        lp, certificate = random_full_rank(
            args.m, args.n, density=args.density, seed=args.seed
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    certificate_objective = lp.objective(certificate.x)
    base_rank = min(lp.m, lp.n)
    if args.rank_deficient > 0:
        lp = make_rank_deficient(lp, args.rank_deficient, seed=args.seed + 1000)
    if args.noise > 0.0:
        lp = inject_noise(lp, args.noise, args.seed + 2000)

    text = write_coordinate_lp(lp)
    out = Path(args.output)
    try:
        out.write_text(text)
        meta = (
            f"name={lp.name} m={lp.m} n={lp.n} rank={base_rank} seed={args.seed} "
            f"certificate_objective={certificate_objective!r}\n"
        )
        out.with_suffix(out.suffix + ".meta").write_text(meta)
    except OSError as e:
        print(f"error: cannot write {args.output}: {e}", file=sys.stderr)
        return 2
    print(f"wrote {out} ({lp.m}x{lp.n}, certificate objective {certificate_objective:.6e})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpfollow",
        description="Standard-form LP tools: trust-region path following with "
        "pivoted-QR constraint repair, a classical baseline, and a benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one problem file")
    p_solve.add_argument("file", help="coordinate or MPS file")
    p_solve.add_argument("--format", choices=["auto", "coordinate", "mps"], default="auto")
    p_solve.add_argument("--solver", choices=["pfmtrlp", "baseline"], default="pfmtrlp",
                         help="trust-region path-following (default) or the classical baseline")
    _add_solver_options(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="run a suite and emit CSV")
    p_bench.add_argument("--suite", metavar="M1,M2,...",
                         help="generate instances with these row counts (n = 10m)")
    p_bench.add_argument("--dir", help="solve every .lp/.txt/.mps file in a directory")
    p_bench.add_argument("--density", type=float, default=0.2)
    p_bench.add_argument("--rank-deficient", type=int, default=0, metavar="K",
                         help="append K redundant rows to each generated instance")
    p_bench.add_argument("--solvers", default="pfmtrlp,baseline",
                         help="comma-separated subset of pfmtrlp,baseline")
    p_bench.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")
    _add_solver_options(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_gen = sub.add_parser("generate", help="write a seeded random instance")
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--density", type=float, default=0.2)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--rank-deficient", type=int, default=0, metavar="K")
    p_gen.add_argument("--noise", type=float, default=0.0, metavar="EPS")
    p_gen.add_argument("--output", "-o", required=True, metavar="PATH")
    p_gen.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
