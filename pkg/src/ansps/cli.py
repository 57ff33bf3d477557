"""Benchmark command line.

Three subcommands share one flag set. ``run`` executes every requested
configuration cell and writes one trace CSV per cell. ``compare`` also
scores each cell by the scalar products spent to reach a target
full-data objective and prints a ranked table. ``sweep`` is ``compare``
over a rule grid, adding a best-cell line per sample-size strategy.

Exit codes: 0 success, 1 usage error, 2 I/O or data error, 3 numeric
abort.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from dataclasses import dataclass

from .data import ParseError, make_synthetic, parse_libsvm
from .hinge import HingeProblem, grid_search_optimum
from .linesearch import NONMONOTONE_RULES
from .sampling import STRATEGIES
from .solver import NumericError, SolverConfig, run
from .spectral import RULES

_SYNTHETIC_SEPARATION = 2.0


def _grid_resolution(n_features: int) -> float:
    # a 3-d grid at 1e-3 is ~2.5e8 points; coarsen with dimension
    return 1e-3 if n_features <= 2 else 1e-2


def _synthetic_spec(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected n_features,n_samples,seed, got {text!r}"
        )
    try:
        n, total, seed = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected three integers n_features,n_samples,seed, got {text!r}"
        ) from None
    if n < 1 or total < 1:
        raise argparse.ArgumentTypeError("synthetic sizes must be positive")
    return n, total, seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ansps",
        description="Adaptive-sample-size spectral projected subgradient benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "run configuration cells and write trace CSVs"),
        ("compare", "run cells and rank them by cost to a target objective"),
        ("sweep", "compare over a rule grid, reporting the best cell per strategy"),
    ):
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--data", metavar="PATH", help="LIBSVM-format file, or - for stdin")
        src.add_argument(
            "--synthetic",
            type=_synthetic_spec,
            metavar="n,N,seed",
            help="generate a synthetic dataset with n features and N rows",
        )
        p.add_argument("--delta", type=float, default=10.0, help="regularization weight")
        p.add_argument(
            "--strategy", nargs="+", choices=STRATEGIES, default=["ansps"],
            help="sample-size strategies to run",
        )
        p.add_argument(
            "--spectral", nargs="+", choices=RULES, default=["abbmin"],
            help="spectral coefficient rules to run",
        )
        p.add_argument(
            "--nonmonotone", nargs="+", choices=NONMONOTONE_RULES, default=["ada"],
            help="reference-value rules to run",
        )
        p.add_argument("--C2", dest="c2", type=float, default=100.0, help="step-size cap scale")
        p.add_argument("--eta", type=float, default=1e-4, help="sufficient-decrease weight")
        p.add_argument("--m", type=int, default=2, help="candidate steps per line search")
        p.add_argument("--r", type=float, default=1.1, help="minimum sample growth factor")
        p.add_argument(
            "--n0-frac", dest="n0_frac", type=float, default=0.1,
            help="starting sample fraction",
        )
        p.add_argument("--seed", nargs="+", type=int, default=[0], help="run seeds")
        p.add_argument("--max-iters", dest="max_iters", type=int, default=1000)
        p.add_argument("--fev-budget", dest="fev_budget", type=int, default=None)
        p.add_argument("--out", required=True, metavar="DIR", help="output directory")
        if name in ("compare", "sweep"):
            p.add_argument(
                "--target-gap", dest="target_gap", type=float, default=None,
                help="absolute gap over the reference objective "
                "(default: 5%% of its magnitude)",
            )
    return parser


@dataclass
class CellResult:
    strategy: str
    spectral: str
    nonmonotone: str
    seed: int
    trace_file: str
    trace: object

    @property
    def label(self) -> str:
        return f"{self.strategy}_{self.spectral}_{self.nonmonotone}_s{self.seed}"


def _load_dataset(args):
    if args.synthetic is not None:
        n, total, seed = args.synthetic
        return make_synthetic(n, total, separation=_SYNTHETIC_SEPARATION, seed=seed)
    if args.data == "-":
        return parse_libsvm(sys.stdin)
    return parse_libsvm(args.data)


def _run_cells(args, problem) -> list[CellResult]:
    os.makedirs(args.out, exist_ok=True)
    results = []
    for strategy, spectral, nonmono, seed in itertools.product(
        args.strategy, args.spectral, args.nonmonotone, args.seed
    ):
        config = SolverConfig(
            strategy=strategy,
            spectral=spectral,
            nonmonotone=nonmono,
            c2=args.c2,
            eta=args.eta,
            m=args.m,
            r=args.r,
            n0_frac=args.n0_frac,
            seed=seed,
            max_iterations=args.max_iters,
            fev_budget=args.fev_budget,
        )
        trace = run(problem, config)
        cell = CellResult(strategy, spectral, nonmono, seed, "", trace)
        cell.trace_file = os.path.join(args.out, cell.label + ".csv")
        trace.write_csv(cell.trace_file)
        results.append(cell)
    return results


def _reference_value(problem, results) -> float:
    if problem.n_features <= 3:
        return grid_search_optimum(problem, _grid_resolution(problem.n_features)).value
    return min(
        min(r.f_full for r in cell.trace.rows if r.f_full is not None)
        for cell in results
    )


def _fev_to_target(trace, target: float):
    for row in trace.rows:
        if row.f_full is not None and row.f_full <= target:
            return row.fev_cum
    return None


def _print_table(results, f_ref, target, out_dir):
    print(f"reference objective {f_ref!r}, target {target!r}")
    scored = []
    for cell in results:
        fev = _fev_to_target(cell.trace, target)
        scored.append((fev, cell))
    scored.sort(key=lambda t: (t[0] is None, t[0] if t[0] is not None else 0))
    header = f"{'strategy':<10}{'spectral':<10}{'nonmonotone':<13}{'seed':>6}  {'fev_to_target':>14}  {'f_full_final':>14}"
    print(header)
    for fev, cell in scored:
        final = cell.trace.final_row.f_full
        fev_text = str(fev) if fev is not None else "not reached"
        print(
            f"{cell.strategy:<10}{cell.spectral:<10}{cell.nonmonotone:<13}"
            f"{cell.seed:>6}  {fev_text:>14}  {final:>14.6g}"
        )

    summary_path = os.path.join(out_dir, "summary.csv")
    with open(summary_path, "w", newline="") as fh:
        fh.write("strategy,spectral,nonmonotone,seed,fev_to_target,f_full_final,trace_file\n")
        for fev, cell in scored:
            fev_text = "" if fev is None else str(fev)
            fh.write(
                f"{cell.strategy},{cell.spectral},{cell.nonmonotone},{cell.seed},"
                f"{fev_text},{cell.trace.final_row.f_full!r},{os.path.basename(cell.trace_file)}\n"
            )
    print(f"wrote {summary_path}")
    return scored


def _cmd_run(args) -> int:
    problem = HingeProblem(_load_dataset(args), delta=args.delta)
    for cell in _run_cells(args, problem):
        final = cell.trace.final_row
        print(f"wrote {cell.trace_file}  (iterations {final.k}, f_full {final.f_full:.6g})")
    return 0


def _cmd_compare(args, per_strategy_best: bool = False) -> int:
    problem = HingeProblem(_load_dataset(args), delta=args.delta)
    results = _run_cells(args, problem)
    f_ref = _reference_value(problem, results)
    gap = args.target_gap if args.target_gap is not None else 0.05 * abs(f_ref)
    target = f_ref + gap
    scored = _print_table(results, f_ref, target, args.out)
    if per_strategy_best:
        for strategy in args.strategy:
            hits = [(fev, cell) for fev, cell in scored if cell.strategy == strategy]
            fev, cell = hits[0]  # scored is sorted, reached cells first
            fev_text = str(fev) if fev is not None else "not reached"
            print(f"best {strategy}: {cell.label} (fev_to_target {fev_text})")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "compare":
            return _cmd_compare(args)
        return _cmd_compare(args, per_strategy_best=True)
    except NumericError as exc:
        print(f"numeric abort: {exc}", file=sys.stderr)
        return 3
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
