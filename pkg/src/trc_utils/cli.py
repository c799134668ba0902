"""The ``trc`` command: solve, extract cores, evaluate words and run benchmarks."""

import argparse
import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Union

from trc_utils.cores.extraction import extract, load_instance
from trc_utils.cores.resolution_graph import to_dot
from trc_utils.cores.unary_nfa import ParikhBoundError
from trc_utils.settings import TrcConfig, default_config, seed_from_env
from trc_utils.solving.solver import ClauseLimitExceeded, ResourceCapExceeded, TimeLimitExceeded
from trc_utils.solving.temporal_resolution import TemporalResolutionSolver
from trc_utils.structs.ltl_structs import AnnotatedFormula, Formula
from trc_utils.structs.semilinear import SemilinearOverflowError, set_lcm_cap
from trc_utils.structs.snf_structs import SnfClause
from trc_utils.validation.generators import PROFILES, sample_instances
from trc_utils.validation.invariants import verify_extraction
from trc_utils.validation.lasso import PeriodCapExceeded, eval_ltl, eval_ltlp, parse_word

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_RESOURCE_CAP = 2
EXIT_VERIFY_FAILED = 3
EXIT_SAT = 10
EXIT_UNSAT = 20

INSTANCE_SUFFIXES = (".ltl", ".snf")

BENCH_FIELDS = [
    "name",
    "verdict",
    "input_clauses",
    "uc_size",
    "clauses",
    "vertices",
    "core_vertices",
    "loop_iterations",
    "distinct_sets",
    "finite_sets",
    "infinite_sets",
    "solve_time",
    "labeling_time",
    "verified",
    "error",
]


def _config(args: argparse.Namespace) -> TrcConfig:
    overrides = {"seed": args.seed if args.seed is not None else seed_from_env()}
    if args.max_clauses is not None:
        overrides["max_clauses"] = args.max_clauses
    if args.time_limit is not None:
        overrides["time_limit"] = args.time_limit
    if args.selection is not None:
        overrides["selection"] = args.selection
    if args.precedence:
        overrides["literal_precedence"] = tuple(name.strip() for name in args.precedence.split(",") if name.strip())
    if args.parikh is not None:
        overrides["parikh_method"] = args.parikh
    config = default_config(**overrides)
    set_lcm_cap(config.lcm_cap)
    return config


def _solvable(instance: Union[Formula, AnnotatedFormula, list[SnfClause]]) -> Union[Formula, list[SnfClause]]:
    return instance.strip() if isinstance(instance, AnnotatedFormula) else instance


def cmd_solve(args: argparse.Namespace) -> int:
    config = _config(args)
    instance = _solvable(load_instance(args.path))
    solver = TemporalResolutionSolver(config)
    result = solver.solve_ltl(instance) if isinstance(instance, Formula) else solver.solve(instance)
    print(result.verdict.value.upper())
    return EXIT_UNSAT if result.is_unsat else EXIT_SAT


def cmd_uc(args: argparse.Namespace) -> int:
    config = _config(args)
    instance = _solvable(load_instance(args.path))
    extraction = extract(instance, config, timepoints=args.timepoints, simplify=args.simplify)
    report = extraction.report
    print(report.dumps() if args.format == "json" else report.to_text(), end="")
    if not extraction.result.is_unsat:
        return EXIT_SAT
    if args.dot is not None:
        with open(args.dot, "w") as f:
            f.write(to_dot(extraction.graph, highlight=extraction.core_graph))
        logger.info("Wrote resolution graph to %s", args.dot)
    if args.verify:
        verification = verify_extraction(extraction, config)
        print(verification.output, file=sys.stderr)
        if not verification.ok:
            return EXIT_VERIFY_FAILED
    return EXIT_UNSAT


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config(args)
    formula = load_instance(args.path)
    if isinstance(formula, list):
        raise ValueError("eval expects an .ltl or .ltlp file")
    word = parse_word(args.word)
    plain = formula.strip() if isinstance(formula, AnnotatedFormula) else formula
    print(f"LTL: {str(eval_ltl(word, plain)).lower()}")
    if isinstance(formula, AnnotatedFormula):
        print(f"LTLp: {str(eval_ltlp(word, formula, config.eval_period_cap)).lower()}")
    return EXIT_OK


def _bench_row(name: str, instance, config: TrcConfig, verify: bool) -> dict:
    set_lcm_cap(config.lcm_cap)
    row = {field: "" for field in BENCH_FIELDS}
    row["name"] = name
    start_time = time.time()
    try:
        if isinstance(instance, (str, Path)):
            instance = _solvable(load_instance(instance))
        extraction = extract(instance, config, timepoints=True)
    except ResourceCapExceeded as e:
        row.update(verdict="cap", error=f"{type(e).__name__}: {e}", solve_time=f"{time.time() - start_time:.4f}")
        return row
    except Exception as e:
        logger.exception("Instance %s failed", name)
        row.update(verdict="error", error=f"{type(e).__name__}: {e}")
        return row
    report = extraction.report
    stats = report.statistics
    row["verdict"] = report.verdict.value
    for key in ("input_clauses", "clauses", "vertices", "core_vertices", "loop_iterations", "uc_size"):
        row[key] = stats.get(key, "")
    row["solve_time"] = f"{stats.get('solve_time', 0.0):.4f}"
    if "labeling_time" in stats:
        row["labeling_time"] = f"{stats['labeling_time']:.4f}"
    if report.timepoints is not None:
        row["distinct_sets"] = ";".join(sorted({str(s) for s in report.timepoints}))
        row["finite_sets"] = sum(1 for s in report.timepoints if s.is_finite)
        row["infinite_sets"] = sum(1 for s in report.timepoints if not s.is_finite)
    if verify and extraction.result.is_unsat:
        verification = verify_extraction(extraction, config)
        row["verified"] = "yes" if verification.ok else "no"
        if not verification.ok:
            row["error"] = verification.output.replace("\n", " | ")
    return row


def _bench_instances(args: argparse.Namespace, config: TrcConfig) -> list[tuple[str, object]]:
    if args.directory is not None:
        directory = Path(args.directory)
        if not directory.is_dir():
            raise ValueError(f"Not a directory: {directory}")
        paths = sorted(p for p in directory.iterdir() if p.suffix in INSTANCE_SUFFIXES)
        return [(p.name, str(p)) for p in paths]
    instances = sample_instances(config.seed, args.count, args.profile, args.size)
    return [(f"{args.profile}-{i:03d}", instance) for i, instance in enumerate(instances)]


def cmd_bench(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.budget is not None:
        config.time_limit = args.budget
    jobs = _bench_instances(args, config)
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_bench_row, name, instance, config, args.verify) for name, instance in jobs]
            rows = [f.result() for f in futures]
    else:
        rows = [_bench_row(name, instance, config, args.verify) for name, instance in jobs]
    rows.sort(key=lambda row: row["name"])

    out = open(args.csv, "w", newline="") if args.csv is not None else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    unsat = sum(1 for row in rows if row["verdict"] == "unsat")
    failed = sum(1 for row in rows if row["verified"] == "no")
    print(f"{len(rows)} instances, {unsat} unsat, {failed} failed verification", file=sys.stderr)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trc", description="Temporal resolution with cores and sets of time points")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug output")
    parser.add_argument("--seed", type=int, default=None, help="Random seed (default: $TRC_SEED or 7)")
    parser.add_argument("--max-clauses", type=int, default=None)
    parser.add_argument("--time-limit", type=float, default=None, help="Seconds per instance")
    parser.add_argument("--selection", choices=("weight", "fifo"), default=None)
    parser.add_argument("--precedence", default=None, help="Comma-separated propositions, greatest first")
    parser.add_argument("--parikh", choices=("multi-final", "layered"), default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Decide satisfiability")
    solve.add_argument("path")
    solve.set_defaults(func=cmd_solve)

    uc = commands.add_parser("uc", help="Extract an unsatisfiable core")
    uc.add_argument("path")
    uc.add_argument("--timepoints", action="store_true", help="Add sets of time points")
    uc.add_argument("--format", choices=("text", "json"), default="text")
    uc.add_argument("--dot", default=None, help="Write the resolution graph in DOT format")
    uc.add_argument("--verify", action="store_true", help="Check the core and its sets of time points")
    uc.add_argument("--simplify", action="store_true", help="Propagate constants in the LTL core")
    uc.set_defaults(func=cmd_uc)

    evaluate = commands.add_parser("eval", help="Evaluate a formula on a lasso word")
    evaluate.add_argument("path")
    evaluate.add_argument("--word", required=True, help='e.g. "{p,q}.{}.{p} ; {p}.{q}"')
    evaluate.set_defaults(func=cmd_eval)

    bench = commands.add_parser("bench", help="Extract cores for many instances and write a CSV table")
    bench.add_argument("directory", nargs="?", default=None)
    bench.add_argument("--profile", choices=PROFILES, default="unsat-by-construction")
    bench.add_argument("--count", type=int, default=50)
    bench.add_argument("--size", type=int, default=3)
    bench.add_argument("--budget", type=float, default=None, help="Seconds per instance")
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--verify", action="store_true")
    bench.add_argument("--csv", default=None, help="Output file (default: stdout)")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ClauseLimitExceeded as e:
        print(f"Resource cap: clause limit exceeded ({e})", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    except TimeLimitExceeded as e:
        print(f"Resource cap: time limit exceeded ({e})", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    except (ResourceCapExceeded, SemilinearOverflowError, PeriodCapExceeded) as e:
        print(f"Resource cap: {e}", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    except ParikhBoundError as e:
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, KeyError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
