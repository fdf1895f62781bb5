import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field, replace
from typing import List, Optional

from crossvar.core.config import DEFAULT_CONFIG
from crossvar.core.errors import (
    AlgorithmNotApplicableError,
    DegenerateStatisticError,
    GraphParseError,
    GraphValidationError,
    InconsistentCensusError,
    LayoutTableError,
    OracleBudgetError,
)
from crossvar.core.graph import load_graph
from crossvar.core.layout import RLA
from crossvar.core.utils import format_decimal, format_rational
from crossvar.evaluation.arrangements import Arrangement, count_crossings
from crossvar.evaluation.bench import run_benchmark
from crossvar.evaluation.eval import SelfTest
from crossvar.evaluation.significance import Tail, chebyshev_pvalue_bound, zscore
from crossvar.inference import ALGORITHM_MAP, AUTO, CrossingStatistics

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_INPUT = 2
EXIT_ALGORITHM = 3
EXIT_DEGENERATE = 4

# checked in order, subclasses of ValueError before ValueError
EXIT_CODES = (
    (GraphParseError, EXIT_INPUT),
    (GraphValidationError, EXIT_INPUT),
    (LayoutTableError, EXIT_INPUT),
    (OracleBudgetError, EXIT_INPUT),
    (AlgorithmNotApplicableError, EXIT_ALGORITHM),
    (DegenerateStatisticError, EXIT_DEGENERATE),
    (InconsistentCensusError, EXIT_SELFTEST_FAILED),
    (OSError, EXIT_INPUT),
    (ValueError, EXIT_INPUT),
)


@dataclass
class RunReport:
    command: str
    input: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    timing_ns: Optional[dict] = None

    def to_json(self) -> dict:
        data = {"command": self.command, "input": self.input, "results": self.results}
        if self.timing_ns is not None:
            data["timing_ns"] = self.timing_ns
        return data


def _read_input(filepath: str):
    with open(filepath, encoding="utf-8") as file:
        source = file.read()
    graph = load_graph(source)
    fingerprint = {
        "file": filepath,
        "sha256": hashlib.sha256(source.encode("utf-8")).hexdigest(),
        "n": graph.n,
        "m": graph.m,
    }
    return graph, fingerprint


def _rational(value) -> dict:
    return {"value": format_rational(value), "decimal": format_decimal(value)}


def cmd_stats(args: argparse.Namespace) -> RunReport:
    graph, fingerprint = _read_input(args.file)
    statistics = CrossingStatistics(RLA)
    census = statistics.census(graph)
    return RunReport(
        command="stats",
        input=fingerprint,
        results={
            "census": census.to_json(),
            "q": census.q,
            "expectation_rla": _rational(statistics.expectation(graph)),
        },
    )


def cmd_variance(args: argparse.Namespace) -> RunReport:
    graph, fingerprint = _read_input(args.file)
    statistics = CrossingStatistics(args.layout)
    result = statistics.variance(graph, args.algorithm)
    return RunReport(
        command="variance",
        input={**fingerprint, "layout": statistics.table.name},
        results=result.to_json(),
    )


def cmd_zscore(args: argparse.Namespace) -> RunReport:
    graph, fingerprint = _read_input(args.file)
    if args.arrangement is not None:
        observed = count_crossings(graph, Arrangement.from_file(args.arrangement))
    else:
        observed = args.observed

    if observed < 0:
        raise ValueError(f"A number of crossings can not be negative, got {observed}")

    statistics = CrossingStatistics(args.layout)
    result = statistics.variance(graph, args.algorithm)
    z = zscore(observed, result.expectation, result.variance)
    bounds = {
        tail.value: format_rational(
            chebyshev_pvalue_bound(observed, result.expectation, result.variance, tail)
        )
        for tail in Tail
    }
    return RunReport(
        command="zscore",
        input={**fingerprint, "layout": statistics.table.name},
        results={
            "observed": observed,
            "expectation": _rational(result.expectation),
            "variance": _rational(result.variance),
            "zscore": z,
            "pvalue_bounds": bounds,
        },
    )


def cmd_selftest(args: argparse.Namespace) -> RunReport:
    config = DEFAULT_CONFIG
    if args.max_n > config.max_census_vertices:
        config = replace(config, max_census_vertices=args.max_n)
    if args.budget is not None:
        config = replace(config, max_edge_subsets=args.budget, max_pair_products=args.budget)

    selftest = SelfTest(
        max_n=args.max_n,
        seed=args.seed,
        config=config,
        progress=not args.json,
        allow_skips=args.budget is not None,
    )
    report = selftest.run()
    return RunReport(
        command="selftest",
        input={"max_n": args.max_n, "seed": args.seed, "config": config.to_dict()},
        results=report.to_json(),
    )


def cmd_bench(args: argparse.Namespace) -> RunReport:
    frame = run_benchmark(
        args.n_list,
        args.p_list,
        graphs=args.graphs,
        reps=args.reps,
        seed=args.seed,
        progress=not args.json,
    )
    return RunReport(
        command="bench",
        input={"model": args.model, "seed": args.seed, "graphs": args.graphs, "reps": args.reps},
        results={"cells": frame.to_dict(orient="records")},
        timing_ns={
            f"n={row.n},p={row.p}": {"general": row.general_ns, "reuse": row.reuse_ns}
            for row in frame.itertuples()
        },
    )


COMMANDS = {
    "stats": cmd_stats,
    "variance": cmd_variance,
    "zscore": cmd_zscore,
    "selftest": cmd_selftest,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossvar",
        description="Exact variance of the number of edge crossings in random layouts",
    )
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    parser.add_argument("--seed", type=int, default=0, help="seed of the random graph families")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    stats_parser = subparsers.add_parser("stats", help="census, q and E[C] of a graph")
    stats_parser.add_argument("file", help="edge-list file")

    algorithms = [AUTO] + list(ALGORITHM_MAP)
    variance_parser = subparsers.add_parser("variance", help="exact variance of C")
    variance_parser.add_argument("file", help="edge-list file")
    variance_parser.add_argument("--layout", default=RLA, help="'rla' or a layout table file")
    variance_parser.add_argument("--algorithm", default=AUTO, choices=algorithms)

    zscore_parser = subparsers.add_parser("zscore", help="z-score and p-value bounds of an observed C")
    zscore_parser.add_argument("file", help="edge-list file")
    observed = zscore_parser.add_mutually_exclusive_group(required=True)
    observed.add_argument("--observed", type=int, help="observed number of crossings")
    observed.add_argument("--arrangement", help="file with the vertices in left-to-right order")
    zscore_parser.add_argument("--layout", default=RLA, help="'rla' or a layout table file")
    zscore_parser.add_argument("--algorithm", default=AUTO, choices=algorithms)

    selftest_parser = subparsers.add_parser("selftest", help="cross-check every route on the test corpus")
    selftest_parser.add_argument("--max-n", type=int, default=12, help="largest graph of the corpus")
    selftest_parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="edge-subset and Q x Q budget of the oracles; oracles over it are skipped, not failed",
    )

    bench_parser = subparsers.add_parser("bench", help="time the general algorithm against its reuse variant")
    bench_parser.add_argument("--model", default="er", choices=["er"])
    bench_parser.add_argument("--n-list", type=int, nargs="+", default=[10, 25, 50, 100])
    bench_parser.add_argument("--p-list", type=float, nargs="+", default=[0.01, 0.05, 0.1, 0.2, 0.5])
    bench_parser.add_argument("--graphs", type=int, default=10, help="graphs per (n, p)")
    bench_parser.add_argument("--reps", type=int, default=10, help="repetitions per graph")

    return parser


def _print_text(report: RunReport) -> None:
    if report.input:
        print(", ".join(f"{k}={v}" for k, v in report.input.items() if k not in ("config",)))
    for key, value in report.results.items():
        if isinstance(value, dict) and set(value) == {"value", "decimal"}:
            value = f"{value['value']} ({value['decimal']})"
        elif isinstance(value, dict):
            value = json.dumps(value)
        elif isinstance(value, list):
            value = "\n" + "\n".join(json.dumps(v) for v in value)
        print(f"{key}: {value}")


def _exit_code(error: Exception) -> int:
    for kind, code in EXIT_CODES:
        if isinstance(error, kind):
            return code
    raise error


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )

    try:
        report = COMMANDS[args.command](args)
    except Exception as e:  # noqa: B902
        code = _exit_code(e)
        print(f"crossvar {args.command}: {e}", file=sys.stderr)
        return code

    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        _print_text(report)

    if args.command == "selftest" and not report.results["passed"]:
        for failure in report.results["failures"]:
            print(
                f"FAILED {failure['graph']}: {failure['check']} {tuple(failure['routes'])} {failure['detail']}",
                file=sys.stderr,
            )
        return EXIT_SELFTEST_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
