import logging
from dataclasses import dataclass, asdict, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

from crossvar import generators
from crossvar.core.algorithm import VarianceAlgorithm
from crossvar.core.census import fast_census, hash_table_bound
from crossvar.core.config import OracleConfig, DEFAULT_CONFIG
from crossvar.core.errors import OracleBudgetError
from crossvar.core.frequency import FrequencyVector, frequencies_from_census
from crossvar.core.graph import Graph, compute_q, is_forest
from crossvar.core.layout import builtin_rla_table
from crossvar.core.utils import format_rational
from crossvar.evaluation.arrangements import exhaustive_distribution
from crossvar.evaluation.brute import (
    brute_census,
    frequencies_brute,
    frequencies_from_subgraph_counts,
    matrix_identities,
)
from crossvar.inference import ALGORITHM_MAP

logger = logging.getLogger(__name__)

REFERENCE_ALGORITHM = "general"

ROUTE_MAP: Dict[str, Callable[[Graph, OracleConfig], FrequencyVector]] = {
    "brute": frequencies_brute,
    "census": lambda graph, config: frequencies_from_census(fast_census(graph), graph.m),
    "subgraph": frequencies_from_subgraph_counts,
}


@dataclass
class Comparison:
    graph: str
    check: str
    routes: Tuple[str, str]
    passed: bool
    detail: str = ""


@dataclass
class SelfTestReport:
    comparisons: List[Comparison] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    allow_skips: bool = False

    @property
    def passed(self) -> bool:
        # an oracle skipped over budget counts as a failure unless skips are allowed
        return all(c.passed for c in self.comparisons) and (self.allow_skips or not self.skipped)

    def failures(self) -> List[Comparison]:
        return [c for c in self.comparisons if not c.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "comparisons": len(self.comparisons),
            "failures": [asdict(c) for c in self.failures()],
            "skipped": self.skipped,
            "allow_skips": self.allow_skips,
        }

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(c) for c in self.comparisons])


class SelfTest:
    """
    Cross-checks every route to the frequencies and to the variance on a
    corpus of graphs, together with the exhaustive arrangement oracle.
    """

    def __init__(
        self,
        max_n: int = 12,
        seed: int = 0,
        config: Optional[OracleConfig] = None,
        exhaustive_max_n: int = 8,
        er_seeds: int = 5,
        max_tree_n: int = 9,
        algorithms: Optional[Dict[str, VarianceAlgorithm]] = None,
        progress: bool = True,
        allow_skips: bool = False,
    ) -> None:
        """Initialize a self-test

        Args:
            max_n (int, optional): Largest graph of the corpus. Defaults to 12.
            seed (int, optional): Base seed of the random families. Defaults to 0.
            config (Optional[OracleConfig], optional): Cost guards. Defaults to the package defaults.
            exhaustive_max_n (int, optional): Largest graph enumerated exhaustively. Defaults to 8.
            er_seeds (int, optional): Erdős-Rényi graphs per (n, p). Defaults to 5.
            max_tree_n (int, optional): Largest free tree of the corpus. Defaults to 9.
            algorithms (Optional[Dict[str, VarianceAlgorithm]], optional): Variance routes to compare.
                                                                            Defaults to every algorithm
                                                                            of ALGORITHM_MAP.
            progress (bool, optional): Show a progress bar. Defaults to True.
            allow_skips (bool, optional): Pass even when an oracle is skipped over budget.
                                          Defaults to False.
        """
        self.max_n = max_n
        self.seed = seed
        self.config = config or DEFAULT_CONFIG
        self.exhaustive_max_n = exhaustive_max_n
        self.er_seeds = er_seeds
        self.max_tree_n = max_tree_n
        self.algorithms = algorithms or {
            name: algorithm(self.config) for name, algorithm in ALGORITHM_MAP.items()
        }
        self.progress = progress
        self.allow_skips = allow_skips
        self.table = builtin_rla_table()

    def corpus(self) -> Iterable[Tuple[str, Graph]]:
        return generators.test_corpus(
            max_n=self.max_n,
            seed=self.seed,
            er_seeds=self.er_seeds,
            max_tree_n=self.max_tree_n,
        )

    def run(self, corpus: Optional[Iterable[Tuple[str, Graph]]] = None) -> SelfTestReport:
        report = SelfTestReport(allow_skips=self.allow_skips)
        graphs = list(corpus if corpus is not None else self.corpus())
        logger.info(f"Self-test on {len(graphs)} graphs")

        for label, graph in tqdm(graphs, desc="Self-test", disable=not self.progress):
            self.check_graph(label, graph, report)

        logger.info(
            f"{len(report.comparisons)} comparisons, {len(report.failures())} failures, "
            f"{len(report.skipped)} skipped"
        )
        return report

    def check_graph(self, label: str, graph: Graph, report: SelfTestReport) -> None:
        self._check_frequencies(label, graph, report)
        variances = self._check_variances(label, graph, report)
        self._check_census(label, graph, report)
        if graph.n <= self.exhaustive_max_n and REFERENCE_ALGORITHM in variances:
            self._check_exhaustive(label, graph, variances[REFERENCE_ALGORITHM], report)

    def _check_frequencies(self, label: str, graph: Graph, report: SelfTestReport) -> None:
        vectors: Dict[str, FrequencyVector] = {}
        for route, compute in ROUTE_MAP.items():
            try:
                vectors[route] = compute(graph, self.config)
            except OracleBudgetError as e:
                report.skipped.append(f"{label}: frequencies via {route} ({e})")

        q = compute_q(graph)
        routes = list(vectors)
        for route in routes:
            total = vectors[route].total
            report.comparisons.append(
                Comparison(label, "frequency total", (route, "q^2"), total == q * q, f"{total} vs {q * q}")
            )
        for route in routes[1:]:
            reference, other = vectors[routes[0]], vectors[route]
            report.comparisons.append(
                Comparison(label, "frequencies", (routes[0], route), reference == other, f"{reference} vs {other}")
            )

    def _check_variances(self, label: str, graph: Graph, report: SelfTestReport) -> Dict[str, Fraction]:
        variances: Dict[str, Fraction] = {}
        acyclic = is_forest(graph)
        for name, algorithm in self.algorithms.items():
            if name == "forest" and not acyclic:
                continue
            try:
                result = algorithm.run(graph, self.table)
            except OracleBudgetError as e:
                report.skipped.append(f"{label}: variance via {name} ({e})")
                continue
            variances[name] = result.variance

            if result.hash_table_size is not None:
                bound = hash_table_bound(graph)
                report.comparisons.append(
                    Comparison(
                        label,
                        "hash table bound",
                        (name, "m + n(L3) - 3 n(C3)"),
                        result.hash_table_size <= bound,
                        f"|H| = {result.hash_table_size}, bound {bound}",
                    )
                )

        reference = REFERENCE_ALGORITHM if REFERENCE_ALGORITHM in variances else next(iter(variances), None)
        for name, value in variances.items():
            if name == reference:
                continue
            report.comparisons.append(
                Comparison(
                    label,
                    "variance",
                    (reference, name),
                    value == variances[reference],
                    f"{format_rational(variances[reference])} vs {format_rational(value)}",
                )
            )
        return variances

    def _check_census(self, label: str, graph: Graph, report: SelfTestReport) -> None:
        fast = fast_census(graph)
        identities = matrix_identities(graph)
        for key, value in identities.items():
            expected = fast.nP4 if key.startswith("paths4") else fast.nC4
            report.comparisons.append(
                Comparison(label, "count identity", (key, "fast census"), value == expected, f"{value} vs {expected}")
            )

        try:
            brute = brute_census(graph, self.config)
        except OracleBudgetError as e:
            report.skipped.append(f"{label}: brute census ({e})")
            return
        report.comparisons.append(
            Comparison(label, "census", ("brute", "fast"), brute == fast, f"{brute} vs {fast}")
        )

    def _check_exhaustive(
        self, label: str, graph: Graph, variance: Fraction, report: SelfTestReport
    ) -> None:
        try:
            stats = exhaustive_distribution(graph, self.config)
        except OracleBudgetError as e:
            report.skipped.append(f"{label}: exhaustive arrangements ({e})")
            return

        expectation = self.table.expectation(compute_q(graph))
        report.comparisons.append(
            Comparison(
                label,
                "exhaustive mean",
                ("exhaustive", "q/3"),
                stats.mean == expectation,
                f"{format_rational(stats.mean)} vs {format_rational(expectation)}",
            )
        )
        report.comparisons.append(
            Comparison(
                label,
                "exhaustive variance",
                ("exhaustive", REFERENCE_ALGORITHM),
                stats.variance == variance,
                f"{format_rational(stats.variance)} vs {format_rational(variance)}",
            )
        )
