import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from crossvar.core.census import CensusReport
from crossvar.core.config import OracleConfig, DEFAULT_CONFIG
from crossvar.core.errors import InconsistentCensusError
from crossvar.core.frequency import ProductType as W
from crossvar.core.graph import Graph, compute_q
from crossvar.core.layout import ExpectationTable
from crossvar.core.utils import format_decimal, format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VarianceResult:
    """Exact variance and expectation of the number of crossings."""

    variance: Fraction
    expectation: Fraction
    algorithm: str
    census: Optional[CensusReport] = None
    hash_table_size: Optional[int] = None

    def to_json(self) -> dict:
        data = {
            "variance": format_rational(self.variance),
            "variance_decimal": format_decimal(self.variance),
            "expectation": format_rational(self.expectation),
            "expectation_decimal": format_decimal(self.expectation),
            "algorithm": self.algorithm,
        }
        if self.census is not None:
            data["census"] = self.census.to_json()
        if self.hash_table_size is not None:
            data["hash_table_size"] = self.hash_table_size
        return data


def general_layout_variance(census: CensusReport, m: int, table: ExpectationTable) -> Fraction:
    """Variance of the crossings of any graph from its census.

    Args:
        census (CensusReport): Census of the graph.
        m (int): Number of edges.
        table (ExpectationTable): Layout.

    Returns:
        Fraction: Exact variance
    """
    c, E = census, table.gamma
    return (
        c.q * (E[W.T24] - 4 * E[W.T13] + 2 * (m + 2) * E[W.T12] + 2 * E[W.T021] + 4 * E[W.T022])
        + c.K * (E[W.T13] - 2 * E[W.T12] - E[W.T021] - 2 * E[W.T022])
        + c.nP4
        * (-2 * E[W.T13] + 2 * E[W.T12] - 2 * E[W.T03] + (m + 5) * E[W.T021] + 5 * E[W.T022])
        + c.nC4 * (2 * E[W.T04] - 8 * E[W.T03] + 8 * E[W.T021] + 4 * E[W.T022])
        + c.nPaw * (-2 * E[W.T03] + 3 * E[W.T021] + 2 * E[W.T022])
        + c.lambda1 * (E[W.T03] - E[W.T021])
        - c.lambda2 * (E[W.T021] + E[W.T022])
        - c.nP5 * E[W.T022]
        - 3 * c.nC3L2 * E[W.T021]
        + c.phi1 * E[W.T021]
        + c.phi2 * E[W.T022]
    )


def forest_layout_variance(census: CensusReport, m: int, table: ExpectationTable) -> Fraction:
    """Variance of the crossings of a forest, where C4, paw and C3+L2 counts vanish."""
    c, E = census, table.gamma
    return (
        c.q * (E[W.T24] - 4 * E[W.T13] + 2 * (m + 2) * E[W.T12] + 2 * E[W.T021] + 4 * E[W.T022])
        + c.K * (E[W.T13] - 2 * E[W.T12] - E[W.T021] - 2 * E[W.T022])
        + c.nP4
        * (-2 * E[W.T13] + 2 * E[W.T12] - 2 * E[W.T03] + (m + 5) * E[W.T021] + 5 * E[W.T022])
        + c.lambda1 * (E[W.T03] - E[W.T021])
        - c.lambda2 * (E[W.T021] + E[W.T022])
        - c.nP5 * E[W.T022]
        + c.phi1 * E[W.T021]
        + c.phi2 * E[W.T022]
    )


class VarianceAlgorithm(ABC):
    """
    Base class for the algorithms computing the variance of crossings.
    """

    name: str = ""

    def __init__(self, config: Optional[OracleConfig] = None) -> None:
        """Initialize an algorithm

        Args:
            config (Optional[OracleConfig], optional): Cost guards for oracle-backed algorithms.
                                                       Defaults to the package defaults.
        """
        self.config = config or DEFAULT_CONFIG

    def validate(self, graph: Graph, table: ExpectationTable) -> None:
        """Reject inputs the algorithm does not handle. Accepts everything by default."""

    @abstractmethod
    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        """Compute the variance on a graph with at least one independent edge pair.

        Args:
            graph (Graph): Input graph.
            table (ExpectationTable): Layout.

        Raises:
            NotImplementedError: This method has to be implemented
                                 by concrete subclasses.

        Returns:
            VarianceResult: Exact result
        """
        raise NotImplementedError

    def run(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        """Validate the input, short-circuit graphs without independent edges and compute.

        Args:
            graph (Graph): Input graph.
            table (ExpectationTable): Layout.

        Raises:
            InconsistentCensusError: if the computed variance is negative.

        Returns:
            VarianceResult: Exact result
        """
        self.validate(graph, table)

        if compute_q(graph) == 0:
            logger.debug(f"{graph} has no independent edges, variance is 0")
            return VarianceResult(
                variance=Fraction(0), expectation=Fraction(0), algorithm=self.name
            )

        result = self.compute(graph, table)
        if result.variance < 0:
            raise InconsistentCensusError(
                f"{self.name} produced a negative variance {result.variance} on {graph}"
            )
        return result

    def __call__(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        return self.run(graph, table)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"
