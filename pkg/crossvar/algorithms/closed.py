from fractions import Fraction
from typing import Optional

from crossvar.algorithms.forest import forest_census
from crossvar.core.algorithm import VarianceAlgorithm, VarianceResult
from crossvar.core.census import CensusReport, fast_census
from crossvar.core.config import OracleConfig
from crossvar.core.errors import AlgorithmNotApplicableError
from crossvar.core.graph import Graph, is_forest
from crossvar.core.layout import ExpectationTable, builtin_rla_table

RLA_DENOMINATOR = 180


def rla_numerator(census: CensusReport, m: int) -> int:
    """180 times the variance of crossings in a uniformly random linear arrangement."""
    c = census
    return (
        8 * (m + 2) * c.q
        + 2 * c.K
        - (2 * m + 7) * c.nP4
        - 12 * c.nC4
        + 6 * c.nPaw
        - c.nP5
        + 6 * c.nC3L2
        - 3 * c.lambda1
        + c.lambda2
        - 2 * c.phi1
        + c.phi2
    )


def rla_forest_numerator(census: CensusReport, m: int) -> int:
    c = census
    return (
        8 * (m + 2) * c.q
        + 2 * c.K
        - (2 * m + 7) * c.nP4
        - c.nP5
        - 3 * c.lambda1
        + c.lambda2
        - 2 * c.phi1
        + c.phi2
    )


class ClosedFormVariance(VarianceAlgorithm):
    """
    Closed-form variance for uniformly random linear arrangements.

    Forests go through the linear-time census and the shorter forest form.
    """

    name = "closed"

    def validate(self, graph: Graph, table: ExpectationTable) -> None:
        if not table.is_rla():
            raise AlgorithmNotApplicableError(
                f"The closed form only holds for random linear arrangements, got layout {table.name!r}"
            )

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        if is_forest(graph):
            census = forest_census(graph)
            numerator = rla_forest_numerator(census, graph.m)
        else:
            census = fast_census(graph)
            numerator = rla_numerator(census, graph.m)

        return VarianceResult(
            variance=Fraction(numerator, RLA_DENOMINATOR),
            expectation=table.expectation(census.q),
            algorithm=self.name,
            census=census,
        )


def variance_rla_closed(graph: Graph, config: Optional[OracleConfig] = None) -> VarianceResult:
    return ClosedFormVariance(config).run(graph, builtin_rla_table())
