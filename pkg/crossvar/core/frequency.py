from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, FrozenSet, List, Mapping, Optional, Tuple

import pandas as pd

from crossvar.core.census import CensusReport
from crossvar.core.errors import InconsistentCensusError
from crossvar.core.graph import Edge, Graph

if TYPE_CHECKING:
    from crossvar.core.layout import ExpectationTable

EdgePair = Tuple[Edge, Edge]


class ProductType(Enum):
    """
    Type of an ordered pair of independent edge pairs.

    The code is the number of shared edges followed by the number of shared
    vertices, with 021 and 022 splitting the pairs sharing two vertices.
    """

    T00 = "00"
    T24 = "24"
    T13 = "13"
    T12 = "12"
    T04 = "04"
    T03 = "03"
    T021 = "021"
    T022 = "022"
    T01 = "01"

    def __repr__(self):
        return str(self.value)

    @property
    def tau(self) -> int:
        """Number of shared edges."""
        return _SHARING[self][0]

    @property
    def phi(self) -> int:
        """Number of shared vertices."""
        return _SHARING[self][1]

    @property
    def contributes(self) -> bool:
        return self not in UNCORRELATED_TYPES


_SHARING = {
    ProductType.T00: (0, 0),
    ProductType.T24: (2, 4),
    ProductType.T13: (1, 3),
    ProductType.T12: (1, 2),
    ProductType.T04: (0, 4),
    ProductType.T03: (0, 3),
    ProductType.T021: (0, 2),
    ProductType.T022: (0, 2),
    ProductType.T01: (0, 1),
}

UNCORRELATED_TYPES = (ProductType.T00, ProductType.T01)
CONTRIBUTING_TYPES = tuple(w for w in ProductType if w not in UNCORRELATED_TYPES)

# f_w = a_w * (number of subgraphs of the graph isomorphic to F_w)
PRODUCT_MULTIPLIERS = {
    ProductType.T00: 6,
    ProductType.T24: 1,
    ProductType.T13: 2,
    ProductType.T12: 6,
    ProductType.T04: 2,
    ProductType.T03: 2,
    ProductType.T021: 2,
    ProductType.T022: 4,
    ProductType.T01: 4,
}

PRODUCT_PATTERNS = {
    ProductType.T00: "4L2",
    ProductType.T24: "2L2",
    ProductType.T13: "L3+L2",
    ProductType.T12: "3L2",
    ProductType.T04: "C4",
    ProductType.T03: "L5",
    ProductType.T021: "L4+L2",
    ProductType.T022: "2L3",
    ProductType.T01: "L3+2L2",
}


class FrequencyVector:
    """
    Number of ordered pairs of independent edge pairs of each product type.

    Types 00 and 01 do not contribute to the variance; when they are not
    known individually only their sum ``uncorrelated`` is kept.
    """

    def __init__(
        self, counts: Mapping[ProductType, int], uncorrelated: Optional[int] = None
    ) -> None:
        """Initialize a frequency vector.

        Args:
            counts (Mapping[ProductType, int]): Frequencies, at least of the seven contributing types.
            uncorrelated (Optional[int], optional): f_00 + f_01. Derived from ``counts`` when omitted.
                                                    Defaults to None.

        Raises:
            ValueError: if a contributing type is missing, or the uncorrelated sum can not be derived.
        """
        self.counts: Dict[ProductType, int] = {
            ProductType(w): int(f) for w, f in counts.items()
        }
        missing = [w.value for w in CONTRIBUTING_TYPES if w not in self.counts]
        if missing:
            raise ValueError(f"Missing frequencies for types {missing}")

        if uncorrelated is None:
            if not all(w in self.counts for w in UNCORRELATED_TYPES):
                raise ValueError("Either f_00 and f_01 or their sum should be given")
            uncorrelated = sum(self.counts[w] for w in UNCORRELATED_TYPES)
        self.uncorrelated = uncorrelated

    def __getitem__(self, omega: ProductType) -> int:
        return self.counts[omega]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FrequencyVector)
            and self.contributing() == other.contributing()
            and self.uncorrelated == other.uncorrelated
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __repr__(self) -> str:
        items = ", ".join(f"{w.value}={f}" for w, f in self.contributing().items())
        return f"FrequencyVector({items}, 00+01={self.uncorrelated})"

    @property
    def total(self) -> int:
        """Sum over all types; equals q squared."""
        return sum(self.contributing().values()) + self.uncorrelated

    def contributing(self) -> Dict[ProductType, int]:
        return {w: self.counts[w] for w in CONTRIBUTING_TYPES}

    def variance(self, table: "ExpectationTable") -> Fraction:
        """Variance of the crossings: sum over types of f_w times E[gamma_w].

        Args:
            table (ExpectationTable): Layout.

        Returns:
            Fraction: Exact variance
        """
        return sum(
            (f * table.gamma[w] for w, f in self.contributing().items()), Fraction(0)
        )

    def to_json(self) -> dict:
        data = {w.value: f for w, f in self.counts.items()}
        data["00+01"] = self.uncorrelated
        return data

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"type": w.value, "frequency": self.counts.get(w)}
                for w in ProductType
            ]
        )


def _independent(graph: Graph, pair: EdgePair) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    (s, t), (u, v) = pair
    e1, e2 = frozenset((s, t)), frozenset((u, v))
    if len(e1) != 2 or len(e2) != 2 or e1 & e2:
        raise ValueError(f"{pair} is not a pair of independent edges")
    for x, y in (e1, e2):
        if not (0 <= x < graph.n and 0 <= y < graph.n and graph.has_edge(x, y)):
            raise ValueError(f"{pair} uses an edge not in the graph")
    return e1, e2


def classify_pair(graph: Graph, p1: EdgePair, p2: EdgePair) -> ProductType:
    """Classify an ordered pair of elements of Q.

    Args:
        graph (Graph): Input graph.
        p1 (EdgePair): First pair of independent edges.
        p2 (EdgePair): Second pair of independent edges.

    Raises:
        ValueError: if ``p1`` or ``p2`` is not a pair of independent edges of the graph.

    Returns:
        ProductType: Type of the pair
    """
    edges1, edges2 = set(_independent(graph, p1)), set(_independent(graph, p2))
    tau = len(edges1 & edges2)
    shared = frozenset().union(*edges1) & frozenset().union(*edges2)
    phi = len(shared)

    if tau == 2:
        return ProductType.T24
    if tau == 1:
        return ProductType.T13 if phi == 3 else ProductType.T12
    if phi == 2:
        # 021 when the shared vertices form an edge of either pair
        if shared in edges1 or shared in edges2:
            return ProductType.T021
        return ProductType.T022
    return {
        4: ProductType.T04,
        3: ProductType.T03,
        1: ProductType.T01,
        0: ProductType.T00,
    }[phi]


def independent_pairs(graph: Graph) -> List[EdgePair]:
    """Enumerate Q, the unordered pairs of vertex-disjoint edges."""
    edges = list(graph.edges())
    pairs = []
    for i, (s, t) in enumerate(edges):
        for u, v in edges[i + 1 :]:
            if u != s and u != t and v != s and v != t:
                pairs.append(((s, t), (u, v)))
    return pairs


def frequencies_from_census(census: CensusReport, m: int) -> FrequencyVector:
    """Evaluate the closed forms of the seven contributing frequencies.

    Args:
        census (CensusReport): Census of the graph.
        m (int): Number of edges.

    Raises:
        InconsistentCensusError: if a frequency comes out negative.

    Returns:
        FrequencyVector: Frequencies with f_00 + f_01 obtained from q squared
    """
    c = census
    counts = {
        ProductType.T24: c.q,
        ProductType.T13: c.K - 4 * c.q - 2 * c.nP4,
        ProductType.T12: 2 * ((m + 2) * c.q + c.nP4 - c.K),
        ProductType.T04: 2 * c.nC4,
        ProductType.T03: c.lambda1 - 2 * c.nP4 - 8 * c.nC4 - 2 * c.nPaw,
        ProductType.T021: 2 * c.q
        + (m + 5) * c.nP4
        + 8 * c.nC4
        + 3 * c.nPaw
        + c.phi1
        - 3 * c.nC3L2
        - c.lambda1
        - c.lambda2
        - c.K,
        ProductType.T022: 4 * c.q
        - 2 * c.K
        + 5 * c.nP4
        - c.nP5
        + 2 * c.nPaw
        + 4 * c.nC4
        - c.lambda2
        + c.phi2,
    }

    negative = {w.value: f for w, f in counts.items() if f < 0}
    uncorrelated = c.q * c.q - sum(counts.values())
    if negative or uncorrelated < 0:
        raise InconsistentCensusError(
            f"negative frequencies {negative}, 00+01 = {uncorrelated}"
        )

    return FrequencyVector(counts, uncorrelated=uncorrelated)
