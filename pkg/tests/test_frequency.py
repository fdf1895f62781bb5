from collections import Counter
from fractions import Fraction

import pytest

from crossvar import generators
from crossvar.algorithms.naive import variance_naive
from crossvar.core.census import CensusReport, fast_census
from crossvar.core.errors import InconsistentCensusError, OracleBudgetError
from crossvar.core.config import OracleConfig
from crossvar.core.frequency import (
    CONTRIBUTING_TYPES,
    FrequencyVector,
    ProductType,
    classify_pair,
    frequencies_from_census,
    independent_pairs,
)
from crossvar.core.graph import Graph, compute_q
from crossvar.evaluation import brute
from crossvar.evaluation.brute import frequencies_brute, frequencies_from_subgraph_counts

# a path on six vertices plus a disjoint edge
PATH6_PLUS_EDGE = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 7)])


@pytest.mark.parametrize(
    "p1, p2, expected",
    [
        (((0, 1), (2, 3)), ((0, 1), (2, 3)), ProductType.T24),
        (((0, 1), (2, 3)), ((0, 1), (3, 4)), ProductType.T13),
        (((0, 1), (2, 3)), ((0, 1), (6, 7)), ProductType.T12),
        (((0, 1), (2, 3)), ((1, 2), (3, 4)), ProductType.T03),
        (((0, 1), (2, 3)), ((1, 2), (6, 7)), ProductType.T021),
        (((0, 1), (3, 4)), ((1, 2), (4, 5)), ProductType.T022),
        (((0, 1), (3, 4)), ((1, 2), (6, 7)), ProductType.T01),
        (((0, 1), (2, 3)), ((4, 5), (6, 7)), ProductType.T00),
    ],
)
def test_classify_pair(p1, p2, expected):
    assert classify_pair(PATH6_PLUS_EDGE, p1, p2) == expected
    assert classify_pair(PATH6_PLUS_EDGE, p2, p1) == expected


def test_classify_pair_sharing_four_vertices(c4):
    assert classify_pair(c4, ((0, 1), (2, 3)), ((1, 2), (0, 3))) == ProductType.T04


def test_classify_pair_rejects_invalid_pairs():
    with pytest.raises(ValueError):
        classify_pair(PATH6_PLUS_EDGE, ((0, 1), (1, 2)), ((3, 4), (6, 7)))
    with pytest.raises(ValueError):
        classify_pair(PATH6_PLUS_EDGE, ((0, 2), (4, 5)), ((3, 4), (6, 7)))


def test_product_type_sharing():
    assert ProductType.T13.tau == 1
    assert ProductType.T13.phi == 3
    assert ProductType.T022.phi == 2
    assert not ProductType.T01.contributes
    assert repr(ProductType.T021) == "021"


def test_independent_pairs(c4, star5):
    assert independent_pairs(c4) == [((0, 1), (2, 3)), ((0, 3), (1, 2))]
    assert independent_pairs(star5) == []


def test_cycle_frequencies(c4):
    frequencies = frequencies_brute(c4)
    assert frequencies[ProductType.T24] == 2
    assert frequencies[ProductType.T04] == 2
    assert sum(frequencies.contributing().values()) == 4
    assert frequencies.uncorrelated == 0


def test_path_plus_edge_frequencies(path4_plus_edge):
    frequencies = frequencies_from_census(fast_census(path4_plus_edge), path4_plus_edge.m)
    assert frequencies.contributing() == {
        ProductType.T24: 4,
        ProductType.T13: 4,
        ProductType.T12: 6,
        ProductType.T04: 0,
        ProductType.T03: 0,
        ProductType.T021: 2,
        ProductType.T022: 0,
    }


def test_three_way_equality_on_small_graphs(small_graphs):
    for name, graph in small_graphs.items():
        brute = frequencies_brute(graph)
        census = frequencies_from_census(fast_census(graph), graph.m)
        subgraph = frequencies_from_subgraph_counts(graph)
        assert brute == census == subgraph, name
        assert brute.total == compute_q(graph) ** 2
        # both brute routes resolve the uncorrelated types individually
        assert brute[ProductType.T00] == subgraph[ProductType.T00]
        assert brute[ProductType.T01] == subgraph[ProductType.T01]


def test_frequencies_brute_matches_pairwise_classification(small_graphs):
    graphs = dict(small_graphs)
    graphs["er"] = generators.erdos_renyi(9, 0.5, 3)
    for name, graph in graphs.items():
        pairs = independent_pairs(graph)
        expected = Counter(classify_pair(graph, p1, p2) for p1 in pairs for p2 in pairs)
        frequencies = frequencies_brute(graph)
        assert {w: frequencies[w] for w in ProductType} == {w: expected[w] for w in ProductType}, name


def test_frequencies_brute_is_shared_with_the_naive_route(rla):
    graph = generators.erdos_renyi(10, 0.4, 7)
    frequencies = frequencies_brute(graph)
    hits = brute._pair_type_counts.cache_info().hits
    assert variance_naive(graph, rla).variance == frequencies.variance(rla)
    assert brute._pair_type_counts.cache_info().hits == hits + 1


@pytest.mark.parametrize("name", ["k5", "triangle_plus_edge", "house"])
def test_f021_with_triangle_plus_edge_subgraphs(small_graphs, name):
    graph = small_graphs[name]
    census = fast_census(graph)
    frequencies = frequencies_from_census(census, graph.m)
    assert frequencies[ProductType.T021] == frequencies_brute(graph)[ProductType.T021]
    if graph.n < 6:
        # 021 products span six vertices
        assert frequencies[ProductType.T021] == 0


def test_f021_on_dense_random_graphs():
    for seed in range(1, 5):
        graph = generators.erdos_renyi(8, 0.6, seed)
        census = fast_census(graph)
        assert census.nC3L2 > 0
        assert (
            frequencies_from_census(census, graph.m)[ProductType.T021]
            == frequencies_brute(graph)[ProductType.T021]
        ), seed


def test_three_way_equality_on_corpus():
    for label, graph in generators.test_corpus(max_n=9, er_seeds=2, max_tree_n=8):
        census = frequencies_from_census(fast_census(graph), graph.m)
        assert frequencies_brute(graph) == census, label
        assert frequencies_from_subgraph_counts(graph) == census, label
        assert census.total == compute_q(graph) ** 2, label


def test_frequency_vector_requires_contributing_types():
    with pytest.raises(ValueError):
        FrequencyVector({ProductType.T24: 1})
    counts = {w: 0 for w in CONTRIBUTING_TYPES}
    with pytest.raises(ValueError):
        FrequencyVector(counts)
    assert FrequencyVector(counts, uncorrelated=5).total == 5


def test_frequency_vector_variance(c4, rla):
    assert frequencies_brute(c4).variance(rla) == Fraction(2, 9)


def test_frequency_vector_serialisation(c4):
    frequencies = frequencies_from_census(fast_census(c4), c4.m)
    data = frequencies.to_json()
    assert data["24"] == 2
    assert data["00+01"] == 0
    assert "00" not in data
    frame = frequencies.to_dataframe()
    assert list(frame["type"]) == [w.value for w in ProductType]


def test_frequencies_from_inconsistent_census():
    census = CensusReport(
        q=1, K=100, phi1=0, phi2=0, lambda1=0, lambda2=0, mu1=0, mu2=0,
        nP4=0, nP5=0, nC3=0, nC4=0, nPaw=0, nC3L2=0,
    )
    with pytest.raises(InconsistentCensusError):
        frequencies_from_census(census, 3)


def test_frequencies_brute_budget():
    with pytest.raises(OracleBudgetError):
        frequencies_brute(generators.complete(7), OracleConfig(max_pair_products=100))
