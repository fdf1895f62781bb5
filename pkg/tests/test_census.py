from fractions import Fraction

import pytest

from crossvar import generators
from crossvar.core.census import (
    CensusReport,
    count_c3l2,
    count_cycles4,
    count_paths4,
    count_paths5,
    count_paw,
    count_triangles,
    compute_lambda1,
    compute_lambda2,
    compute_mu,
    fast_census,
    hash_table_bound,
    neighbor_intersection,
    transitivity,
)
from crossvar.core.config import OracleConfig
from crossvar.core.errors import InconsistentCensusError, OracleBudgetError
from crossvar.evaluation.brute import (
    brute_census,
    count_subgraphs,
    edge_signature,
    matrix_identities,
)

EXPECTED = {
    "c4": dict(q=2, K=16, phi1=16, phi2=32, lambda1=16, lambda2=32, mu1=16, mu2=0,
               nP4=4, nP5=0, nC3=0, nC4=1, nPaw=0, nC3L2=0),
    "k4": dict(q=3, K=36, phi1=54, phi2=108, lambda1=72, lambda2=144, mu1=54, mu2=12,
               nP4=12, nP5=0, nC3=4, nC4=3, nPaw=12, nC3L2=0),
    "p4": dict(q=1, K=6, phi1=4, phi2=9, lambda1=2, lambda2=6, mu1=8, mu2=0,
               nP4=1, nP5=0, nC3=0, nC4=0, nPaw=0, nC3L2=0),
    "paw": dict(q=1, K=8, phi1=7, phi2=16, lambda1=6, lambda2=16, mu1=19, mu2=3,
                nP4=2, nP5=0, nC3=1, nC4=0, nPaw=1, nC3L2=0),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fast_census_values(small_graphs, name):
    assert fast_census(small_graphs[name]) == CensusReport(**EXPECTED[name])


def test_complete_graph_on_five_vertices(small_graphs):
    census = fast_census(small_graphs["k5"])
    assert census.q == 15
    assert census.nC3 == 10
    assert census.nC4 == 15
    assert census.nPaw == 60
    assert census.nC3L2 == 10
    assert census.nP4 == 60
    assert census.nP5 == 60


def test_triangle_plus_edge(small_graphs):
    graph = small_graphs["triangle_plus_edge"]
    assert count_c3l2(graph) == 1
    assert count_triangles(graph) == 1
    assert count_paw(graph) == 0


def test_individual_counts_match_fast_census(small_graphs):
    for graph in small_graphs.values():
        census = fast_census(graph)
        lambda1 = compute_lambda1(graph)
        assert compute_mu(graph) == (census.mu1, census.mu2)
        assert count_paths4(graph) == census.nP4
        assert count_paths5(graph) == census.nP5
        assert count_cycles4(graph) == census.nC4
        assert lambda1 == census.lambda1
        assert compute_lambda2(graph, lambda1=lambda1) == census.lambda2


def test_neighbor_intersection(k4, c4):
    common = neighbor_intersection(k4, 0, 1)
    assert common.size == 2
    assert common.degree_sum == 6
    assert neighbor_intersection(c4, 0, 2).size == 2
    assert neighbor_intersection(c4, 0, 1).size == 0


def test_neighbor_intersection_needs_distinct_vertices(k4):
    with pytest.raises(ValueError):
        neighbor_intersection(k4, 2, 2)


def test_census_rejects_negative_counts():
    values = dict(EXPECTED["c4"], nP5=-1)
    with pytest.raises(InconsistentCensusError):
        CensusReport(**values)


def test_census_json_and_dataframe(c4):
    census = fast_census(c4)
    assert CensusReport.from_json(census.to_json()) == census
    frame = census.to_dataframe()
    assert frame.loc[0, "nC4"] == 1
    assert list(frame.columns)[:2] == ["q", "K"]


def test_transitivity(small_graphs):
    assert transitivity(small_graphs["k4"]) == 1
    assert transitivity(small_graphs["c4"]) == 0
    assert transitivity(small_graphs["paw"]) == Fraction(3, 5)
    assert transitivity(small_graphs["empty"]) == 0


def test_hash_table_bound(c4, k4):
    assert hash_table_bound(c4) == 8
    assert hash_table_bound(k4) == 6


def test_brute_census_matches_fast_census(small_graphs):
    for graph in small_graphs.values():
        assert brute_census(graph) == fast_census(graph)


def test_brute_census_on_corpus():
    for label, graph in generators.test_corpus(max_n=8, er_seeds=1, max_tree_n=7):
        assert brute_census(graph) == fast_census(graph), label


def test_matrix_identities(c4, k4):
    assert set(matrix_identities(c4).items()) == {
        ("paths4_qsum", 4),
        ("paths4_matrix", 4),
        ("paths4_moment", 4),
        ("cycles4_qsum", 1),
        ("cycles4_trace", 1),
    }
    identities = matrix_identities(k4)
    assert identities["paths4_matrix"] == 12
    assert identities["cycles4_trace"] == 3


def test_edge_signature_distinguishes_patterns():
    path = edge_signature([(0, 1), (1, 2), (2, 3)])
    claw = edge_signature([(0, 1), (0, 2), (0, 3)])
    assert path != claw
    assert edge_signature([(5, 7), (7, 9), (9, 11)]) == path


def test_count_subgraphs(c4):
    counts = count_subgraphs(c4)
    assert counts["L3"] == 4
    assert counts["2L2"] == 2
    assert counts["L4"] == 4
    assert counts["C4"] == 1


def test_brute_census_budget():
    graph = generators.complete(13)
    with pytest.raises(OracleBudgetError):
        brute_census(graph)
    with pytest.raises(OracleBudgetError):
        count_subgraphs(generators.complete(8), config=OracleConfig(max_edge_subsets=100))
