from fractions import Fraction

import pytest

from crossvar import generators
from crossvar.algorithms.closed import (
    RLA_DENOMINATOR,
    ClosedFormVariance,
    rla_numerator,
    variance_rla_closed,
)
from crossvar.algorithms.forest import forest_census, variance_forest
from crossvar.algorithms.frequency import variance_frequency, variance_subgraph_counts
from crossvar.algorithms.general import edge_pass_census, variance_general
from crossvar.algorithms.naive import variance_naive
from crossvar.algorithms.reuse import PairHashTable, variance_general_reuse
from crossvar.core.algorithm import VarianceAlgorithm, VarianceResult
from crossvar.core.census import fast_census, hash_table_bound, neighbor_intersection
from crossvar.core.errors import (
    AlgorithmNotApplicableError,
    InconsistentCensusError,
    NotAForestError,
)
from crossvar.core.graph import is_forest

ROUTES = [
    variance_naive,
    variance_subgraph_counts,
    variance_frequency,
    variance_general,
    variance_general_reuse,
]

EXPECTED_RLA = {
    "two_edges": Fraction(2, 9),
    "c4": Fraction(2, 9),
    "p4": Fraction(2, 9),
    "paw": Fraction(2, 9),
    "path4_plus_edge": Fraction(11, 9),
    "k4": Fraction(0),
    "k5": Fraction(0),
    "star5": Fraction(0),
    "empty": Fraction(0),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_RLA))
@pytest.mark.parametrize("route", ROUTES, ids=lambda route: route.__name__)
def test_rla_spot_values(small_graphs, rla, name, route):
    assert route(small_graphs[name], rla).variance == EXPECTED_RLA[name]


@pytest.mark.parametrize("name", sorted(EXPECTED_RLA))
def test_closed_form_spot_values(small_graphs, name):
    assert variance_rla_closed(small_graphs[name]).variance == EXPECTED_RLA[name]


@pytest.mark.parametrize("name", ["two_edges", "p4", "path4_plus_edge", "star5", "empty"])
def test_forest_spot_values(small_graphs, rla, name):
    assert variance_forest(small_graphs[name], rla).variance == EXPECTED_RLA[name]


def test_expectation(c4, k4, rla):
    assert variance_general(c4, rla).expectation == Fraction(2, 3)
    assert variance_general(k4, rla).expectation == 1
    assert variance_naive(k4, rla).expectation == 1


def test_empty_graph_short_circuits(rla):
    result = variance_general_reuse(generators.path(2), rla)
    assert result.variance == 0
    assert result.expectation == 0
    assert result.hash_table_size is None


def test_routes_agree_on_corpus(rla, custom_table):
    for label, graph in generators.test_corpus(max_n=8, er_seeds=2, max_tree_n=8):
        for table in (rla, custom_table):
            expected = variance_general(graph, table).variance
            for route in ROUTES:
                assert route(graph, table).variance == expected, (label, table.name, route.__name__)
            if is_forest(graph):
                assert variance_forest(graph, table).variance == expected, (label, table.name)
        assert variance_rla_closed(graph).variance == variance_general(graph, rla).variance, label


def test_custom_layout_differs_from_rla(c4, rla, custom_table):
    assert variance_general(c4, custom_table).variance != variance_general(c4, rla).variance
    assert variance_general(c4, custom_table).variance == variance_naive(c4, custom_table).variance


def test_rla_variance_is_a_multiple_of_one_over_180(rla):
    for label, graph in generators.test_corpus(max_n=10, er_seeds=2, max_tree_n=7):
        variance = variance_general(graph, rla).variance
        assert (variance * RLA_DENOMINATOR).denominator == 1, label
        assert rla_numerator(fast_census(graph), graph.m) == variance * RLA_DENOMINATOR, label


def test_forest_census_matches_fast_census():
    for label, graph in generators.test_corpus(max_n=10, er_seeds=1, max_tree_n=9):
        if is_forest(graph):
            assert forest_census(graph) == fast_census(graph), label


@pytest.mark.parametrize("name", ["c4", "k4"])
def test_hash_table_size(small_graphs, rla, name):
    result = variance_general_reuse(small_graphs[name], rla)
    assert result.hash_table_size == 6
    assert result.hash_table_size <= hash_table_bound(small_graphs[name])


def test_hash_table_bound_on_corpus(rla):
    for label, graph in generators.test_corpus(max_n=11, er_seeds=2, max_tree_n=7):
        result = variance_general_reuse(graph, rla)
        if result.hash_table_size is not None:
            assert result.hash_table_size <= hash_table_bound(graph), label


def test_pair_hash_table(small_graphs):
    house = small_graphs["house"]
    memo = PairHashTable(house)
    census = edge_pass_census(house, memo.lookup)
    assert census == fast_census(house)
    for (u, v), value in memo.items():
        assert u < v
        assert value == neighbor_intersection(house, u, v)
    u, v = next(iter(dict(memo.items())))
    assert (v, u) in memo
    size = len(memo)
    memo.lookup(v, u)
    assert len(memo) == size


def test_forest_rejects_cycles(c4, rla):
    with pytest.raises(NotAForestError):
        variance_forest(c4, rla)


def test_closed_form_rejects_other_layouts(c4, custom_table):
    with pytest.raises(AlgorithmNotApplicableError):
        ClosedFormVariance().run(c4, custom_table)
    assert issubclass(NotAForestError, AlgorithmNotApplicableError)


def test_negative_variance_is_inconsistent(c4, rla):
    class Broken(VarianceAlgorithm):
        name = "broken"

        def compute(self, graph, table):
            return VarianceResult(variance=Fraction(-1), expectation=Fraction(0), algorithm=self.name)

    with pytest.raises(InconsistentCensusError):
        Broken().run(c4, rla)


def test_result_to_json(c4, rla):
    data = variance_general(c4, rla).to_json()
    assert data["variance"] == "2/9"
    assert data["variance_decimal"] == "0.222222222222"
    assert data["expectation"] == "2/3"
    assert data["algorithm"] == "general"
    assert data["census"]["q"] == 2
    assert "hash_table_size" not in data
    assert variance_general_reuse(c4, rla).to_json()["hash_table_size"] == 6
