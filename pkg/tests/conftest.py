from fractions import Fraction

import pytest

from crossvar.core.frequency import ProductType
from crossvar.core.graph import Graph
from crossvar.core.layout import ExpectationTable, builtin_rla_table


@pytest.fixture
def rla():
    return builtin_rla_table()


@pytest.fixture
def c4():
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k4():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def p4():
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def two_edges():
    return Graph(4, [(0, 1), (2, 3)])


@pytest.fixture
def star5():
    return Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def paw():
    return Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


@pytest.fixture
def path4_plus_edge():
    return Graph(6, [(0, 1), (1, 2), (2, 3), (4, 5)])


@pytest.fixture
def small_graphs(c4, k4, p4, two_edges, star5, paw, path4_plus_edge):
    k5 = Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    house = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])
    triangle_plus_edge = Graph(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    return {
        "c4": c4,
        "k4": k4,
        "k5": k5,
        "p4": p4,
        "two_edges": two_edges,
        "star5": star5,
        "paw": paw,
        "path4_plus_edge": path4_plus_edge,
        "house": house,
        "triangle_plus_edge": triangle_plus_edge,
        "empty": Graph(3),
    }


@pytest.fixture
def custom_table():
    """A non-rla layout with delta = 1/2 and no negative covariance."""
    probabilities = {
        ProductType.T00: Fraction(1, 4),
        ProductType.T01: Fraction(1, 4),
        ProductType.T24: Fraction(1, 2),
        ProductType.T13: Fraction(1, 3),
        ProductType.T12: Fraction(3, 10),
        ProductType.T04: Fraction(1, 4),
        ProductType.T03: Fraction(2, 7),
        ProductType.T021: Fraction(1, 3),
        ProductType.T022: Fraction(5, 18),
    }
    return ExpectationTable.from_probabilities("custom", Fraction(1, 2), probabilities)
