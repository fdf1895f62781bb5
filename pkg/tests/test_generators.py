import networkx as nx
import pytest

from crossvar import generators
from crossvar.core.graph import is_forest
from crossvar.generators import FamilySpec, GraphFamily

FREE_TREES = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


@pytest.mark.parametrize("n,count", list(enumerate(FREE_TREES, start=1)))
def test_all_trees_count(n, count):
    trees = list(generators.all_trees(n))
    assert len(trees) == count
    for tree in trees:
        assert tree.n == n
        assert tree.m == n - 1
        assert is_forest(tree)
        assert nx.number_connected_components(tree.to_networkx()) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_labeled_trees_cover_every_free_tree(n):
    labeled = list(generators.labeled_trees(n))
    assert len(labeled) == (n ** (n - 2) if n >= 2 else 1)
    codes = {generators.tree_canonical_code(n, list(tree.edges())) for tree in labeled}
    free = {generators.tree_canonical_code(n, list(tree.edges())) for tree in generators.all_trees(n)}
    assert codes == free


def test_labeled_trees_range():
    with pytest.raises(ValueError):
        list(generators.labeled_trees(generators.MAX_LABELED_TREE_VERTICES + 1))
    with pytest.raises(ValueError):
        list(generators.all_trees(0))


def test_canonical_code_ignores_labels():
    path = [(0, 1), (1, 2), (2, 3)]
    relabelled = [(2, 0), (0, 3), (3, 1)]
    star = [(0, 1), (0, 2), (0, 3)]
    assert generators.tree_canonical_code(4, path) == generators.tree_canonical_code(4, relabelled)
    assert generators.tree_canonical_code(4, path) != generators.tree_canonical_code(4, star)


def test_fixed_families():
    assert generators.complete(5).m == 10
    assert generators.complete_bipartite(2, 3).m == 6
    assert generators.path(5).m == 4
    assert generators.cycle(5).degrees == (2,) * 5
    assert generators.star(5).degrees == (4, 1, 1, 1, 1)
    assert generators.quasi_star(5).degrees == (3, 2, 1, 1, 1)
    assert list(generators.one_regular(6).edges()) == [(0, 1), (2, 3), (4, 5)]


def test_erdos_renyi_is_reproducible():
    first = generators.erdos_renyi(12, 0.3, seed=5)
    assert first == generators.erdos_renyi(12, 0.3, seed=5)
    assert generators.erdos_renyi(12, 0.0, seed=5).m == 0
    assert generators.erdos_renyi(12, 1.0, seed=5).m == 66


def test_random_tree_and_forest():
    for seed in range(5):
        tree = generators.random_tree(10, seed)
        assert tree.m == 9 and nx.number_connected_components(tree.to_networkx()) == 1
        forest = generators.random_forest(10, seed, components=3)
        assert is_forest(forest)
        assert nx.number_connected_components(forest.to_networkx()) == 3
    assert generators.random_tree(10, 1) == generators.random_tree(10, 1)
    assert generators.random_tree(1, 0).m == 0
    assert generators.random_tree(2, 0).m == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family=GraphFamily.CYCLE, n=2),
        dict(family=GraphFamily.ONE_REGULAR, n=5),
        dict(family=GraphFamily.COMPLETE_BIPARTITE, n=3),
        dict(family=GraphFamily.ERDOS_RENYI, n=5, seed=0),
        dict(family=GraphFamily.ERDOS_RENYI, n=5, p=1.5, seed=0),
        dict(family=GraphFamily.RANDOM_TREE, n=5),
        dict(family=GraphFamily.RANDOM_FOREST, n=3, seed=0, components=4),
        dict(family="hypercube", n=3),
    ],
)
def test_family_spec_validation(kwargs):
    with pytest.raises(ValueError):
        FamilySpec(**kwargs)


def test_generate():
    spec = FamilySpec("erdos_renyi", 10, p=0.5, seed=3)
    assert spec.family == GraphFamily.ERDOS_RENYI
    assert spec.label == "erdos_renyi(n=10,p=0.5,seed=3)"
    assert generators.generate(spec) == generators.erdos_renyi(10, 0.5, 3)
    assert generators.generate(FamilySpec(GraphFamily.COMPLETE_BIPARTITE, 2, second=2)).m == 4
    assert len(list(generators.generate(FamilySpec(GraphFamily.ALL_TREES, 6)))) == 6


def test_corpus_labels_are_unique():
    labels = [label for label, _ in generators.test_corpus(max_n=10, er_seeds=2, max_tree_n=7)]
    assert len(labels) == len(set(labels))
    assert "cycle(n=10)" in labels
    assert sum(label.startswith("all_trees(n=7)") for label in labels) == 11
