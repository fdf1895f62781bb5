"""Graph families of the test corpus and of the benchmark ensemble."""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple, Union

import networkx as nx
import numpy as np

from crossvar.core.graph import Edge, Graph

logger = logging.getLogger(__name__)

MAX_LABELED_TREE_VERTICES = 8


class GraphFamily(Enum):
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    QUASI_STAR = "quasi_star"
    ONE_REGULAR = "one_regular"
    ERDOS_RENYI = "erdos_renyi"
    RANDOM_TREE = "random_tree"
    RANDOM_FOREST = "random_forest"
    ALL_TREES = "all_trees"

    def __repr__(self):
        return str(self.value)


# smallest n accepted by each family
_MIN_VERTICES = {
    GraphFamily.COMPLETE: 0,
    GraphFamily.COMPLETE_BIPARTITE: 1,
    GraphFamily.PATH: 1,
    GraphFamily.CYCLE: 3,
    GraphFamily.STAR: 1,
    GraphFamily.QUASI_STAR: 3,
    GraphFamily.ONE_REGULAR: 0,
    GraphFamily.ERDOS_RENYI: 0,
    GraphFamily.RANDOM_TREE: 1,
    GraphFamily.RANDOM_FOREST: 1,
    GraphFamily.ALL_TREES: 1,
}

_SEEDED = (GraphFamily.ERDOS_RENYI, GraphFamily.RANDOM_TREE, GraphFamily.RANDOM_FOREST)


@dataclass
class FamilySpec:
    """
    A graph family with its parameters.

    ``n`` is the number of vertices, except for ``complete_bipartite`` where it
    is the size of the first side and ``second`` the size of the other.
    """

    family: GraphFamily
    n: int
    p: Optional[float] = None
    seed: Optional[int] = None
    second: Optional[int] = None
    components: int = 1

    def __post_init__(self) -> None:
        self.family = GraphFamily(self.family)
        family = self.family

        if self.n < _MIN_VERTICES[family]:
            raise ValueError(f"{family.value} needs n >= {_MIN_VERTICES[family]}, got {self.n}")
        if family == GraphFamily.ONE_REGULAR and self.n % 2:
            raise ValueError(f"one_regular needs an even number of vertices, got {self.n}")
        if family == GraphFamily.COMPLETE_BIPARTITE and (self.second is None or self.second < 1):
            raise ValueError("complete_bipartite needs the size of the second side")
        if family == GraphFamily.ERDOS_RENYI and (self.p is None or not 0 <= self.p <= 1):
            raise ValueError(f"erdos_renyi needs p in [0, 1], got {self.p}")
        if family in _SEEDED and self.seed is None:
            raise ValueError(f"{family.value} is random and needs a seed")
        if family == GraphFamily.RANDOM_FOREST and not 1 <= self.components <= self.n:
            raise ValueError(f"a forest on {self.n} vertices can not have {self.components} trees")

    @property
    def label(self) -> str:
        params = {"n": self.n, "second": self.second, "p": self.p, "seed": self.seed}
        if self.family == GraphFamily.RANDOM_FOREST:
            params["components"] = self.components
        rendered = ",".join(f"{k}={v}" for k, v in params.items() if v is not None)
        return f"{self.family.value}({rendered})"


def complete(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


def path(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def cycle(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def star(n: int) -> Graph:
    """Star on n vertices centred on vertex 0."""
    return Graph.from_networkx(nx.star_graph(n - 1))


def quasi_star(n: int) -> Graph:
    """Star on n - 1 vertices with an extra vertex hanging from one of its leaves."""
    graph = nx.star_graph(n - 2)
    graph.add_edge(1, n - 1)
    return Graph.from_networkx(graph)


def one_regular(n: int) -> Graph:
    """Perfect matching on an even number of vertices."""
    return Graph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def _tree_from_prufer(n: int, sequence: List[int]) -> Graph:
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    return Graph.from_networkx(nx.from_prufer_sequence(sequence))


def random_tree(n: int, seed: int) -> Graph:
    """Uniformly random labelled tree from a random Prüfer sequence."""
    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.integers(0, n, size=max(n - 2, 0))]
    return _tree_from_prufer(n, sequence)


def random_forest(n: int, seed: int, components: int = 1) -> Graph:
    """Random labelled tree with ``components - 1`` random edges removed."""
    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.integers(0, n, size=max(n - 2, 0))]
    edges = list(_tree_from_prufer(n, sequence).edges())
    removed = set(rng.choice(len(edges), size=components - 1, replace=False).tolist())
    return Graph(n, [e for i, e in enumerate(edges) if i not in removed])


def _rooted_code(adjacency: List[List[int]], root: int, parent: int) -> str:
    children = sorted(_rooted_code(adjacency, c, root) for c in adjacency[root] if c != parent)
    return "(" + "".join(children) + ")"


def tree_canonical_code(n: int, edges: List[Edge]) -> str:
    """Smallest rooted canonical code over all roots; equal for isomorphic trees."""
    adjacency: List[List[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    return min(_rooted_code(adjacency, root, -1) for root in range(n))


def all_trees(n: int) -> Iterator[Graph]:
    """Every free unlabelled tree on n vertices, once each.

    Trees on k + 1 vertices are grown from those on k vertices by hanging a
    leaf from every vertex, keeping one tree per canonical code.

    Args:
        n (int): Number of vertices, at least 1.

    Raises:
        ValueError: if ``n < 1``.

    Returns:
        Iterator[Graph]: The trees
    """
    if n < 1:
        raise ValueError(f"Trees need at least one vertex, got {n}")

    level: Dict[str, List[Edge]] = {tree_canonical_code(1, []): []}
    for k in range(1, n):
        grown: Dict[str, List[Edge]] = {}
        for edges in level.values():
            for v in range(k):
                candidate = edges + [(v, k)]
                grown.setdefault(tree_canonical_code(k + 1, candidate), candidate)
        level = grown
        logger.debug(f"{len(level)} free trees on {k + 1} vertices")

    for code in sorted(level):
        yield Graph(n, level[code])


def labeled_trees(n: int) -> Iterator[Graph]:
    """Every labelled tree on n vertices through its Prüfer sequence.

    Args:
        n (int): Number of vertices, from 1 to 8.

    Raises:
        ValueError: if n is outside the enumerable range.

    Returns:
        Iterator[Graph]: n^(n-2) trees
    """
    if not 1 <= n <= MAX_LABELED_TREE_VERTICES:
        raise ValueError(f"Labelled trees are enumerated for 1 <= n <= {MAX_LABELED_TREE_VERTICES}")
    for sequence in product(range(n), repeat=max(n - 2, 0)):
        yield _tree_from_prufer(n, list(sequence))


def generate(spec: FamilySpec) -> Union[Graph, Iterator[Graph]]:
    """Build the graph described by ``spec``.

    Args:
        spec (FamilySpec): Family and parameters.

    Returns:
        Union[Graph, Iterator[Graph]]: A graph, or a stream of trees for ``all_trees``
    """
    family = spec.family
    if family == GraphFamily.ALL_TREES:
        return all_trees(spec.n)
    if family == GraphFamily.COMPLETE_BIPARTITE:
        return complete_bipartite(spec.n, spec.second)
    if family == GraphFamily.ERDOS_RENYI:
        return erdos_renyi(spec.n, spec.p, spec.seed)
    if family == GraphFamily.RANDOM_TREE:
        return random_tree(spec.n, spec.seed)
    if family == GraphFamily.RANDOM_FOREST:
        return random_forest(spec.n, spec.seed, spec.components)

    builders = {
        GraphFamily.COMPLETE: complete,
        GraphFamily.PATH: path,
        GraphFamily.CYCLE: cycle,
        GraphFamily.STAR: star,
        GraphFamily.QUASI_STAR: quasi_star,
        GraphFamily.ONE_REGULAR: one_regular,
    }
    return builders[family](spec.n)


def test_corpus(
    max_n: int = 12,
    seed: int = 0,
    er_seeds: int = 5,
    max_tree_n: int = 9,
) -> Iterator[Tuple[str, Graph]]:
    """Stream the labelled graphs of the self-test corpus.

    Erdős-Rényi graphs from n = min(10, max_n) to max_n with p in
    {0.1, 0.2, 0.5}, complete graphs up to 7 vertices, complete bipartite
    graphs with sides of 2 to 4 vertices, paths, cycles, stars, quasi-stars,
    one-regular graphs and random forests up to ``max_n`` vertices, and every
    free tree up to ``max_tree_n`` vertices.

    Args:
        max_n (int, optional): Largest number of vertices. Defaults to 12.
        seed (int, optional): Base seed of the random families. Defaults to 0.
        er_seeds (int, optional): Erdős-Rényi graphs per (n, p). Defaults to 5.
        max_tree_n (int, optional): Largest free tree. Defaults to 9.

    Returns:
        Iterator[Tuple[str, Graph]]: (label, graph) pairs
    """
    specs: List[FamilySpec] = []
    for n in range(min(10, max_n), max_n + 1):
        for p in (0.1, 0.2, 0.5):
            specs.extend(
                FamilySpec(GraphFamily.ERDOS_RENYI, n, p=p, seed=seed + i) for i in range(er_seeds)
            )
    specs.extend(FamilySpec(GraphFamily.COMPLETE, n) for n in range(2, min(7, max_n) + 1))
    specs.extend(
        FamilySpec(GraphFamily.COMPLETE_BIPARTITE, a, second=b)
        for a in range(2, 5)
        for b in range(a, 5)
        if a + b <= max_n
    )
    for n in range(2, max_n + 1):
        specs.append(FamilySpec(GraphFamily.PATH, n))
        specs.append(FamilySpec(GraphFamily.STAR, n))
        if n >= 3:
            specs.append(FamilySpec(GraphFamily.CYCLE, n))
        if n >= 4:
            specs.append(FamilySpec(GraphFamily.QUASI_STAR, n))
        if n % 2 == 0:
            specs.append(FamilySpec(GraphFamily.ONE_REGULAR, n))
        specs.append(
            FamilySpec(GraphFamily.RANDOM_FOREST, n, seed=seed + n, components=1 + n // 4)
        )

    for spec in specs:
        yield spec.label, generate(spec)

    for n in range(1, max_tree_n + 1):
        for i, tree in enumerate(all_trees(n)):
            yield f"all_trees(n={n})#{i}", tree
