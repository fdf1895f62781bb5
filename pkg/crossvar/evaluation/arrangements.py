"""Linear arrangements: crossing counts, exhaustive enumeration and Monte Carlo sampling."""
import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, permutations
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from crossvar.core.config import OracleConfig, DEFAULT_CONFIG
from crossvar.core.errors import OracleBudgetError
from crossvar.core.frequency import independent_pairs
from crossvar.core.graph import Graph
from crossvar.core.utils import format_decimal, format_rational

logger = logging.getLogger(__name__)

EXHAUSTIVE_CHUNK = 40320


class Arrangement:
    """
    A linear arrangement, stored as the position (1..n) of every vertex.
    """

    def __init__(self, position: Sequence[int]) -> None:
        """Initialize an arrangement.

        Args:
            position (Sequence[int]): ``position[v]`` is the rank of vertex ``v``, from 1 to n.

        Raises:
            ValueError: if the positions are not a permutation of 1..n.
        """
        self.position: Tuple[int, ...] = tuple(int(p) for p in position)
        if sorted(self.position) != list(range(1, len(self.position) + 1)):
            raise ValueError(f"Positions {self.position} are not a permutation of 1..{len(self.position)}")

    def __len__(self) -> int:
        return len(self.position)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Arrangement) and self.position == other.position

    def __hash__(self) -> int:
        return hash(self.position)

    def __repr__(self) -> str:
        return f"Arrangement(order={self.order})"

    @property
    def order(self) -> Tuple[int, ...]:
        """Vertices from left to right."""
        order = [0] * len(self.position)
        for v, p in enumerate(self.position):
            order[p - 1] = v
        return tuple(order)

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Arrangement":
        """Build an arrangement from the vertices listed left to right.

        Args:
            order (Sequence[int]): Vertices in left-to-right order.

        Raises:
            ValueError: if ``order`` is not a permutation of 0..n-1.

        Returns:
            Arrangement: The arrangement
        """
        n = len(order)
        if sorted(order) != list(range(n)):
            raise ValueError(f"Order {tuple(order)} is not a permutation of 0..{n - 1}")
        position = [0] * n
        for rank, v in enumerate(order, start=1):
            position[v] = rank
        return cls(position)

    @classmethod
    def from_text(cls, text: str) -> "Arrangement":
        """Parse one line of space-separated vertex ids in left-to-right order."""
        lines = [line for line in text.splitlines() if line.strip()]
        if len(lines) != 1:
            raise ValueError(f"An arrangement is a single line of vertex ids, got {len(lines)} lines")
        try:
            order = [int(token) for token in lines[0].split()]
        except ValueError:
            raise ValueError(f"Non-integer vertex id in arrangement {lines[0]!r}")
        return cls.from_order(order)

    @classmethod
    def from_file(cls, filepath: str) -> "Arrangement":
        with open(filepath, encoding="utf-8") as file:
            return cls.from_text(file.read())

    def reversed(self) -> "Arrangement":
        n = len(self.position)
        return Arrangement([n + 1 - p for p in self.position])


@dataclass(frozen=True)
class CrossingStats:
    """Distribution summary of the number of crossings over arrangements.

    Exhaustive enumeration gives exact rational moments and the full
    distribution; Monte Carlo gives floating point estimates.
    """

    sample_count: int
    mean: Union[Fraction, float]
    variance: Union[Fraction, float]
    distribution: Optional[Dict[int, int]] = None

    @property
    def exact(self) -> bool:
        return isinstance(self.mean, Fraction)

    def to_json(self) -> dict:
        data: dict = {"sample_count": self.sample_count}
        if self.exact:
            data["mean"] = format_rational(self.mean)
            data["mean_decimal"] = format_decimal(self.mean)
            data["variance"] = format_rational(self.variance)
            data["variance_decimal"] = format_decimal(self.variance)
        else:
            data["mean"] = self.mean
            data["variance"] = self.variance
        if self.distribution is not None:
            data["distribution"] = {str(c): f for c, f in sorted(self.distribution.items())}
        return data


def count_crossings(graph: Graph, arrangement: Arrangement) -> int:
    """Number of pairs of edges whose endpoints interleave in the arrangement.

    Edges ``st`` and ``uv`` cross when exactly one of ``u``, ``v`` lies
    strictly between ``s`` and ``t``. Edges sharing a vertex never cross.

    Args:
        graph (Graph): Input graph.
        arrangement (Arrangement): Arrangement of the vertices of ``graph``.

    Raises:
        ValueError: if the arrangement does not cover exactly the vertices of the graph.

    Returns:
        int: C, the number of crossings
    """
    if len(arrangement) != graph.n:
        raise ValueError(
            f"Arrangement of {len(arrangement)} vertices does not match {graph}"
        )

    pos = arrangement.position
    spans = [(min(pos[s], pos[t]), max(pos[s], pos[t])) for s, t in graph.edges()]
    crossings = 0
    for i, (lo, hi) in enumerate(spans):
        for lo2, hi2 in spans[i + 1 :]:
            if (lo < lo2 < hi < hi2) or (lo2 < lo < hi2 < hi):
                crossings += 1
    return crossings


def _pair_columns(graph: Graph) -> np.ndarray:
    pairs = independent_pairs(graph)
    if not pairs:
        return np.zeros((0, 4), dtype=np.int64)
    return np.array([(s, t, u, v) for (s, t), (u, v) in pairs], dtype=np.int64)


def crossings_of_positions(positions: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Crossing counts of many arrangements at once.

    Args:
        positions (np.ndarray): One row per arrangement, ``row[v]`` the position of ``v``.
        pairs (np.ndarray): Independent edge pairs as rows ``(s, t, u, v)``.

    Returns:
        np.ndarray: Number of crossings of each row
    """
    if len(pairs) == 0:
        return np.zeros(len(positions), dtype=np.int64)

    ps, pt = positions[:, pairs[:, 0]], positions[:, pairs[:, 1]]
    pu, pv = positions[:, pairs[:, 2]], positions[:, pairs[:, 3]]
    lo, hi = np.minimum(ps, pt), np.maximum(ps, pt)
    inside_u = (lo < pu) & (pu < hi)
    inside_v = (lo < pv) & (pv < hi)
    return (inside_u ^ inside_v).sum(axis=1, dtype=np.int64)


def exhaustive_distribution(
    graph: Graph, config: Optional[OracleConfig] = None
) -> CrossingStats:
    """Exact distribution of C over all n! linear arrangements.

    Args:
        graph (Graph): Input graph.
        config (Optional[OracleConfig], optional): Cost guards. Defaults to the package defaults.

    Raises:
        OracleBudgetError: if n exceeds ``max_exhaustive_vertices``.

    Returns:
        CrossingStats: Exact mean, variance and distribution
    """
    config = config or DEFAULT_CONFIG
    n = graph.n
    if n > config.max_exhaustive_vertices:
        raise OracleBudgetError("exhaustive arrangements", n, config.max_exhaustive_vertices)

    pairs = _pair_columns(graph)
    histogram = np.zeros(len(pairs) + 1, dtype=np.int64)
    arrangements = permutations(range(n))
    while True:
        chunk = list(islice(arrangements, EXHAUSTIVE_CHUNK))
        if not chunk:
            break
        positions = np.array(chunk, dtype=np.int64).reshape(len(chunk), n)
        histogram += np.bincount(
            crossings_of_positions(positions, pairs), minlength=len(histogram)
        )

    distribution = {c: int(f) for c, f in enumerate(histogram) if f}
    total = sum(distribution.values())
    mean = Fraction(sum(c * f for c, f in distribution.items()), total)
    second = Fraction(sum(c * c * f for c, f in distribution.items()), total)
    logger.debug(f"Enumerated {total} arrangements of {graph}")

    return CrossingStats(
        sample_count=total,
        mean=mean,
        variance=second - mean * mean,
        distribution=distribution,
    )


def _sample_block(task: Tuple[np.ndarray, int, int, int, int]) -> Tuple[int, int, int]:
    pairs, n, size, seed, block = task
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    # each row is shuffled independently (Fisher-Yates)
    positions = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
    crossings = crossings_of_positions(positions, pairs)
    return size, int(crossings.sum()), int((crossings * crossings).sum())


def monte_carlo(
    graph: Graph,
    samples: int,
    seed: int,
    config: Optional[OracleConfig] = None,
    workers: int = 1,
) -> CrossingStats:
    """Estimate the mean and variance of C from uniformly random arrangements.

    Samples are drawn in blocks of ``monte_carlo_block`` arrangements, block
    ``b`` seeded with ``SeedSequence(seed, spawn_key=(b,))``. Moments are
    accumulated as integer power sums, so the result is the same for any
    number of workers.

    Args:
        graph (Graph): Input graph.
        samples (int): Number of arrangements to draw.
        seed (int): Seed of the generator.
        config (Optional[OracleConfig], optional): Block size. Defaults to the package defaults.
        workers (int, optional): Worker processes. Defaults to 1.

    Raises:
        ValueError: if ``samples`` or ``workers`` is smaller than 1.

    Returns:
        CrossingStats: Sample mean and sample variance (n - 1 normalization)
    """
    if samples < 1:
        raise ValueError(f"At least one sample is needed, got {samples}")
    if workers < 1:
        raise ValueError(f"At least one worker is needed, got {workers}")
    config = config or DEFAULT_CONFIG

    pairs = _pair_columns(graph)
    block = config.monte_carlo_block
    tasks = [
        (pairs, graph.n, min(block, samples - start), seed, index)
        for index, start in enumerate(range(0, samples, block))
    ]

    results: List[Tuple[int, int, int]]
    if workers == 1 or len(tasks) == 1:
        results = [_sample_block(task) for task in tasks]
    else:
        with Pool(workers) as p:
            results = p.map(_sample_block, tasks)

    count = sum(r[0] for r in results)
    total = sum(r[1] for r in results)
    total_sq = sum(r[2] for r in results)

    if count == 1:
        warnings.warn("A single Monte Carlo sample has no sample variance")
        variance = math.nan
    else:
        variance = float(Fraction(count * total_sq - total * total, count * (count - 1)))

    return CrossingStats(sample_count=count, mean=total / count, variance=variance)
