import logging
import time
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from crossvar.algorithms.forest import ForestVariance
from crossvar.algorithms.general import GeneralVariance
from crossvar.algorithms.naive import NaiveVariance
from crossvar.algorithms.reuse import ReuseVariance
from crossvar.core.algorithm import VarianceAlgorithm
from crossvar.core.config import OracleConfig
from crossvar.core.graph import Graph
from crossvar.core.layout import ExpectationTable, builtin_rla_table
from crossvar.evaluation.brute import clear_oracle_caches
from crossvar.generators import erdos_renyi, random_tree

logger = logging.getLogger(__name__)


def _time_ns(algorithm: VarianceAlgorithm, graph: Graph, table: ExpectationTable) -> int:
    start = time.perf_counter_ns()
    algorithm.run(graph, table)
    return time.perf_counter_ns() - start


def run_benchmark(
    n_list: Iterable[int],
    p_list: Iterable[float],
    graphs: int = 10,
    reps: int = 10,
    seed: int = 0,
    table: Optional[ExpectationTable] = None,
    progress: bool = True,
) -> pd.DataFrame:
    """Time the general algorithm against its reuse variant on Erdős-Rényi graphs.

    For every (n, p), ``graphs`` graphs are drawn with seeds ``seed``,
    ``seed + 1``, ... and each algorithm is run ``reps`` times per graph.
    Only the variance call is timed. Times are averaged over repetitions and
    then over graphs.

    Args:
        n_list (Iterable[int]): Numbers of vertices.
        p_list (Iterable[float]): Edge probabilities.
        graphs (int, optional): Graphs per cell. Defaults to 10.
        reps (int, optional): Repetitions per graph. Defaults to 10.
        seed (int, optional): Seed of the first graph of each cell. Defaults to 0.
        table (Optional[ExpectationTable], optional): Layout. Defaults to the rla table.
        progress (bool, optional): Show a progress bar. Defaults to True.

    Raises:
        ValueError: if ``graphs`` or ``reps`` is smaller than 1.

    Returns:
        pd.DataFrame: One row per (n, p) with mean times in nanoseconds and
                      speedup = time(general) / time(reuse)
    """
    if graphs < 1 or reps < 1:
        raise ValueError(f"graphs and reps should be positive, got {graphs} and {reps}")

    table = table or builtin_rla_table()
    general, reuse = GeneralVariance(), ReuseVariance()
    cells = [(n, p) for n in n_list for p in p_list]
    rows: List[dict] = []

    for n, p in tqdm(cells, desc="Benchmark", disable=not progress):
        general_ns, reuse_ns = [], []
        for i in range(graphs):
            graph = erdos_renyi(n, p, seed + i)
            general_ns.append(np.mean([_time_ns(general, graph, table) for _ in range(reps)]))
            reuse_ns.append(np.mean([_time_ns(reuse, graph, table) for _ in range(reps)]))

        general_mean, reuse_mean = float(np.mean(general_ns)), float(np.mean(reuse_ns))
        rows.append(
            {
                "n": n,
                "p": p,
                "graphs": graphs,
                "reps": reps,
                "general_ns": general_mean,
                "reuse_ns": reuse_mean,
                "speedup": general_mean / reuse_mean if reuse_mean else float("nan"),
            }
        )
        logger.info(f"n={n}, p={p}: speedup {rows[-1]['speedup']:.3f}")

    return pd.DataFrame(rows)


def time_forest(
    sizes: Iterable[int], reps: int = 3, seed: int = 0, progress: bool = True
) -> pd.DataFrame:
    """Mean time of the forest algorithm on one random tree per size.

    Args:
        sizes (Iterable[int]): Numbers of vertices.
        reps (int, optional): Repetitions per tree. Defaults to 3.
        seed (int, optional): Seed of the random trees. Defaults to 0.
        progress (bool, optional): Show a progress bar. Defaults to True.

    Returns:
        pd.DataFrame: One row per size with the mean time in seconds
    """
    algorithm, table = ForestVariance(), builtin_rla_table()
    rows = []
    for n in tqdm(list(sizes), desc="Forest scaling", disable=not progress):
        tree = random_tree(n, seed)
        seconds = np.mean([_time_ns(algorithm, tree, table) for _ in range(reps)]) / 1e9
        rows.append({"n": n, "seconds": float(seconds)})
    return pd.DataFrame(rows)


def loglog_slope(frame: pd.DataFrame) -> float:
    """Least-squares slope of log(seconds) against log(n)."""
    slope, _ = np.polyfit(np.log(frame["n"]), np.log(frame["seconds"]), 1)
    return float(slope)


def naive_ratio(n: int, p: float, seed: int = 0) -> float:
    """Time of the Q x Q route over the time of the general algorithm on one ER graph."""
    graph = erdos_renyi(n, p, seed)
    table = builtin_rla_table()
    clear_oracle_caches()
    naive_ns = _time_ns(NaiveVariance(OracleConfig(max_pair_products=10**12)), graph, table)
    general_ns = _time_ns(GeneralVariance(), graph, table)
    return naive_ns / general_ns
