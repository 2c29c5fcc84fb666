"""Fixture text and brute-force oracles shared by the tests."""

import sys

import networkx as nx
import numpy as np

from raonet.graphcore import CitationNetwork
from raonet.models import Direction, ProfileConvention

SAMPLE_NET = """\
% small journal network
*Network sample
*Vertices 6
1 "Alpha"
2 "Beta"
3 "Gamma, Letters"
4 "Delta"
5 "Epsilon"
6 "Zeta"
*Arcs
1 2 3
1 3 1
2 1 2
2 3 4
3 4 1
4 1 1
4 2 2
5 4 2
5 1 1
6 5 3
1 1 2
3 3 5
"""

SAMPLE_CLU = """\
*Vertices 6
1
1
1
2
2
2
"""


def network_from_dense(matrix, labels=None) -> CitationNetwork:
    matrix = np.asarray(matrix, dtype=np.float64)
    sources, targets = np.nonzero(matrix)
    labels = labels or [f"n{index}" for index in range(matrix.shape[0])]
    return CitationNetwork.from_arcs(labels, sources, targets, matrix[sources, targets])


def random_dense(rng: np.random.Generator, n: int, p: float, loops: bool = True, max_weight: int = 5) -> np.ndarray:
    """Random non-negative integer citation matrix."""
    mask = rng.random((n, n)) < p
    if not loops:
        np.fill_diagonal(mask, False)
    return np.where(mask, rng.integers(1, max_weight + 1, size=(n, n)), 0).astype(np.float64)


def bc_oracle(matrix: np.ndarray, lengths=None) -> np.ndarray:
    """Betweenness by enumerating every simple path between every ordered pair.

    ``lengths`` maps a weight to an arc length; None counts hops.
    """
    n = matrix.shape[0]
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for i, j in zip(*np.nonzero(matrix)):
        if i != j:
            graph.add_edge(int(i), int(j), length=1.0 if lengths is None else lengths(matrix[i, j]))
    bc = np.zeros(n)
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            paths = list(nx.all_simple_paths(graph, s, t))
            if not paths:
                continue
            totals = [sum(graph[a][b]["length"] for a, b in zip(path, path[1:])) for path in paths]
            best = min(totals)
            geodesics = [path for path, total in zip(paths, totals) if abs(total - best) <= 1e-9 * best]
            for path in geodesics:
                for k in path[1:-1]:
                    bc[k] += 1.0 / len(geodesics)
    return bc


def shortest_path_oracle(matrix: np.ndarray) -> np.ndarray:
    """Binary betweenness from networkx's enumeration of all shortest paths."""
    n = matrix.shape[0]
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(matrix)) if i != j)
    bc = np.zeros(n)
    for s in range(n):
        for t in range(n):
            if s == t or not nx.has_path(graph, s, t):
                continue
            paths = list(nx.all_shortest_paths(graph, s, t))
            for path in paths:
                for k in path[1:-1]:
                    bc[k] += 1.0 / len(paths)
    return bc


def diversity_oracle(matrix: np.ndarray, direction: Direction, convention: ProfileConvention) -> np.ndarray:
    """Dense p, dense cosine matrix and an explicit double sum per focal node."""
    matrix = np.asarray(matrix, dtype=np.float64)
    n = matrix.shape[0]
    profile_direction = direction if convention is ProfileConvention.SAME_DIRECTION else direction.other
    profiles = matrix.T if profile_direction is Direction.CITED else matrix
    norms = np.sqrt((profiles * profiles).sum(axis=1))
    distances = np.ones((n, n))
    for i in range(n):
        for j in range(n):
            if norms[i] > 0 and norms[j] > 0:
                cosine = float(profiles[i] @ profiles[j]) / (norms[i] * norms[j])
                distances[i, j] = min(max(1.0 - cosine, 0.0), 1.0)
    np.fill_diagonal(distances, 0.0)

    deltas = np.zeros(n)
    for focal in range(n):
        vector = matrix[:, focal] if direction is Direction.CITED else matrix[focal, :]
        total = vector.sum()
        if total == 0:
            continue
        p = vector / total
        deltas[focal] = float((np.outer(p, p) * distances).sum())
    return deltas


JOURNALS = 11_359
CITATION_LINKS = 2_848_736


def scale_model(rng: np.random.Generator, n: int = JOURNALS, links: int = CITATION_LINKS) -> CitationNetwork:
    """Synthetic journal network of full size: heavy-tailed out-degrees, popularity and weights."""
    degree = rng.pareto(2.0, size=n) + 1.0
    degree = np.minimum(np.rint(degree * links / degree.sum()), n - 1).astype(np.int64)
    popularity = 1.0 / rng.permutation(np.arange(1, n + 1)) ** 0.7
    popularity /= popularity.sum()
    targets = [rng.choice(n, size=int(k), replace=False, p=popularity) for k in degree]
    sources = np.repeat(np.arange(n), degree)
    weights = np.minimum(rng.zipf(2.0, size=sources.size), 10_000).astype(np.float64)
    return CitationNetwork.from_arcs([f"J{i}" for i in range(n)], sources, np.concatenate(targets), weights)


def peak_memory_bytes() -> int:
    import resource  # POSIX only

    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return peak if sys.platform == "darwin" else peak * 1024
