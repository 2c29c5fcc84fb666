"""Betweenness centrality on directed networks, binary and valued."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel
from scipy.sparse import csgraph

from ..errors import DataError, LengthMappingError
from ..graphcore import CitationNetwork, binarize, drop_loops, symmetrize
from ..models import CentralityRecord, LengthMode, RankedRow

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 64
RELATIVE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class LengthMapping:
    """Turns citation weights into arc lengths for valued geodesics."""

    mode: LengthMode = LengthMode.INVERSE
    max_weight: Optional[float] = None

    @classmethod
    def for_network(cls, net: CitationNetwork, mode: LengthMode) -> "LengthMapping":
        """Mapping with parameters taken from the loopless network."""
        data = drop_loops(net).matrix.data
        return cls(mode=mode, max_weight=float(data.max()) if data.size else 1.0)

    def lengths(self, weights: np.ndarray) -> np.ndarray:
        weights = np.asarray(weights, dtype=np.float64)
        with np.errstate(divide="ignore", over="ignore"):
            if self.mode is LengthMode.INVERSE:
                lengths = 1.0 / weights
            elif self.mode is LengthMode.UNIT:
                lengths = np.ones_like(weights)
            else:
                if self.max_weight is None:
                    raise LengthMappingError("max_plus_one_minus mapping needs the maximum weight")
                lengths = self.max_weight + 1.0 - weights
        bad = ~(np.isfinite(lengths) & (lengths > 0))
        if bad.any():
            raise LengthMappingError(
                f"{int(bad.sum())} arcs map to a non-positive or infinite length "
                f"under the {self.mode.value} mapping"
            )
        return lengths


def normalize_bc(raw: np.ndarray, n: int) -> np.ndarray:
    """Percentage of the (n-1)(n-2) ordered pairs a node can lie between."""
    raw = np.asarray(raw, dtype=np.float64)
    if n < 3:
        return np.zeros_like(raw)
    return 100.0 * raw / ((n - 1) * (n - 2))


def _binary_batch(adjacency: sp.csr_matrix, transpose: sp.csr_matrix, sources: np.ndarray) -> np.ndarray:
    """Dependencies of every node on the given sources, BFS levels as sparse products."""
    n = adjacency.shape[0]
    columns = np.arange(sources.size)
    sigma = np.zeros((n, sources.size))
    dist = np.full((n, sources.size), -1, dtype=np.int64)
    sigma[sources, columns] = 1.0
    dist[sources, columns] = 0

    frontier = sigma.copy()
    depth = 0
    while True:
        reached = transpose @ frontier
        new = (reached > 0) & (dist < 0)
        if not new.any():
            break
        depth += 1
        dist[new] = depth
        frontier = np.where(new, reached, 0.0)
        sigma += frontier

    delta = np.zeros((n, sources.size))
    coefficient = np.empty((n, sources.size))
    for level in range(depth, 0, -1):
        coefficient.fill(0.0)
        np.divide(1.0 + delta, sigma, out=coefficient, where=dist == level)
        upstream = adjacency @ coefficient
        delta += np.where(dist == level - 1, sigma * upstream, 0.0)
    delta[sources, columns] = 0.0
    return delta.sum(axis=1)


def _accumulate_source(
    n: int,
    source: int,
    dist: np.ndarray,
    tails: np.ndarray,
    heads: np.ndarray,
) -> np.ndarray:
    """Brandes dependency accumulation over the shortest-path DAG of one source."""
    order = np.argsort(dist, kind="stable")
    reachable = order[np.isfinite(dist[order])]
    by_head = np.argsort(heads, kind="stable")
    tails = tails[by_head]
    pointer = np.searchsorted(heads[by_head], np.arange(n + 1))

    sigma = np.zeros(n)
    sigma[source] = 1.0
    for v in reachable[1:]:
        sigma[v] = sigma[tails[pointer[v]:pointer[v + 1]]].sum()

    delta = np.zeros(n)
    for w in reachable[:0:-1]:
        preds = tails[pointer[w]:pointer[w + 1]]
        if preds.size:
            delta[preds] += sigma[preds] * ((1.0 + delta[w]) / sigma[w])
    delta[source] = 0.0
    return delta


def _valued_batch(lengths: sp.csr_matrix, sources: np.ndarray) -> np.ndarray:
    n = lengths.shape[0]
    distances = csgraph.dijkstra(lengths, directed=True, indices=sources)
    tails_all = np.repeat(np.arange(n), np.diff(lengths.indptr))
    heads_all = lengths.indices
    total = np.zeros(n)
    for position, source in enumerate(sources):
        dist = distances[position]
        start = dist[tails_all]
        end = dist[heads_all]
        via = start + lengths.data
        with np.errstate(invalid="ignore"):
            # Equal-length geodesics are compared with a relative tolerance.
            tight = (
                np.isfinite(via)
                & (start < end)
                & (np.abs(via - end) <= RELATIVE_TOLERANCE * np.maximum(via, end))
            )
        total += _accumulate_source(n, int(source), dist, tails_all[tight], heads_all[tight])
    return total


def _sweep(batch: Callable[[np.ndarray], np.ndarray], n: int, batch_size: int, workers: int) -> np.ndarray:
    """Run ``batch`` over fixed source batches and sum partials in batch order.

    The batch partition depends only on ``n`` and ``batch_size``, so results are
    bitwise identical for any worker count.
    """
    batches = [np.arange(start, min(start + batch_size, n)) for start in range(0, n, batch_size)]
    if workers > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(batch, batches))
    else:
        partials = [batch(sources) for sources in batches]
    total = np.zeros(n)
    for partial in partials:
        total += partial
    return total


def binary_betweenness(net: CitationNetwork, workers: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> np.ndarray:
    """Raw binary betweenness per node; loops are ignored."""
    adjacency = binarize(drop_loops(net)).matrix
    transpose = adjacency.T.tocsr()
    logger.debug("Binary betweenness over %d nodes, %d arcs", net.n, adjacency.nnz)
    return _sweep(lambda sources: _binary_batch(adjacency, transpose, sources),
                  net.n, batch_size, workers)


def valued_betweenness(
    net: CitationNetwork,
    lengths: LengthMapping,
    workers: int = 1,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> np.ndarray:
    """Raw betweenness with geodesics measured in mapped arc lengths."""
    loopless = drop_loops(net)
    if lengths.mode is LengthMode.MAX_PLUS_ONE_MINUS and lengths.max_weight is None:
        lengths = LengthMapping.for_network(loopless, lengths.mode)
    matrix = loopless.matrix.copy()
    matrix.data = lengths.lengths(matrix.data)
    logger.debug("Valued betweenness over %d nodes with %s lengths", net.n, lengths.mode.value)
    return _sweep(lambda sources: _valued_batch(matrix, sources), net.n, batch_size, workers)


def bc_binary(net: CitationNetwork, workers: int = 1, batch_size: int = DEFAULT_BATCH_SIZE) -> list[CentralityRecord]:
    raw = binary_betweenness(net, workers, batch_size)
    normalized = normalize_bc(raw, net.n)
    return [
        CentralityRecord(node=node + 1, label=net.labels[node],
                         bc_raw=float(raw[node]), bc_normalized=float(normalized[node]))
        for node in range(net.n)
    ]


def bc_valued(
    net: CitationNetwork,
    lengths: LengthMapping,
    workers: int = 1,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> list[CentralityRecord]:
    raw = valued_betweenness(net, lengths, workers, batch_size)
    normalized = normalize_bc(raw, net.n)
    return [
        CentralityRecord(node=node + 1, label=net.labels[node],
                         bc_valued_raw=float(raw[node]),
                         bc_valued_normalized=float(normalized[node]))
        for node in range(net.n)
    ]


def centrality_table(
    net: CitationNetwork,
    valued: bool = False,
    length_mode: LengthMode = LengthMode.INVERSE,
    symmetrize_first: bool = False,
    workers: int = 1,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> list[CentralityRecord]:
    """Binary betweenness, plus the valued columns when ``valued`` is set."""
    if symmetrize_first:
        net = symmetrize(net)
    records = bc_binary(net, workers, batch_size)
    if not valued:
        return records
    lengths = LengthMapping.for_network(net, length_mode)
    for record, valued_record in zip(records, bc_valued(net, lengths, workers, batch_size)):
        record.bc_valued_raw = valued_record.bc_valued_raw
        record.bc_valued_normalized = valued_record.bc_valued_normalized
    return records


def rank_table(records: Sequence[BaseModel], key: str) -> list[RankedRow]:
    """Rank records descending by ``key``.

    Ties are ordered by label and share the smaller rank; missing values go last.
    """
    if not records:
        return []
    if key not in type(records[0]).model_fields:
        raise DataError(f"unknown ranking key '{key}'")

    def sort_key(record: BaseModel) -> tuple:
        value = getattr(record, key)
        return (value is None, -(value or 0.0), record.label)

    rows: list[RankedRow] = []
    previous = object()
    rank = 0
    for position, record in enumerate(sorted(records, key=sort_key), start=1):
        value = getattr(record, key)
        value = None if value is None else float(value)
        if value != previous:
            rank = position
            previous = value
        rows.append(RankedRow(rank=rank, node=record.node, label=record.label, value=value))
    return rows
