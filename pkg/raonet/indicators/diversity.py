"""Rao-Stirling diversity and true diversity along cited and citing vectors.

Distances between journals are 1 - cosine of their citation profiles. With the
same-direction convention, cited diversity compares cited profiles (matrix
columns) and citing diversity compares citing profiles (matrix rows); the
orthogonal convention swaps the profiles.
"""

import logging
import threading
from collections import OrderedDict
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, TextIO, TypeVar

import numpy as np
import scipy.sparse as sp

from ..errors import DataError, DirectionMismatchError
from ..graphcore import CitationNetwork
from ..models import (
    Direction,
    DiversityFlag,
    DiversityRecord,
    GroupAggregate,
    ProfileConvention,
)
from ..netio.reports import CELL_SCHEMA, write_report

logger = logging.getLogger(__name__)

DEFAULT_CACHE_ROWS = 12_000
ROW_CHUNK = 256
FOCAL_CHUNK = 128
SATURATION_EPSILON = 1e-12
CELL_WARNING_ROWS = 50_000_000

T = TypeVar("T")


@dataclass(frozen=True)
class ProbabilityVector:
    """Citation shares of a focal node's partners in one direction."""

    focal: int
    direction: Direction
    partners: np.ndarray
    p: np.ndarray
    total: float

    @property
    def zero(self) -> bool:
        return self.total == 0

    @property
    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.partners.tolist(), self.p.tolist()))


@dataclass(frozen=True)
class RaoStirling:
    delta: float
    d2: Optional[float]
    flags: frozenset[DiversityFlag] = field(default_factory=frozenset)


class CellValue(NamedTuple):
    focal: int
    i: int
    j: int
    p_i: float
    p_j: float
    d_ij: float
    cell: float


def probability_vector(net: CitationNetwork, focal: int, direction: Direction) -> ProbabilityVector:
    """Normalize the focal column (cited) or row (citing), self-citations included.

    Totals are recounted inside ``net``, so a restricted network yields
    subset-internal shares.
    """
    adjacency = net.transpose if direction is Direction.CITED else net.matrix
    start, end = adjacency.indptr[focal], adjacency.indptr[focal + 1]
    partners = adjacency.indices[start:end].copy()
    weights = adjacency.data[start:end]
    total = float(weights.sum())
    if total == 0:
        return ProbabilityVector(focal, direction, partners[:0], np.zeros(0), 0.0)
    return ProbabilityVector(focal, direction, partners, weights / total, total)


class DistanceProvider:
    """Lazily computed, LRU-cached cosine rows between journal profiles.

    Cache fills are idempotent: a row recomputed after eviction is bitwise
    equal to the evicted one, so concurrent readers need no coordination
    beyond the lock guarding the cache dictionary.
    """

    def __init__(
        self,
        net: CitationNetwork,
        direction: Direction,
        convention: ProfileConvention = ProfileConvention.SAME_DIRECTION,
        cache_rows: int = DEFAULT_CACHE_ROWS,
    ):
        self.net = net
        self.direction = direction
        self.convention = convention
        self.cache_rows = cache_rows
        profile_direction = direction if convention is ProfileConvention.SAME_DIRECTION else direction.other
        self.profile_direction = profile_direction
        # Row k of ``profiles`` is journal k's cited (column) or citing (row) profile.
        profiles = net.transpose if profile_direction is Direction.CITED else net.matrix
        norms = np.sqrt(np.asarray(profiles.multiply(profiles).sum(axis=1)).ravel())
        self.zero_profile = norms == 0
        scale = np.zeros_like(norms)
        np.divide(1.0, norms, out=scale, where=~self.zero_profile)
        self._unit = sp.csr_matrix(sp.diags(scale) @ profiles)
        self._unit.sort_indices()
        self._rows: OrderedDict[int, np.ndarray] = OrderedDict()
        self._lock = threading.Lock()
        if self.zero_profile.any():
            logger.info(
                "%d nodes have an empty %s profile; their distances are set to 1",
                int(self.zero_profile.sum()), profile_direction.value,
            )

    def _compute_rows(self, nodes: Sequence[int]) -> list[np.ndarray]:
        rows = []
        for start in range(0, len(nodes), ROW_CHUNK):
            chunk = list(nodes[start:start + ROW_CHUNK])
            block = self._unit @ self._unit[chunk].toarray().T
            rows.extend(np.ascontiguousarray(block[:, c]) for c in range(len(chunk)))
        return rows

    def cosine_rows(self, nodes: Sequence[int]) -> list[np.ndarray]:
        """Cosine of each requested node against every node."""
        found: dict[int, np.ndarray] = {}
        with self._lock:
            for node in nodes:
                row = self._rows.get(node)
                if row is not None:
                    self._rows.move_to_end(node)
                    found[node] = row
        missing = [node for node in dict.fromkeys(nodes) if node not in found]
        if missing:
            computed = dict(zip(missing, self._compute_rows(missing)))
            found.update(computed)
            with self._lock:
                for node, row in computed.items():
                    self._rows[node] = row
                    self._rows.move_to_end(node)
                while len(self._rows) > self.cache_rows:
                    self._rows.popitem(last=False)
        return [found[node] for node in nodes]

    def is_flagged(self, i: int, j: int) -> bool:
        """Pairs involving an empty profile get distance 1 by convention."""
        return i != j and bool(self.zero_profile[i] or self.zero_profile[j])

    def distance(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        if self.is_flagged(i, j):
            return 1.0
        low, high = min(i, j), max(i, j)
        (row,) = self.cosine_rows([low])
        return float(min(max(1.0 - row[high], 0.0), 1.0))

    def block(self, nodes: np.ndarray) -> np.ndarray:
        """Distance matrix among ``nodes`` (zero diagonal, exactly symmetric)."""
        nodes = np.asarray(nodes, dtype=np.int64)
        if nodes.size == 0:
            return np.zeros((0, 0))
        rows = self.cosine_rows(nodes.tolist())
        distance = 1.0 - np.stack([row[nodes] for row in rows])
        np.clip(distance, 0.0, 1.0, out=distance)
        zero = self.zero_profile[nodes]
        distance[zero, :] = 1.0
        distance[:, zero] = 1.0
        np.fill_diagonal(distance, 0.0)
        return distance


def distance(provider: DistanceProvider, i: int, j: int) -> float:
    """Cosine distance between the profiles of nodes i and j in the provider's direction."""
    return provider.distance(i, j)


def true_diversity(delta: float) -> Optional[float]:
    """d2 = 1 / (1 - delta); None once delta saturates."""
    if delta >= 1.0 - SATURATION_EPSILON:
        return None
    return 1.0 / (1.0 - delta)


def rao_stirling(p: ProbabilityVector, provider: DistanceProvider) -> RaoStirling:
    """Sum of p_i p_j d_ij over ordered pairs of distinct partners."""
    if p.direction is not provider.direction:
        raise DirectionMismatchError(
            f"probability vector is {p.direction.value}, distances are {provider.direction.value}"
        )
    flags = set()
    if p.zero:
        flags.add(DiversityFlag.ZERO_VECTOR)
    if p.partners.size < 2:
        return RaoStirling(delta=0.0, d2=1.0, flags=frozenset(flags))
    delta = float(p.p @ provider.block(p.partners) @ p.p)
    delta = min(max(delta, 0.0), 1.0)
    d2 = true_diversity(delta)
    if d2 is None:
        flags.add(DiversityFlag.DELTA_SATURATED)
    return RaoStirling(delta=delta, d2=d2, flags=frozenset(flags))


def map_nodes(func: Callable[[int], T], nodes: Sequence[int], workers: int = 1) -> list[T]:
    """Apply ``func`` to every node; results come back in node order."""
    if workers <= 1 or len(nodes) <= FOCAL_CHUNK:
        return [func(node) for node in nodes]
    chunks = [nodes[start:start + FOCAL_CHUNK] for start in range(0, len(nodes), FOCAL_CHUNK)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(lambda chunk: [func(node) for node in chunk], chunks)
        return [item for chunk in results for item in chunk]


def diversity_direction(
    net: CitationNetwork,
    direction: Direction,
    convention: ProfileConvention = ProfileConvention.SAME_DIRECTION,
    workers: int = 1,
    cache_rows: int = DEFAULT_CACHE_ROWS,
    provider: Optional[DistanceProvider] = None,
) -> list[RaoStirling]:
    provider = provider or DistanceProvider(net, direction, convention, cache_rows)
    return map_nodes(
        lambda focal: rao_stirling(probability_vector(net, focal, direction), provider),
        list(range(net.n)),
        workers,
    )


def diversity_all(
    net: CitationNetwork,
    direction: Optional[Direction] = None,
    convention: ProfileConvention = ProfileConvention.SAME_DIRECTION,
    workers: int = 1,
    cache_rows: int = DEFAULT_CACHE_ROWS,
) -> list[DiversityRecord]:
    """One record per node; ``direction=None`` fills both directions."""
    directions = [direction] if direction else [Direction.CITED, Direction.CITING]
    cited_totals = net.cited_totals
    citing_totals = net.citing_totals
    records = [
        DiversityRecord(
            node=node + 1,
            label=net.labels[node],
            sum_cited=float(cited_totals[node]),
            sum_citing=float(citing_totals[node]),
        )
        for node in range(net.n)
    ]
    for current in directions:
        results = diversity_direction(net, current, convention, workers, cache_rows)
        saturated = 0
        for record, result in zip(records, results):
            setattr(record, f"delta_{current.value}", result.delta)
            setattr(record, f"d2_{current.value}", result.d2)
            setattr(record, f"flags_{current.value}", set(result.flags))
            saturated += DiversityFlag.DELTA_SATURATED in result.flags
        if saturated:
            logger.warning("%d nodes have saturated %s diversity", saturated, current.value)
    return records


def focal_cells(p: ProbabilityVector, provider: DistanceProvider) -> np.ndarray:
    """Matrix of p_i p_j d_ij over the focal's partners (zero diagonal)."""
    return np.outer(p.p, p.p) * provider.block(p.partners)


def iter_cell_values(
    net: CitationNetwork,
    direction: Direction,
    convention: ProfileConvention = ProfileConvention.SAME_DIRECTION,
    nodes: Optional[Iterable[int]] = None,
    provider: Optional[DistanceProvider] = None,
) -> Iterator[CellValue]:
    """Cell values of every ordered partner pair, 1-based ids, focal order."""
    provider = provider or DistanceProvider(net, direction, convention)
    focals = range(net.n) if nodes is None else sorted(set(nodes))
    for focal in focals:
        p = probability_vector(net, focal, direction)
        if p.partners.size < 2:
            continue
        distances = provider.block(p.partners)
        ids = p.partners + 1
        for a in range(p.partners.size):
            for b in range(p.partners.size):
                if a == b:
                    continue
                d_ab = float(distances[a, b])
                yield CellValue(
                    focal=focal + 1,
                    i=int(ids[a]),
                    j=int(ids[b]),
                    p_i=float(p.p[a]),
                    p_j=float(p.p[b]),
                    d_ij=d_ab,
                    cell=float(p.p[a] * p.p[b] * d_ab),
                )


def projected_cell_rows(net: CitationNetwork, direction: Direction, nodes: Optional[Iterable[int]] = None) -> int:
    adjacency = net.transpose if direction is Direction.CITED else net.matrix
    sizes = np.diff(adjacency.indptr).astype(np.int64)
    if nodes is not None:
        sizes = sizes[sorted(set(nodes))]
    return int((sizes * (sizes - 1)).sum())


def emit_cell_values(
    net: CitationNetwork,
    direction: Direction,
    convention: ProfileConvention,
    sink: TextIO,
    nodes: Optional[Iterable[int]] = None,
    warn_rows: int = CELL_WARNING_ROWS,
) -> int:
    """Stream per-pair cell values as CSV at full precision.

    Returns:
        Number of rows written
    """
    if nodes is not None:
        nodes = sorted(set(nodes))
    projected = projected_cell_rows(net, direction, nodes)
    if projected > warn_rows:
        logger.warning("Cell file will hold %d rows for the %s direction", projected, direction.value)
    return write_report(
        iter_cell_values(net, direction, convention, nodes),
        CELL_SCHEMA,
        sink,
        precision=None,
    )


NUMERIC_FIELDS = ("delta_cited", "d2_cited", "delta_citing", "d2_citing", "sum_cited", "sum_citing")


def group_aggregate(
    records: Sequence[DiversityRecord],
    group_of: Sequence[int],
    field_name: str,
    groups: Optional[Iterable[int]] = None,
) -> list[GroupAggregate]:
    """Sum, mean and standard error (n-1 deviation over sqrt n) per group."""
    if field_name not in NUMERIC_FIELDS:
        raise DataError(f"unknown field '{field_name}'")
    values: dict[int, list[float]] = {group: [] for group in (groups or sorted(set(group_of)))}
    for record in records:
        value = getattr(record, field_name)
        group = group_of[record.node - 1]
        values.setdefault(group, [])
        if value is not None:
            values[group].append(value)

    aggregates = []
    for group in sorted(values):
        sample = np.asarray(values[group], dtype=np.float64)
        if sample.size == 0:
            aggregates.append(GroupAggregate(group=group, count=0, flagged=True))
            continue
        standard_error = None
        if sample.size >= 2:
            standard_error = float(sample.std(ddof=1) / np.sqrt(sample.size))
        aggregates.append(GroupAggregate(
            group=group,
            count=int(sample.size),
            sum=float(sample.sum()),
            mean=float(sample.mean()),
            standard_error=standard_error,
            flagged=standard_error is None,
        ))
    return aggregates
