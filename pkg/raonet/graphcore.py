"""The in-memory citation network and its structural queries and transforms."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import RestrictError
from .models import Components, NeighborhoodMode, NetworkSummary, RawNetworkFile

logger = logging.getLogger(__name__)

DISTANCE_BATCH = 256


@dataclass(frozen=True, eq=False)
class CitationNetwork:
    """Directed weighted citation network.

    ``matrix[i, j]`` holds the citations from node i (citing) to node j
    (cited). Nodes are 0-based; ``origin`` maps each node back to the network
    this one was restricted from (identity for a freshly built network).
    """

    labels: tuple[str, ...]
    matrix: sp.csr_matrix
    origin: tuple[int, ...] = ()
    transpose: sp.csr_matrix = field(init=False, repr=False)

    def __post_init__(self):
        matrix = sp.csr_matrix(self.matrix, dtype=np.float64)
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()
        transpose = matrix.T.tocsr()
        transpose.sort_indices()
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "transpose", transpose)
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.origin:
            object.__setattr__(self, "origin", tuple(range(len(self.labels))))
        if matrix.shape != (len(self.labels), len(self.labels)):
            raise ValueError(f"matrix shape {matrix.shape} does not match {len(self.labels)} labels")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CitationNetwork):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.matrix.shape == other.matrix.shape
            and (self.matrix != other.matrix).nnz == 0
        )

    __hash__ = None

    @classmethod
    def from_arcs(
        cls,
        labels: Sequence[str],
        sources: Sequence[int],
        targets: Sequence[int],
        weights: Sequence[float],
    ) -> "CitationNetwork":
        """Build from 0-based arc arrays; repeated arcs are summed."""
        n = len(labels)
        matrix = sp.coo_matrix(
            (np.asarray(weights, dtype=np.float64),
             (np.asarray(sources, dtype=np.int64), np.asarray(targets, dtype=np.int64))),
            shape=(n, n),
        )
        return cls(labels=tuple(labels), matrix=matrix.tocsr())

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def links(self) -> int:
        return int(self.matrix.nnz)

    @property
    def loop_weight(self) -> np.ndarray:
        return self.matrix.diagonal()

    @property
    def citing_totals(self) -> np.ndarray:
        """References given by each node (row sums)."""
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    @property
    def cited_totals(self) -> np.ndarray:
        """Citations received by each node (column sums)."""
        return np.asarray(self.matrix.sum(axis=0)).ravel()

    def out_neighbors(self, node: int) -> np.ndarray:
        start, end = self.matrix.indptr[node], self.matrix.indptr[node + 1]
        return self.matrix.indices[start:end]

    def in_neighbors(self, node: int) -> np.ndarray:
        start, end = self.transpose.indptr[node], self.transpose.indptr[node + 1]
        return self.transpose.indices[start:end]

    def out_adjacency(self, node: int) -> list[tuple[int, float]]:
        """(target, weight) pairs in ascending target order."""
        start, end = self.matrix.indptr[node], self.matrix.indptr[node + 1]
        return list(zip(self.matrix.indices[start:end].tolist(),
                        self.matrix.data[start:end].tolist()))

    def in_adjacency(self, node: int) -> list[tuple[int, float]]:
        """(source, weight) pairs in ascending source order."""
        start, end = self.transpose.indptr[node], self.transpose.indptr[node + 1]
        return list(zip(self.transpose.indices[start:end].tolist(),
                        self.transpose.data[start:end].tolist()))

    def with_matrix(self, matrix: sp.spmatrix) -> "CitationNetwork":
        return CitationNetwork(labels=self.labels, matrix=matrix, origin=self.origin)


@dataclass(frozen=True)
class NeighborhoodResult:
    focal: int
    mode: NeighborhoodMode
    member_nodes: tuple[int, ...]
    subnetwork: Optional[CitationNetwork]
    isolated: bool = False


def build(raw: RawNetworkFile) -> CitationNetwork:
    """Convert a parsed Pajek file (1-based ids) into a CitationNetwork."""
    if raw.arcs:
        sources, targets, weights = zip(*raw.arcs)
    else:
        sources, targets, weights = (), (), ()
    return CitationNetwork.from_arcs(
        raw.labels,
        np.asarray(sources, dtype=np.int64) - 1,
        np.asarray(targets, dtype=np.int64) - 1,
        weights,
    )


def to_raw(net: CitationNetwork) -> RawNetworkFile:
    coo = net.matrix.tocoo()
    arcs = sorted(zip((coo.row + 1).tolist(), (coo.col + 1).tolist(), coo.data.tolist()))
    return RawNetworkFile.model_construct(
        vertex_count=net.n,
        labels=list(net.labels),
        arcs=arcs,
        edge_records_present=False,
    )


def weak_components(net: CitationNetwork) -> Components:
    """Components of the underlying undirected graph.

    Component ids are assigned by decreasing size; ties go to the component
    holding the smallest node index.
    """
    count, raw_ids = csgraph.connected_components(net.matrix, directed=True, connection="weak")
    sizes = np.bincount(raw_ids, minlength=count)
    first_member = np.full(count, net.n, dtype=np.int64)
    np.minimum.at(first_member, raw_ids, np.arange(net.n))
    order = sorted(range(count), key=lambda c: (-sizes[c], first_member[c]))
    relabel = np.empty(count, dtype=np.int64)
    relabel[order] = np.arange(count)
    return Components(
        membership=relabel[raw_ids].tolist(),
        sizes=[int(sizes[c]) for c in order],
    )


def restrict(net: CitationNetwork, nodes: Iterable[int]) -> CitationNetwork:
    """Induced subnetwork on ``nodes``; marginal sums downstream are recounted inside it."""
    index = np.unique(np.fromiter(nodes, dtype=np.int64))
    if index.size == 0:
        raise RestrictError("cannot restrict to an empty node set")
    if index[0] < 0 or index[-1] >= net.n:
        raise RestrictError(f"node index out of range for a network of {net.n} nodes")
    submatrix = net.matrix[index][:, index]
    return CitationNetwork(
        labels=tuple(net.labels[i] for i in index),
        matrix=submatrix,
        origin=tuple(net.origin[i] for i in index),
    )


def largest_component(net: CitationNetwork) -> CitationNetwork:
    components = weak_components(net)
    members = [node for node, comp in enumerate(components.membership) if comp == 0]
    dropped = net.n - len(members)
    if dropped:
        logger.info("Dropping %d nodes outside the largest component", dropped)
    return restrict(net, members)


def nodes_by_label(net: CitationNetwork, labels: Iterable[str]) -> list[int]:
    """Indices of the given labels (first occurrence of each label)."""
    index: dict[str, int] = {}
    for node, label in enumerate(net.labels):
        index.setdefault(label, node)
    nodes = []
    for label in labels:
        if label not in index:
            raise RestrictError(f"unknown label '{label}'")
        nodes.append(index[label])
    return nodes


def nodes_by_group(group_of: Sequence[int], groups: Iterable[int]) -> list[int]:
    wanted = set(groups)
    nodes = [node for node, group in enumerate(group_of) if group in wanted]
    if not nodes:
        raise RestrictError(f"no nodes in groups {sorted(wanted)}")
    return nodes


def self_citations(net: CitationNetwork) -> np.ndarray:
    return net.loop_weight


def density(n: int, links: int) -> float:
    """Links over n squared; loops count in both numerator and denominator."""
    return links / (n * n) if n else 0.0


def average_total_degree(n: int, links: int) -> float:
    """Each arc adds one out-degree and one in-degree."""
    return 2 * links / n if n else 0.0


def _undirected_simple(net: CitationNetwork) -> sp.csr_matrix:
    """Binarized, symmetrized, loopless adjacency."""
    pattern = net.matrix + net.transpose
    pattern = sp.csr_matrix((pattern > 0).astype(np.float64))
    pattern.setdiag(0)
    pattern.eliminate_zeros()
    pattern.sort_indices()
    return pattern


def _distance_statistics(adjacency: sp.csr_matrix) -> tuple[float, int, bool]:
    n = adjacency.shape[0]
    total = 0.0
    pairs = 0
    maximum = 0
    for start in range(0, n, DISTANCE_BATCH):
        sources = np.arange(start, min(start + DISTANCE_BATCH, n))
        dist = csgraph.shortest_path(adjacency, method="D", directed=True,
                                     unweighted=True, indices=sources)
        reachable = np.isfinite(dist) & (dist > 0)
        if reachable.any():
            total += float(dist[reachable].sum())
            pairs += int(reachable.sum())
            maximum = max(maximum, int(dist[reachable].max()))
    if pairs == 0:
        return 0.0, 0, False
    return total / pairs, maximum, True


def _clustering_coefficient(adjacency: sp.csr_matrix) -> float:
    n = adjacency.shape[0]
    if n == 0:
        return 0.0
    degree = np.asarray(adjacency.sum(axis=1)).ravel()
    local = np.zeros(n)
    for start in range(0, n, DISTANCE_BATCH):
        rows = adjacency[start:start + DISTANCE_BATCH]
        # Closed two-paths i-j-k-i, each triangle at i counted twice.
        closed = np.asarray((rows @ adjacency).multiply(rows).sum(axis=1)).ravel()
        d = degree[start:start + DISTANCE_BATCH]
        possible = d * (d - 1)
        np.divide(closed, possible, out=local[start:start + DISTANCE_BATCH], where=d >= 2)
    return float(local.mean())


def summary(net: CitationNetwork) -> NetworkSummary:
    """Network characteristics: size, density, degree, distances, clustering.

    Distances are geodesics of the undirected binarized graph, averaged over
    reachable ordered pairs. The clustering coefficient is the mean local
    clustering of the undirected binarized loopless graph.
    """
    adjacency = _undirected_simple(net)
    average_distance, maximum_distance, defined = _distance_statistics(adjacency)
    if not defined:
        logger.warning("No reachable node pairs; distances reported as 0")
    return NetworkSummary(
        nodes=net.n,
        links=net.links,
        loops=int(np.count_nonzero(net.loop_weight)),
        total_citations=float(net.matrix.sum()),
        density=density(net.n, net.links),
        average_total_degree=average_total_degree(net.n, net.links),
        average_distance=average_distance,
        maximum_distance=maximum_distance,
        clustering_coefficient=_clustering_coefficient(adjacency),
        distances_defined=defined,
    )


def binarize(net: CitationNetwork) -> CitationNetwork:
    matrix = net.matrix.copy()
    matrix.data = np.ones_like(matrix.data)
    return net.with_matrix(matrix)


def symmetrize(net: CitationNetwork) -> CitationNetwork:
    """Replace w(i,j) and w(j,i) by their sum in both directions.

    A pair already carrying the same weight both ways is an undirected tie and
    keeps that weight, as do loops. The rule looks at one pair at a time, so
    symmetrizing twice changes nothing.
    """
    mutual = net.matrix.multiply(net.transpose).tocoo()
    forward = np.asarray(net.matrix[mutual.row, mutual.col]).ravel()
    backward = np.asarray(net.transpose[mutual.row, mutual.col]).ravel()
    tie = forward == backward
    kept = sp.coo_matrix((forward[tie], (mutual.row[tie], mutual.col[tie])), shape=net.matrix.shape)
    return net.with_matrix((net.matrix + net.transpose - kept).tocsr())


def drop_loops(net: CitationNetwork) -> CitationNetwork:
    return net.with_matrix(net.matrix - sp.diags(net.loop_weight))


def neighborhood(
    net: CitationNetwork,
    focal: int,
    mode: NeighborhoodMode,
    include_focal: bool = False,
) -> NeighborhoodResult:
    """k=1 integration (cited set) or diffusion (citing set) network of ``focal``.

    The subnetwork keeps every arc among the members with its weight.
    """
    if not 0 <= focal < net.n:
        raise RestrictError(f"focal node {focal + 1} out of range")
    if mode is NeighborhoodMode.INTEGRATION:
        neighbors = net.out_neighbors(focal)
    else:
        neighbors = net.in_neighbors(focal)
    members = {int(node) for node in neighbors if node != focal}
    isolated = not members
    if include_focal:
        members.add(focal)
    if isolated:
        logger.warning("Node '%s' has no %s neighbors", net.labels[focal], mode.value)
    member_nodes = tuple(sorted(members))
    subnetwork = restrict(net, member_nodes) if member_nodes else None
    return NeighborhoodResult(
        focal=focal,
        mode=mode,
        member_nodes=member_nodes,
        subnetwork=subnetwork,
        isolated=isolated,
    )
