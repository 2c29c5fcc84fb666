"""Decomposition of summed diversity into within-group and between-group parts."""

import logging
from collections.abc import Sequence

import numpy as np

from ..errors import PartitionError
from ..graphcore import CitationNetwork, restrict
from ..models import (
    DecompositionMode,
    DecompositionReport,
    Direction,
    GroupDiversity,
    ProfileConvention,
)
from .diversity import (
    DEFAULT_CACHE_ROWS,
    DistanceProvider,
    diversity_direction,
    focal_cells,
    map_nodes,
    probability_vector,
)

logger = logging.getLogger(__name__)

BETWEEN = "between"


def cell_counts(group_sizes: Sequence[int], analyzed: int) -> tuple[int, int, float]:
    """Ordered pair cells inside groups, in the whole matrix, and their ratio."""
    within = sum(size * (size - 1) for size in group_sizes)
    total = analyzed * (analyzed - 1)
    return within, total, (within / total if total else 0.0)


def _check_partition(net: CitationNetwork, group_of: Sequence[int]) -> np.ndarray:
    if len(group_of) != net.n:
        raise PartitionError(
            f"partition covers {len(group_of)} nodes but the network has {net.n}"
        )
    return np.asarray(group_of, dtype=np.int64)


def _split_focal(
    net: CitationNetwork,
    focal: int,
    direction: Direction,
    provider: DistanceProvider,
    groups: np.ndarray,
) -> tuple[float, float, dict[int, float]]:
    """(delta, between-group part, within part per group) of one focal node."""
    p = probability_vector(net, focal, direction)
    if p.partners.size < 2:
        return 0.0, 0.0, {}
    cells = focal_cells(p, provider)
    labels = groups[p.partners]
    within: dict[int, float] = {}
    same = np.zeros(cells.shape, dtype=bool)
    for group in np.unique(labels):
        members = labels == group
        mask = np.outer(members, members)
        same |= mask
        within[int(group)] = float(cells[mask].sum())
    return float(cells.sum()), float(cells[~same].sum()), within


def decompose(
    net: CitationNetwork,
    group_of: Sequence[int],
    direction: Direction,
    convention: ProfileConvention = ProfileConvention.SAME_DIRECTION,
    mode: DecompositionMode = DecompositionMode.GRAND_MATRIX,
    workers: int = 1,
    cache_rows: int = DEFAULT_CACHE_ROWS,
) -> DecompositionReport:
    """Split the summed diversity of ``net`` over the groups of a partition.

    In local mode every group is restricted to its own sub-matrix and its
    diversity recomputed there. In grand-matrix mode shares and distances come
    from the whole matrix and each cell p_i p_j d_ij is attributed to a group
    when i and j share it, to the between-group part otherwise.
    """
    groups = _check_partition(net, group_of)
    group_ids = sorted(set(groups.tolist()))
    provider = DistanceProvider(net, direction, convention, cache_rows)
    full = diversity_direction(net, direction, convention, workers, provider=provider)
    total_delta = sum(result.delta for result in full)
    total_d2 = sum(result.d2 for result in full if result.d2 is not None)
    sizes = {group: int((groups == group).sum()) for group in group_ids}
    within_cells, total_cells, _ = cell_counts(list(sizes.values()), net.n)

    per_group = []
    between_delta = None
    between_share = None
    if mode is DecompositionMode.LOCAL:
        for group in group_ids:
            members = np.flatnonzero(groups == group)
            sub = restrict(net, members)
            results = diversity_direction(sub, direction, convention, workers, cache_rows)
            per_group.append(GroupDiversity(
                group=group,
                within_delta=sum(result.delta for result in results),
                within_d2=sum(result.d2 for result in results if result.d2 is not None),
                node_count=sizes[group],
                cell_count=sizes[group] * (sizes[group] - 1),
            ))
    else:
        splits = map_nodes(
            lambda focal: _split_focal(net, focal, direction, provider, groups),
            list(range(net.n)),
            workers,
        )
        within = {group: 0.0 for group in group_ids}
        between_delta = 0.0
        for _, between_part, within_parts in splits:
            between_delta += between_part
            for group, value in within_parts.items():
                within[group] += value
        for group in group_ids:
            members = np.flatnonzero(groups == group)
            per_group.append(GroupDiversity(
                group=group,
                within_delta=within[group],
                within_d2=sum(full[node].d2 for node in members if full[node].d2 is not None),
                node_count=sizes[group],
                cell_count=sizes[group] * (sizes[group] - 1),
            ))
        between_share = between_delta / total_delta if total_delta > 0 else 0.0

    logger.info(
        "%s decomposition (%s): total %.4g over %d groups",
        direction.value, mode.value, total_delta, len(group_ids),
    )
    return DecompositionReport(
        direction=direction,
        mode=mode,
        convention=convention,
        total_delta=total_delta,
        total_d2=total_d2,
        per_group=per_group,
        between_delta=between_delta,
        between_share=between_share,
        within_cell_count=within_cells,
        total_cell_count=total_cells,
    )


def decomposition_samples(
    net: CitationNetwork,
    group_of: Sequence[int],
    direction: Direction,
    convention: ProfileConvention = ProfileConvention.SAME_DIRECTION,
    workers: int = 1,
    cache_rows: int = DEFAULT_CACHE_ROWS,
) -> dict[str, list[float]]:
    """Per-focal grand-matrix contributions, ready for ANOVA.

    Group g's sample holds, for every focal node in g, the cells it generates
    among partners of group g; the "between" sample holds every focal node's
    between-group cells.
    """
    groups = _check_partition(net, group_of)
    provider = DistanceProvider(net, direction, convention, cache_rows)
    splits = map_nodes(
        lambda focal: _split_focal(net, focal, direction, provider, groups),
        list(range(net.n)),
        workers,
    )
    samples: dict[str, list[float]] = {BETWEEN: []}
    for group in sorted(set(groups.tolist())):
        samples[str(group)] = []
    for focal, (_, between_part, within_parts) in enumerate(splits):
        group = int(groups[focal])
        samples[str(group)].append(within_parts.get(group, 0.0))
        samples[BETWEEN].append(between_part)
    return samples
