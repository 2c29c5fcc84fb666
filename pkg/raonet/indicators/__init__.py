"""Network indicators: betweenness centrality and Rao-Stirling diversity."""

from .centrality import (
    LengthMapping,
    bc_binary,
    bc_valued,
    centrality_table,
    normalize_bc,
    rank_table,
)
from .decomposition import cell_counts, decompose, decomposition_samples
from .diversity import (
    DistanceProvider,
    distance,
    diversity_all,
    emit_cell_values,
    group_aggregate,
    iter_cell_values,
    probability_vector,
    rao_stirling,
    true_diversity,
)

__all__ = [
    "DistanceProvider",
    "LengthMapping",
    "bc_binary",
    "bc_valued",
    "cell_counts",
    "centrality_table",
    "decompose",
    "decomposition_samples",
    "distance",
    "diversity_all",
    "emit_cell_values",
    "group_aggregate",
    "iter_cell_values",
    "normalize_bc",
    "probability_vector",
    "rank_table",
    "rao_stirling",
    "true_diversity",
]
