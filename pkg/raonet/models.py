"""Data models for raonet."""

import math
from datetime import datetime, timezone
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, PositiveInt, model_validator


class Direction(str, Enum):
    CITED = "cited"
    CITING = "citing"

    @property
    def other(self) -> "Direction":
        return Direction.CITING if self is Direction.CITED else Direction.CITED


class ProfileConvention(str, Enum):
    SAME_DIRECTION = "same_direction"
    ORTHOGONAL = "orthogonal"


class LengthMode(str, Enum):
    INVERSE = "inverse"
    UNIT = "unit"
    MAX_PLUS_ONE_MINUS = "max_plus_one_minus"


class NeighborhoodMode(str, Enum):
    INTEGRATION = "integration"
    DIFFUSION = "diffusion"


class DecompositionMode(str, Enum):
    LOCAL = "local"
    GRAND_MATRIX = "grand_matrix"


class DiversityFlag(str, Enum):
    ZERO_VECTOR = "zero_vector"
    DELTA_SATURATED = "delta_saturated"


class RawNetworkFile(BaseModel):
    """Contents of a Pajek .net file, 1-based vertex ids."""

    vertex_count: PositiveInt
    labels: list[str]
    arcs: list[tuple[int, int, float]] = Field(default_factory=list)
    edge_records_present: bool = False

    @model_validator(mode="after")
    def _check_invariants(self) -> "RawNetworkFile":
        if len(self.labels) != self.vertex_count:
            raise ValueError(
                f"expected {self.vertex_count} labels, found {len(self.labels)}"
            )
        for source, target, weight in self.arcs:
            for vertex in (source, target):
                if not 1 <= vertex <= self.vertex_count:
                    raise ValueError(f"vertex id {vertex} out of range")
            if not math.isfinite(weight) or weight < 0:
                raise ValueError(f"invalid weight {weight} on arc {source} {target}")
        return self


class PartitionFile(BaseModel):
    """Contents of a Pajek .clu file."""

    vertex_count: PositiveInt
    group_of: list[int]

    @model_validator(mode="after")
    def _check_length(self) -> "PartitionFile":
        if len(self.group_of) != self.vertex_count:
            raise ValueError(
                f"expected {self.vertex_count} entries, found {len(self.group_of)}"
            )
        return self


class Components(BaseModel):
    """Weak components: per-node component id, ids ordered by decreasing size."""

    membership: list[int]
    sizes: list[int]


class NetworkSummary(BaseModel):
    """Descriptive statistics in the shape of a network-characteristics table."""

    nodes: int
    links: int
    loops: int
    total_citations: float
    density: float
    average_total_degree: float
    average_distance: float
    maximum_distance: int
    clustering_coefficient: float
    distances_defined: bool = True


class CentralityRecord(BaseModel):
    """Betweenness of one node; binary and valued columns may be filled separately."""

    node: int
    label: str
    bc_raw: Optional[float] = None
    bc_normalized: Optional[float] = None
    bc_valued_raw: Optional[float] = None
    bc_valued_normalized: Optional[float] = None


class RankedRow(BaseModel):
    rank: int
    node: int
    label: str
    value: Optional[float]


class DiversityRecord(BaseModel):
    """Rao-Stirling delta and true diversity d2 of one node in both directions."""

    node: int
    label: str
    delta_cited: Optional[float] = None
    d2_cited: Optional[float] = None
    delta_citing: Optional[float] = None
    d2_citing: Optional[float] = None
    sum_cited: float = 0.0
    sum_citing: float = 0.0
    flags_cited: set[DiversityFlag] = Field(default_factory=set)
    flags_citing: set[DiversityFlag] = Field(default_factory=set)

    @property
    def flags(self) -> set[DiversityFlag]:
        return self.flags_cited | self.flags_citing


class GroupDiversity(BaseModel):
    group: int
    within_delta: float
    within_d2: float
    node_count: int
    cell_count: int


class DecompositionReport(BaseModel):
    """Within/between-group split of summed diversity for one direction."""

    direction: Direction
    mode: DecompositionMode
    convention: ProfileConvention
    total_delta: float
    total_d2: float
    per_group: list[GroupDiversity]
    between_delta: Optional[float] = None
    between_share: Optional[float] = None
    within_cell_count: int
    total_cell_count: int

    @property
    def within_delta(self) -> float:
        return sum(group.within_delta for group in self.per_group)

    @property
    def within_cell_share(self) -> float:
        if self.total_cell_count == 0:
            return 0.0
        return self.within_cell_count / self.total_cell_count


class GroupAggregate(BaseModel):
    """Sum, mean and standard error of one field over a partition group."""

    group: int
    count: int
    sum: Optional[float] = None
    mean: Optional[float] = None
    standard_error: Optional[float] = None
    flagged: bool = False


class CorrelationMatrix(BaseModel):
    variables: list[str]
    n: int
    pearson: list[list[Optional[float]]]
    spearman: list[list[Optional[float]]]
    pearson_p: list[list[Optional[float]]]
    spearman_p: list[list[Optional[float]]]

    @staticmethod
    def mark(p_value: Optional[float]) -> str:
        """Significance stars at the 0.05 and 0.01 levels (two-tailed)."""
        if p_value is None:
            return ""
        if p_value < 0.01:
            return "**"
        if p_value < 0.05:
            return "*"
        return ""


class PairComparison(BaseModel):
    group_a: str
    group_b: str
    mean_difference: float
    statistic: float
    p_value: float
    significant: bool


class AnovaResult(BaseModel):
    groups: list[str]
    means: list[float]
    k: int
    n: int
    f_statistic: float
    df_between: int
    df_within: int
    p_value: float
    alpha: float
    posthoc: str
    critical_value: Optional[float] = None
    pairs: list[PairComparison] = Field(default_factory=list)
    homogeneous_subsets: list[list[str]] = Field(default_factory=list)
    degenerate: bool = False


class RunManifest(BaseModel):
    """Everything needed to regenerate a set of output files."""

    tool_version: str
    command: str
    inputs: dict[str, str] = Field(default_factory=dict)
    conventions: dict[str, object] = Field(default_factory=dict)
    outputs: list[str] = Field(default_factory=list)
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
