"""Multi-level runs: a chain of nested subsets, indicators per level, one joined table."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import pandas as pd

from .config import LevelConfig, PipelineConfig
from .graphcore import (
    CitationNetwork,
    build,
    drop_loops,
    largest_component,
    nodes_by_group,
    nodes_by_label,
    restrict,
    self_citations,
)
from .indicators import centrality_table, diversity_all, rank_table
from .models import CentralityRecord, Direction, DiversityRecord
from .netio import read_clu, read_labels, read_net, save_report
from .netio.reports import (
    CENTRALITY_SCHEMA,
    CORRELATION_SCHEMA,
    DIVERSITY_SCHEMA,
    correlation_rows,
)
from .stats import correlation_matrix, percentile_ranks
from .utils import write_manifest

logger = logging.getLogger(__name__)

COMBINED_NAME = "levels.csv"


@dataclass
class LevelOutput:
    name: str
    net: CitationNetwork
    diversity: list[DiversityRecord]
    centrality: Optional[list[CentralityRecord]] = None
    files: list[Path] = field(default_factory=list)


def directions_for(value: str) -> list[Direction]:
    if value == "both":
        return [Direction.CITED, Direction.CITING]
    return [Direction(value)]


def merged_table(
    diversity: Sequence[DiversityRecord],
    centrality: Optional[Sequence[CentralityRecord]] = None,
) -> pd.DataFrame:
    """Per-node table joining diversity and betweenness columns on node id."""
    frame = pd.DataFrame([record.model_dump(exclude={"flags_cited", "flags_citing"}) for record in diversity])
    if centrality:
        bc = pd.DataFrame([record.model_dump() for record in centrality]).drop(columns="label")
        frame = frame.merge(bc, on="node", how="left", validate="one_to_one")
    return frame


def level_columns(
    level: LevelOutput,
    directions: Sequence[Direction],
) -> pd.DataFrame:
    """Diversity, rank, percentile and totals of one level keyed by original vertex id."""
    records = level.diversity
    prefix = level.name
    columns: dict[str, list] = {
        "node": [level.net.origin[record.node - 1] + 1 for record in records],
    }
    for direction in directions:
        delta_field = f"delta_{direction.value}"
        d2_field = f"d2_{direction.value}"
        ranks = {row.node: row.rank for row in rank_table(records, delta_field)}
        d2_values = [getattr(record, d2_field) for record in records]
        columns[f"{prefix}_delta_{direction.value}"] = [getattr(record, delta_field) for record in records]
        columns[f"{prefix}_d2_{direction.value}"] = d2_values
        columns[f"{prefix}_rank_{direction.value}"] = [float(ranks[record.node]) for record in records]
        columns[f"{prefix}_pct_{direction.value}"] = percentile_ranks(d2_values)
    columns[f"{prefix}_sum_cited"] = [record.sum_cited for record in records]
    columns[f"{prefix}_sum_citing"] = [record.sum_citing for record in records]
    columns[f"{prefix}_self"] = [float(value) for value in self_citations(level.net)]
    return pd.DataFrame(columns).set_index("node")


def combined_table(root: CitationNetwork, levels: Sequence[LevelOutput], directions: Sequence[Direction]) -> pd.DataFrame:
    """Outer join of every level on the root network's nodes; absent nodes stay empty."""
    frame = pd.DataFrame({
        "node": [origin + 1 for origin in root.origin],
        "label": list(root.labels),
    }).set_index("node")
    for level in levels:
        frame = frame.join(level_columns(level, directions), how="left")
    return frame.reset_index()


def _select(current: CitationNetwork, level: LevelConfig, group_of: Optional[list[int]]) -> list[int]:
    if level.groups is not None:
        return nodes_by_group([group_of[origin] for origin in current.origin], level.groups)
    labels = level.labels if level.labels is not None else read_labels(level.labels_file)
    return nodes_by_label(current, labels)


def _run_level(name: str, net: CitationNetwork, config: PipelineConfig, workers: int) -> LevelOutput:
    conventions = config.conventions
    directions = directions_for(conventions.direction)
    analysed = drop_loops(net) if conventions.drop_loops else net
    output = LevelOutput(
        name=name,
        net=net,
        diversity=diversity_all(
            analysed,
            directions[0] if len(directions) == 1 else None,
            conventions.convention,
            workers,
        ),
    )
    folder = config.output_dir / name
    folder.mkdir(parents=True, exist_ok=True)

    path = folder / "rao1.csv"
    save_report(output.diversity, DIVERSITY_SCHEMA, path)
    output.files.append(path)

    if "bc" in config.reports:
        output.centrality = centrality_table(
            net,
            valued=conventions.valued,
            length_mode=conventions.length_mode,
            symmetrize_first=conventions.symmetrize,
            workers=workers,
        )
        path = folder / "bc.csv"
        save_report(output.centrality, CENTRALITY_SCHEMA, path)
        output.files.append(path)

    if "correlate" in config.reports and net.n < 3:
        logger.warning("Level '%s' has %d nodes; correlations skipped", name, net.n)
    elif "correlate" in config.reports:
        table = merged_table(output.diversity, output.centrality)
        matrix = correlation_matrix(table, config.correlate_vars)
        path = folder / "corr.csv"
        save_report(correlation_rows(matrix), CORRELATION_SCHEMA, path)
        output.files.append(path)

    logger.info("Level '%s': %d nodes, %d files", name, net.n, len(output.files))
    return output


def run_pipeline(config: PipelineConfig, workers: int, config_path: Optional[Path] = None) -> list[Path]:
    """Run every level of ``config`` and write the combined table plus its manifest.

    Returns:
        Every file written, manifest last
    """
    raw = read_net(config.input)
    root = build(raw)
    group_of = read_clu(config.partition, raw.vertex_count).group_of if config.partition else None
    if config.largest_component:
        root = largest_component(root)

    inputs = [path for path in (config_path, config.input, config.partition) if path is not None]
    inputs += [level.labels_file for level in config.levels if level.labels_file is not None]

    # Subsets resolve before any output is written.
    chain = [(config.root_name, root)]
    for level in config.levels:
        current = restrict(chain[-1][1], _select(chain[-1][1], level, group_of))
        chain.append((level.name, current))

    config.output_dir.mkdir(parents=True, exist_ok=True)
    levels = [_run_level(name, net, config, workers) for name, net in chain]

    directions = directions_for(config.conventions.direction)
    combined = combined_table(root, levels, directions)
    combined_path = config.output_dir / COMBINED_NAME
    save_report(combined.to_dict("records"), list(combined.columns), combined_path)

    outputs = [path for level in levels for path in level.files] + [combined_path]
    conventions = config.conventions.model_dump(mode="json")
    conventions.update({
        "largest_component": config.largest_component,
        "levels": [name for name, _ in chain],
        "bc_normalization": "100/((n-1)(n-2))",
        "percentile": "midpoint",
        "workers": workers,
    })
    manifest = write_manifest(combined_path, "pipeline", inputs, conventions, outputs)
    return outputs + [manifest]
