"""Console output, logging setup and run manifests."""

import hashlib
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import __version__
from .models import (
    AnovaResult,
    Components,
    CorrelationMatrix,
    DecompositionReport,
    GroupAggregate,
    NetworkSummary,
    RankedRow,
    RunManifest,
)

console = Console()
err_console = Console(stderr=True)

MANIFEST_SUFFIX = ".manifest.json"


def setup_logging(verbosity: int = 0) -> None:
    """Route the package logger through rich on stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logger = logging.getLogger("raonet")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=err_console, show_time=False, show_path=False))
    logger.setLevel(level)
    logger.propagate = False


def format_number(value: Optional[float], digits: int = 4) -> str:
    """Compact display value; blank for missing."""
    if value is None:
        return ""
    if float(value).is_integer() and abs(value) < 1e15:
        return f"{int(value):,}"
    return f"{value:.{digits}g}"


def print_summary(summary: NetworkSummary, title: str = "Network characteristics") -> None:
    """Print descriptive statistics one per row."""
    table = Table(title=title)
    table.add_column("Statistic", style="bold")
    table.add_column("Value", justify="right")

    distance_note = "" if summary.distances_defined else " (no reachable pairs)"
    rows = [
        ("Nodes", f"{summary.nodes:,}"),
        ("Links", f"{summary.links:,}"),
        ("Loops", f"{summary.loops:,}"),
        ("Total citations", format_number(summary.total_citations)),
        ("Density", f"{summary.density:.3f}"),
        ("Average total degree", f"{summary.average_total_degree:.3f}"),
        ("Cluster coefficient", f"{summary.clustering_coefficient:.3f}"),
        ("Average distance", f"{summary.average_distance:.3f}{distance_note}"),
        ("Maximum distance", f"{summary.maximum_distance}{distance_note}"),
    ]
    for name, value in rows:
        table.add_row(name, value)
    console.print(table)


def print_components(components: Components, limit: int = 20) -> None:
    table = Table(title=f"Weak components ({len(components.sizes)})")
    table.add_column("#", style="dim")
    table.add_column("Size", justify="right")
    for index, size in enumerate(components.sizes[:limit]):
        table.add_row(str(index), f"{size:,}")
    console.print(table)
    if len(components.sizes) > limit:
        console.print(f"[dim]... and {len(components.sizes) - limit} more[/]")


def print_rank_table(rows: Sequence[RankedRow], title: str, limit: int = 20) -> None:
    """Print the top ``limit`` ranked nodes."""
    table = Table(title=title)
    table.add_column("Rank", style="dim", justify="right")
    table.add_column("Label")
    table.add_column("Value", justify="right")
    for row in rows[:limit]:
        table.add_row(str(row.rank), row.label[:50], format_number(row.value))
    console.print(table)


def print_group_aggregates(aggregates: Sequence[GroupAggregate], field_name: str) -> None:
    table = Table(title=f"{field_name} by group")
    table.add_column("Group", style="bold")
    table.add_column("N", justify="right")
    table.add_column("Sum", justify="right")
    table.add_column("Mean", justify="right")
    table.add_column("SE (n-1)", justify="right")
    for aggregate in aggregates:
        table.add_row(
            str(aggregate.group),
            str(aggregate.count),
            format_number(aggregate.sum),
            format_number(aggregate.mean),
            format_number(aggregate.standard_error) or "[yellow]n/a[/]",
        )
    console.print(table)


def print_anova(result: AnovaResult) -> None:
    """Print the ANOVA line, the pairwise table and the homogeneous subsets."""
    console.print(
        f"[bold]ANOVA[/] k={result.k} n={result.n} "
        f"F({result.df_between}, {result.df_within}) = {result.f_statistic:.4f}, "
        f"p = {result.p_value:.4g}"
    )
    if result.degenerate:
        console.print("[yellow]Zero within-group variance[/]")

    statistic = "q" if result.posthoc == "tukey" else "t"
    title = f"{result.posthoc.title()} comparisons (alpha={result.alpha})"
    if result.critical_value is not None:
        title += f", q crit={result.critical_value:.3f}"
    table = Table(title=title)
    table.add_column("A")
    table.add_column("B")
    table.add_column("Mean diff", justify="right")
    table.add_column(statistic, justify="right")
    table.add_column("p", justify="right")
    table.add_column("Sig.")
    for pair in result.pairs:
        table.add_row(
            pair.group_a,
            pair.group_b,
            format_number(pair.mean_difference),
            format_number(pair.statistic),
            f"{pair.p_value:.4g}",
            "[red]*[/]" if pair.significant else "",
        )
    console.print(table)
    for index, subset in enumerate(result.homogeneous_subsets, 1):
        console.print(f"Subset {index}: {', '.join(subset)}")


def print_decomposition(report: DecompositionReport) -> None:
    table = Table(
        title=f"{report.direction.value} diversity by group ({report.mode.value}, {report.convention.value})"
    )
    table.add_column("Group", style="bold")
    table.add_column("Nodes", justify="right")
    table.add_column("Cells", justify="right")
    table.add_column("Within delta", justify="right")
    table.add_column("Within d2", justify="right")
    for group in report.per_group:
        table.add_row(
            str(group.group),
            str(group.node_count),
            f"{group.cell_count:,}",
            format_number(group.within_delta),
            format_number(group.within_d2),
        )
    if report.between_delta is not None:
        table.add_row("between", "", "", format_number(report.between_delta), "")
    table.add_row("total", str(sum(g.node_count for g in report.per_group)),
                  f"{report.total_cell_count:,}",
                  format_number(report.total_delta), format_number(report.total_d2))
    console.print(table)
    console.print(
        f"Within-group cells: {report.within_cell_count:,} of {report.total_cell_count:,} "
        f"({report.within_cell_share:.1%})"
    )
    if report.between_share is not None:
        console.print(f"Between-group share of delta: {report.between_share:.1%}")


def print_correlations(matrix: CorrelationMatrix) -> None:
    """Pearson above the diagonal, Spearman below."""
    table = Table(title=f"Pearson (upper) / Spearman (lower), n={matrix.n}")
    table.add_column("")
    for name in matrix.variables:
        table.add_column(name, justify="right")
    for a, name in enumerate(matrix.variables):
        cells = []
        for b in range(len(matrix.variables)):
            if a == b:
                cells.append("1")
                continue
            source, p_values = (matrix.pearson, matrix.pearson_p) if a < b else (matrix.spearman, matrix.spearman_p)
            value = source[a][b]
            cells.append("" if value is None else f"{value:.3f}{CorrelationMatrix.mark(p_values[a][b])}")
        table.add_row(name, *cells)
    console.print(table)


def file_digest(path: Path) -> str:
    """SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def manifest_path(output: Path) -> Path:
    return output.with_name(output.name + MANIFEST_SUFFIX)


def write_manifest(
    primary: Path,
    command: str,
    inputs: Iterable[Path],
    conventions: dict[str, object],
    outputs: Iterable[Path],
) -> Path:
    """Write ``<primary>.manifest.json`` describing one run.

    Returns:
        Path of the manifest file
    """
    manifest = RunManifest(
        tool_version=__version__,
        command=command,
        inputs={str(path): file_digest(path) for path in inputs},
        conventions=conventions,
        outputs=[str(path) for path in outputs],
    )
    target = manifest_path(primary)
    target.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return target
