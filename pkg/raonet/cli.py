"""CLI entry point for raonet."""

import argparse
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Optional

from rich.text import Text

from . import __version__
from .config import default_workers, load_pipeline_config
from .errors import DataError, RaonetError, UsageError
from .graphcore import (
    CitationNetwork,
    build,
    drop_loops,
    largest_component,
    neighborhood,
    nodes_by_group,
    nodes_by_label,
    restrict,
    summary,
    to_raw,
    weak_components,
)
from .indicators import (
    centrality_table,
    decompose,
    decomposition_samples,
    diversity_all,
    emit_cell_values,
    group_aggregate,
    rank_table,
)
from .indicators.diversity import CELL_WARNING_ROWS
from .models import (
    DecompositionMode,
    Direction,
    LengthMode,
    NeighborhoodMode,
    PartitionFile,
    ProfileConvention,
)
from .netio import read_clu, read_labels, read_net, read_table, save_clu, save_net, save_report, save_vector
from .netio.reports import (
    CENTRALITY_SCHEMA,
    CORRELATION_SCHEMA,
    DECOMPOSITION_SCHEMA,
    DIVERSITY_SCHEMA,
    PAIR_SCHEMA,
    correlation_rows,
    decomposition_rows,
    numeric_column,
)
from .pipeline import directions_for, run_pipeline
from .stats import anova_tukey, correlation_matrix
from .utils import (
    console,
    err_console,
    print_anova,
    print_components,
    print_correlations,
    print_decomposition,
    print_group_aggregates,
    print_rank_table,
    print_summary,
    setup_logging,
    write_manifest,
)

logger = logging.getLogger(__name__)

CONVENTIONS = {
    "same": ProfileConvention.SAME_DIRECTION,
    "orthogonal": ProfileConvention.ORTHOGONAL,
}
# Short names accepted by correlate for the merged-table columns.
VARIABLE_ALIASES = {
    "bc": "bc_normalized",
    "valued_bc": "bc_valued_normalized",
}
BC_NORMALIZATION = "100/((n-1)(n-2))"


class ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors surface as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message, usage=self.format_usage())


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{value}'") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{value}'")
    return number


def _alpha(value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number in (0, 1), got '{value}'") from None
    if not 0 < number < 1:
        raise argparse.ArgumentTypeError(f"expected a number in (0, 1), got '{value}'")
    return number


def _common_options() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--workers",
        type=_positive_int,
        default=None,
        help="Worker threads (default: $RAONET_WORKERS or the CPU count)",
    )
    common.add_argument(
        "--verbose", "-v",
        action="count",
        default=0,
        help="Log progress (-v) or debug detail (-vv) to stderr",
    )
    return common


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", "-i", type=Path, required=True, help="Pajek .net file")


def _add_subset(parser: argparse.ArgumentParser, partition_help: str = "Pajek .clu partition") -> None:
    parser.add_argument(
        "--largest-component",
        action="store_true",
        help="Keep only the largest weak component",
    )
    parser.add_argument("--labels", nargs="+", metavar="LABEL", help="Restrict to these vertex labels")
    parser.add_argument("--labels-file", type=Path, help="Restrict to the labels listed in a file")
    parser.add_argument("--partition", type=Path, help=partition_help)
    parser.add_argument(
        "--groups",
        nargs="+",
        type=int,
        metavar="GROUP",
        help="Restrict to these partition groups (needs --partition)",
    )


def _add_convention(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--convention",
        choices=sorted(CONVENTIONS),
        default="same",
        help="Profiles behind the distances: same direction or orthogonal (default: same)",
    )
    parser.add_argument(
        "--drop-loops",
        action="store_true",
        help="Exclude self-citations from the probability vectors",
    )


def create_parser() -> ArgumentParser:
    """Create CLI argument parser."""
    parser = ArgumentParser(
        prog="raonet",
        description="Betweenness and Rao-Stirling diversity indicators for citation networks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_options()
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", help="Available commands")

    # summary
    summary_parser = subparsers.add_parser(
        "summary", parents=[common], help="Descriptive statistics of a network"
    )
    _add_input(summary_parser)
    _add_subset(summary_parser)

    # components
    components_parser = subparsers.add_parser(
        "components", parents=[common], help="Weak components, largest first"
    )
    _add_input(components_parser)
    components_parser.add_argument("--output", "-o", type=Path, help="Write component ids as a .clu file")

    # restrict
    restrict_parser = subparsers.add_parser(
        "restrict", parents=[common], help="Write the subnetwork induced by a node subset"
    )
    _add_input(restrict_parser)
    _add_subset(restrict_parser)
    restrict_parser.add_argument("--output", "-o", type=Path, required=True, help="Output .net file")

    # bc
    bc_parser = subparsers.add_parser(
        "bc", parents=[common], help="Binary and valued betweenness centrality"
    )
    _add_input(bc_parser)
    _add_subset(bc_parser)
    bc_parser.add_argument("--valued", action="store_true", help="Add valued betweenness columns")
    bc_parser.add_argument(
        "--length-mode",
        choices=[mode.value.replace("_", "-") for mode in LengthMode],
        default="inverse",
        help="Arc length from citation weight for valued geodesics (default: inverse)",
    )
    bc_parser.add_argument(
        "--symmetrize",
        action="store_true",
        help="Treat w(i,j)+w(j,i) as an undirected tie first",
    )
    bc_parser.add_argument("--output", "-o", type=Path, required=True, help="Output CSV")
    bc_parser.add_argument("--top", type=int, default=20, help="Rows in the ranking shown (default: 20)")

    # diversity
    diversity_parser = subparsers.add_parser(
        "diversity", parents=[common], help="Rao-Stirling and true diversity per node"
    )
    _add_input(diversity_parser)
    _add_subset(diversity_parser, partition_help="Pajek .clu partition; also prints per-group aggregates")
    diversity_parser.add_argument(
        "--direction",
        choices=["cited", "citing", "both"],
        default="both",
        help="Cited (diffusion) or citing (integration) vectors (default: both)",
    )
    _add_convention(diversity_parser)
    diversity_parser.add_argument(
        "--output", "-o", type=Path, default=Path("rao1.csv"), help="Output CSV (default: rao1.csv)"
    )
    diversity_parser.add_argument(
        "--cells",
        type=Path,
        nargs="?",
        const=Path("rao2.csv"),
        help="Also write per-pair cell values (default name: rao2.csv)",
    )
    diversity_parser.add_argument(
        "--cell-limit",
        type=_positive_int,
        default=CELL_WARNING_ROWS,
        help=f"Warn when a cell file would exceed this many rows (default: {CELL_WARNING_ROWS})",
    )
    diversity_parser.add_argument(
        "--legacy-names",
        action="store_true",
        help="Name outputs rao1.csv and rao2.csv in the output folder",
    )
    diversity_parser.add_argument("--top", type=int, default=20, help="Rows in the ranking shown (default: 20)")

    # cells
    cells_parser = subparsers.add_parser(
        "cells", parents=[common], help="Per-pair cell values p_i p_j d_ij"
    )
    _add_input(cells_parser)
    _add_subset(cells_parser)
    cells_parser.add_argument("--direction", choices=["cited", "citing"], required=True)
    _add_convention(cells_parser)
    cells_parser.add_argument("--focal", nargs="+", metavar="LABEL", help="Only these focal nodes")
    cells_parser.add_argument("--cell-limit", type=_positive_int, default=CELL_WARNING_ROWS)
    cells_parser.add_argument("--output", "-o", type=Path, default=Path("rao2.csv"))

    # decompose
    decompose_parser = subparsers.add_parser(
        "decompose", parents=[common], help="Within- and between-group diversity"
    )
    _add_input(decompose_parser)
    _add_subset(decompose_parser, partition_help="Pajek .clu partition defining the groups")
    decompose_parser.add_argument("--direction", choices=["cited", "citing", "both"], default="both")
    decompose_parser.add_argument(
        "--mode",
        choices=[mode.value.replace("_", "-") for mode in DecompositionMode],
        default="grand-matrix",
        help="Recompute inside each group (local) or split the whole matrix (default: grand-matrix)",
    )
    _add_convention(decompose_parser)
    decompose_parser.add_argument("--output", "-o", type=Path, help="Output CSV")
    decompose_parser.add_argument(
        "--anova",
        action="store_true",
        help="Test per-focal within and between contributions across groups",
    )
    decompose_parser.add_argument("--alpha", type=_alpha, default=0.05)
    decompose_parser.add_argument("--posthoc", choices=["tukey", "bonferroni"], default="tukey")

    # neighborhood
    neighborhood_parser = subparsers.add_parser(
        "neighborhood", parents=[common], help="Integration or diffusion network of one node"
    )
    _add_input(neighborhood_parser)
    neighborhood_parser.add_argument("--focal", required=True, help="Label of the focal node")
    neighborhood_parser.add_argument(
        "--mode",
        choices=[mode.value for mode in NeighborhoodMode],
        required=True,
        help="integration: cited journals; diffusion: citing journals",
    )
    neighborhood_parser.add_argument("--include-focal", action="store_true")
    neighborhood_parser.add_argument("--output", "-o", type=Path, required=True, help="Output .net file")

    # correlate
    correlate_parser = subparsers.add_parser(
        "correlate", parents=[common], help="Pearson and Spearman correlations between columns"
    )
    correlate_parser.add_argument("--input", "-i", type=Path, required=True, help="CSV table")
    correlate_parser.add_argument(
        "--vars",
        required=True,
        help="Comma-separated column names (bc and valued_bc are accepted as short names)",
    )
    correlate_parser.add_argument("--output", "-o", type=Path, help="Output CSV")

    # anova
    anova_parser = subparsers.add_parser(
        "anova", parents=[common], help="One-way ANOVA with post-hoc comparisons"
    )
    anova_parser.add_argument("--input", "-i", type=Path, required=True, help="CSV table with a node column")
    anova_parser.add_argument("--partition", type=Path, required=True, help="Pajek .clu partition")
    anova_parser.add_argument("--field", required=True, help="Column to compare across groups")
    anova_parser.add_argument("--groups", nargs="+", type=int, metavar="GROUP", help="Only these groups")
    anova_parser.add_argument("--alpha", type=_alpha, default=0.05, help="Significance level (default: 0.05)")
    anova_parser.add_argument("--posthoc", choices=["tukey", "bonferroni"], default="tukey")
    anova_parser.add_argument("--output", "-o", type=Path, help="Write pairwise comparisons as CSV")

    # export-vec
    vec_parser = subparsers.add_parser(
        "export-vec", parents=[common], help="Write one CSV column as a Pajek .vec file"
    )
    vec_parser.add_argument("--input", "-i", type=Path, required=True, help="CSV table")
    vec_parser.add_argument("--field", required=True, help="Column to export")
    vec_parser.add_argument("--missing", type=float, help="Value written for empty cells")
    vec_parser.add_argument("--output", "-o", type=Path, required=True, help="Output .vec file")

    # pipeline
    pipeline_parser = subparsers.add_parser(
        "pipeline", parents=[common], help="Run a multi-level configuration file"
    )
    pipeline_parser.add_argument("config", type=Path, help="TOML configuration")

    return parser


def _workers(args: argparse.Namespace) -> int:
    return args.workers or default_workers()


def _conventions(args: argparse.Namespace, **extra: object) -> dict[str, object]:
    """Every flag of the run except paths and verbosity, as plain JSON values."""
    skip = {"command", "verbose", "input", "output", "config", "top"}
    conventions: dict[str, object] = {}
    for name, value in sorted(vars(args).items()):
        if name in skip:
            continue
        if isinstance(value, Path):
            value = str(value)
        elif isinstance(value, Enum):
            value = value.value
        elif isinstance(value, list):
            value = [str(item) if isinstance(item, Path) else item for item in value]
        conventions[name] = value
    conventions["workers"] = _workers(args)
    conventions.update(extra)
    return conventions


def _inputs(args: argparse.Namespace) -> list[Path]:
    names = ("input", "partition", "labels_file", "config")
    return [getattr(args, name) for name in names if getattr(args, name, None) is not None]


def _load(args: argparse.Namespace) -> tuple[CitationNetwork, Optional[list[int]]]:
    """Read the input network and apply the subset and loop flags.

    Returns:
        The network and, when a partition was given, its groups aligned to the network's nodes
    """
    raw = read_net(args.input)
    net = build(raw)
    group_of = None
    if getattr(args, "partition", None) is not None:
        group_of = read_clu(args.partition, raw.vertex_count).group_of

    if getattr(args, "largest_component", False):
        net = largest_component(net)
    labels = list(getattr(args, "labels", None) or [])
    if getattr(args, "labels_file", None) is not None:
        labels += read_labels(args.labels_file)
    if labels:
        net = restrict(net, nodes_by_label(net, labels))
    groups = getattr(args, "groups", None)
    if groups:
        if group_of is None:
            raise UsageError("--groups needs --partition")
        net = restrict(net, nodes_by_group([group_of[origin] for origin in net.origin], groups))
    if group_of is not None:
        group_of = [group_of[origin] for origin in net.origin]
    if getattr(args, "drop_loops", False):
        net = drop_loops(net)
    return net, group_of


def _cell_paths(path: Path, directions: list[Direction]) -> dict[Direction, Path]:
    if len(directions) == 1:
        return {directions[0]: path}
    return {
        direction: path.with_name(f"{path.stem}_{direction.value}{path.suffix}")
        for direction in directions
    }


def _write_cells(
    net: CitationNetwork,
    paths: dict[Direction, Path],
    convention: ProfileConvention,
    nodes: Optional[list[int]],
    warn_rows: int,
) -> None:
    for direction, path in paths.items():
        with console.status(f"Writing {direction.value} cell values..."):
            with open(path, "w", encoding="utf-8", newline="") as sink:
                rows = emit_cell_values(net, direction, convention, sink, nodes, warn_rows)
        console.print(f"  {direction.value} cells: {rows:,} rows -> {path}")


def cmd_summary(args: argparse.Namespace) -> int:
    """Execute summary command."""
    net, _ = _load(args)
    with console.status("Computing network statistics..."):
        stats = summary(net)
    print_summary(stats, title=f"Network characteristics: {args.input.name}")
    return 0


def cmd_components(args: argparse.Namespace) -> int:
    """Execute components command."""
    net, _ = _load(args)
    components = weak_components(net)
    print_components(components)
    if args.output:
        partition = PartitionFile(
            vertex_count=net.n,
            group_of=[component + 1 for component in components.membership],
        )
        save_clu(partition, args.output)
        write_manifest(args.output, "components", _inputs(args), _conventions(args), [args.output])
    return 0


def cmd_restrict(args: argparse.Namespace) -> int:
    """Execute restrict command."""
    if not (args.largest_component or args.labels or args.labels_file or args.groups):
        raise UsageError("restrict needs --largest-component, --labels, --labels-file or --groups")
    net, _ = _load(args)
    save_net(to_raw(net), args.output)
    console.print(f"Wrote {net.n:,} nodes and {net.links:,} links to {args.output}")
    write_manifest(args.output, "restrict", _inputs(args), _conventions(args), [args.output])
    return 0


def cmd_bc(args: argparse.Namespace) -> int:
    """Execute bc command."""
    net, _ = _load(args)
    length_mode = LengthMode(args.length_mode.replace("-", "_"))
    with console.status(f"Computing betweenness over {net.n:,} nodes..."):
        records = centrality_table(
            net,
            valued=args.valued,
            length_mode=length_mode,
            symmetrize_first=args.symmetrize,
            workers=_workers(args),
        )
    save_report(records, CENTRALITY_SCHEMA, args.output)

    print_rank_table(rank_table(records, "bc_normalized"), "Betweenness (% of pairs)", args.top)
    if args.valued:
        print_rank_table(rank_table(records, "bc_valued_normalized"), "Valued betweenness (%)", args.top)
    conventions = _conventions(args, normalization=BC_NORMALIZATION, loops="ignored")
    write_manifest(args.output, "bc", _inputs(args), conventions, [args.output])
    return 0


def cmd_diversity(args: argparse.Namespace) -> int:
    """Execute diversity command."""
    net, group_of = _load(args)
    directions = directions_for(args.direction)
    convention = CONVENTIONS[args.convention]
    output = args.output
    cells = args.cells
    if args.legacy_names:
        output = output.parent / "rao1.csv"
        cells = output.parent / "rao2.csv" if cells else None

    with console.status(f"Computing diversity over {net.n:,} nodes..."):
        records = diversity_all(
            net,
            directions[0] if len(directions) == 1 else None,
            convention,
            _workers(args),
        )
    save_report(records, DIVERSITY_SCHEMA, output)
    console.print(f"Wrote {len(records):,} records to {output}")
    outputs = [output]

    if cells:
        paths = _cell_paths(cells, directions)
        _write_cells(net, paths, convention, None, args.cell_limit)
        outputs.extend(paths.values())

    for direction in directions:
        print_rank_table(
            rank_table(records, f"delta_{direction.value}"),
            f"Rao-Stirling diversity ({direction.value})",
            args.top,
        )
        if group_of is not None:
            field = f"d2_{direction.value}"
            print_group_aggregates(group_aggregate(records, group_of, field), field)

    flagged = sum(1 for record in records if record.flags)
    if flagged:
        logger.warning("%d nodes carry diversity flags", flagged)
    conventions = _conventions(args, convention=convention.value, loops="dropped" if args.drop_loops else "kept")
    write_manifest(output, "diversity", _inputs(args), conventions, outputs)
    return 0


def cmd_cells(args: argparse.Namespace) -> int:
    """Execute cells command."""
    net, _ = _load(args)
    convention = CONVENTIONS[args.convention]
    nodes = nodes_by_label(net, args.focal) if args.focal else None
    _write_cells(net, {Direction(args.direction): args.output}, convention, nodes, args.cell_limit)
    conventions = _conventions(args, convention=convention.value, loops="dropped" if args.drop_loops else "kept")
    write_manifest(args.output, "cells", _inputs(args), conventions, [args.output])
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    """Execute decompose command."""
    if args.partition is None:
        raise UsageError("decompose needs --partition")
    net, group_of = _load(args)
    convention = CONVENTIONS[args.convention]
    mode = DecompositionMode(args.mode.replace("-", "_"))
    rows = []
    for direction in directions_for(args.direction):
        with console.status(f"Decomposing {direction.value} diversity..."):
            report = decompose(net, group_of, direction, convention, mode, _workers(args))
        print_decomposition(report)
        rows.extend(decomposition_rows(report))

        if args.anova:
            with console.status("Collecting per-node contributions..."):
                samples = decomposition_samples(net, group_of, direction, convention, _workers(args))
            result = anova_tukey(
                list(samples.values()),
                alpha=args.alpha,
                names=list(samples),
                posthoc=args.posthoc,
            )
            print_anova(result)

    if args.output:
        save_report(rows, DECOMPOSITION_SCHEMA, args.output)
        conventions = _conventions(args, convention=convention.value, mode=mode.value)
        write_manifest(args.output, "decompose", _inputs(args), conventions, [args.output])
    return 0


def cmd_neighborhood(args: argparse.Namespace) -> int:
    """Execute neighborhood command."""
    net, _ = _load(args)
    focal = nodes_by_label(net, [args.focal])[0]
    result = neighborhood(net, focal, NeighborhoodMode(args.mode), args.include_focal)
    if result.subnetwork is None:
        console.print(f"[yellow]'{args.focal}' has no {args.mode} neighbors; nothing written.[/]")
        return 0
    save_net(to_raw(result.subnetwork), args.output)
    console.print(
        f"{args.mode.title()} network of '{args.focal}': "
        f"{result.subnetwork.n:,} nodes, {result.subnetwork.links:,} links -> {args.output}"
    )
    write_manifest(args.output, "neighborhood", _inputs(args), _conventions(args), [args.output])
    return 0


def cmd_correlate(args: argparse.Namespace) -> int:
    """Execute correlate command."""
    variables = [VARIABLE_ALIASES.get(name.strip(), name.strip()) for name in args.vars.split(",") if name.strip()]
    if len(variables) < 2:
        raise UsageError("--vars needs at least two columns")
    table = read_table(args.input)
    matrix = correlation_matrix(table, variables)
    print_correlations(matrix)
    if args.output:
        save_report(correlation_rows(matrix), CORRELATION_SCHEMA, args.output)
        conventions = _conventions(args, p_values="t approximation, two-tailed", deletion="listwise")
        write_manifest(args.output, "correlate", _inputs(args), conventions, [args.output])
    return 0


def cmd_anova(args: argparse.Namespace) -> int:
    """Execute anova command."""
    table = read_table(args.input)
    nodes = numeric_column(table, "node", args.input)
    values = numeric_column(table, args.field, args.input)
    partition = read_clu(args.partition, len(table))
    samples: dict[int, list[float]] = {}
    for node, value in zip(nodes, values):
        if math.isnan(value):
            continue
        if not 1 <= node <= partition.vertex_count:
            raise DataError(f"node {node:g} is not covered by the partition")
        group = partition.group_of[int(node) - 1]
        if args.groups and group not in args.groups:
            continue
        samples.setdefault(group, []).append(float(value))

    groups = sorted(samples)
    result = anova_tukey(
        [samples[group] for group in groups],
        alpha=args.alpha,
        names=[str(group) for group in groups],
        posthoc=args.posthoc,
    )
    print_anova(result)
    if args.output:
        save_report(result.pairs, PAIR_SCHEMA, args.output)
        conventions = _conventions(args, standard_error="Tukey-Kramer" if args.posthoc == "tukey" else "pooled")
        write_manifest(args.output, "anova", _inputs(args), conventions, [args.output])
    return 0


def cmd_export_vec(args: argparse.Namespace) -> int:
    """Execute export-vec command."""
    table = read_table(args.input)
    column = numeric_column(table, args.field, args.input)
    missing = int(column.isna().sum())
    if missing:
        if args.missing is None:
            raise DataError(f"field '{args.field}' has {missing} empty cells; pass --missing")
        column = column.fillna(args.missing)
    labels = table["label"].tolist() if "label" in table.columns else [str(i + 1) for i in range(len(table))]
    save_vector(column.tolist(), labels, args.output)
    write_manifest(args.output, "export-vec", _inputs(args), _conventions(args), [args.output])
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    """Execute pipeline command."""
    config = load_pipeline_config(args.config)
    workers = args.workers or config.workers or default_workers()
    with console.status("Running pipeline..."):
        outputs = run_pipeline(config, workers, args.config)
    console.print(f"[bold]Pipeline wrote {len(outputs)} files[/]")
    for path in outputs:
        console.print(f"  {path}")
    return 0


def _report_error(error: object, exit_code: int) -> int:
    err_console.print(Text(f"Error: {error}", style="red"), soft_wrap=True)
    return exit_code


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        err_console.print(Text(e.usage or parser.format_usage()), end="", soft_wrap=True)
        return _report_error(e, e.exit_code)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0

    if not args.command:
        parser.print_help()
        return 0

    setup_logging(args.verbose)
    commands = {
        "summary": cmd_summary,
        "components": cmd_components,
        "restrict": cmd_restrict,
        "bc": cmd_bc,
        "diversity": cmd_diversity,
        "cells": cmd_cells,
        "decompose": cmd_decompose,
        "neighborhood": cmd_neighborhood,
        "correlate": cmd_correlate,
        "anova": cmd_anova,
        "export-vec": cmd_export_vec,
        "pipeline": cmd_pipeline,
    }

    cmd_func = commands[args.command]
    try:
        return cmd_func(args)
    except KeyboardInterrupt:
        err_console.print("\n[yellow]Interrupted.[/]")
        return 130
    except RaonetError as e:
        return _report_error(e, e.exit_code)
    except OSError as e:
        return _report_error(f"{e.strerror}: {e.filename}" if e.filename else e, DataError.exit_code)


if __name__ == "__main__":
    exit(main())
