"""CSV report writing and reading."""

import csv
import math
from collections.abc import Iterable, Mapping, Sequence
from enum import Enum
from itertools import combinations
from pathlib import Path
from typing import Any, Optional, TextIO

import pandas as pd
from pydantic import BaseModel

from ..errors import DataError
from ..models import CorrelationMatrix, DecompositionReport

DEFAULT_PRECISION = 6

DIVERSITY_SCHEMA = [
    "node",
    "label",
    "delta_cited",
    "d2_cited",
    "delta_citing",
    "d2_citing",
    "sum_cited",
    "sum_citing",
]

CENTRALITY_SCHEMA = [
    "node",
    "label",
    "bc_raw",
    "bc_normalized",
    "bc_valued_raw",
    "bc_valued_normalized",
]

CELL_SCHEMA = ["focal", "i", "j", "p_i", "p_j", "d_ij", "cell"]

CORRELATION_SCHEMA = [
    "var_a",
    "var_b",
    "n",
    "pearson",
    "pearson_p",
    "pearson_mark",
    "spearman",
    "spearman_p",
    "spearman_mark",
]

DECOMPOSITION_SCHEMA = [
    "direction",
    "mode",
    "convention",
    "group",
    "node_count",
    "cell_count",
    "within_delta",
    "within_d2",
]

PAIR_SCHEMA = ["group_a", "group_b", "mean_difference", "statistic", "p_value", "significant"]

_MISSING = object()


def format_value(value: Any, precision: Optional[int] = DEFAULT_PRECISION) -> str:
    """Render one CSV field; ``precision=None`` keeps full float precision."""
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if precision is None:
            return repr(value)
        return f"{value:.{precision}g}"
    if isinstance(value, (set, frozenset, list, tuple)):
        return ";".join(sorted(format_value(item, precision) for item in value))
    return str(value)


def _field(row: Any, name: str) -> Any:
    if isinstance(row, Mapping):
        value = row.get(name, _MISSING)
    else:
        value = getattr(row, name, _MISSING)
    if value is _MISSING:
        raise DataError(f"row does not conform to schema: missing field '{name}'")
    return value


def write_report(
    rows: Iterable[BaseModel | Mapping[str, Any]],
    schema: Sequence[str],
    sink: TextIO,
    precision: Optional[int] = DEFAULT_PRECISION,
) -> int:
    """Write rows as CSV with a header row, in the caller's order.

    Returns:
        Number of data rows written
    """
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(schema)
    count = 0
    for row in rows:
        writer.writerow([format_value(_field(row, name), precision) for name in schema])
        count += 1
    return count


def save_report(
    rows: Iterable[BaseModel | Mapping[str, Any]],
    schema: Sequence[str],
    path: Path,
    precision: Optional[int] = DEFAULT_PRECISION,
) -> int:
    with open(path, "w", encoding="utf-8", newline="") as sink:
        return write_report(rows, schema, sink, precision)


def correlation_rows(matrix: CorrelationMatrix) -> list[dict[str, Any]]:
    """One row per unordered variable pair, in variable order."""
    rows = []
    for a, b in combinations(range(len(matrix.variables)), 2):
        rows.append({
            "var_a": matrix.variables[a],
            "var_b": matrix.variables[b],
            "n": matrix.n,
            "pearson": matrix.pearson[a][b],
            "pearson_p": matrix.pearson_p[a][b],
            "pearson_mark": CorrelationMatrix.mark(matrix.pearson_p[a][b]),
            "spearman": matrix.spearman[a][b],
            "spearman_p": matrix.spearman_p[a][b],
            "spearman_mark": CorrelationMatrix.mark(matrix.spearman_p[a][b]),
        })
    return rows


def decomposition_rows(report: DecompositionReport) -> list[dict[str, Any]]:
    """Per-group rows, then "between" (grand-matrix mode only) and "total"."""
    common = {"direction": report.direction, "mode": report.mode, "convention": report.convention}
    rows = [
        {**common, **group.model_dump()}
        for group in report.per_group
    ]
    if report.between_delta is not None:
        rows.append({**common, "group": "between", "node_count": None, "cell_count": None,
                     "within_delta": report.between_delta, "within_d2": None})
    rows.append({
        **common,
        "group": "total",
        "node_count": sum(group.node_count for group in report.per_group),
        "cell_count": report.total_cell_count,
        "within_delta": report.total_delta,
        "within_d2": report.total_d2,
    })
    return rows


def read_table(path: Path) -> pd.DataFrame:
    """Read a CSV report; labels stay text, empty cells become NaN."""
    try:
        return pd.read_csv(path, dtype={"label": str}, keep_default_na=False, na_values=[""])
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(f"cannot read table {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise DataError(f"cannot read table {path}: not valid UTF-8 ({e.reason})") from e


def numeric_column(table: pd.DataFrame, name: str, path: Path) -> pd.Series:
    """A column of numbers (empty cells as NaN) from a table read by ``read_table``."""
    if name not in table.columns:
        raise DataError(f"unknown field '{name}' in {path}")
    column = table[name]
    if not pd.api.types.is_numeric_dtype(column) or pd.api.types.is_bool_dtype(column):
        raise DataError(f"field '{name}' in {path} is not numeric")
    return column.astype(float)
