"""Reading and writing Pajek network (.net), partition (.clu) and vector (.vec) files."""

import math
import re
from collections.abc import Callable, Iterable, Sequence
from pathlib import Path
from typing import TextIO, TypeVar

from ..errors import DataError, NetFormatError, PartitionError
from ..models import PartitionFile, RawNetworkFile

SECTION_RE = re.compile(r"^\*([A-Za-z]+)\s*(.*)$")
VERTEX_RE = re.compile(r'^(\S+)(?:\s+(?:"([^"]*)"|(\S+)))?')

# Largest float that still prints exactly as an integer.
_EXACT_INT_LIMIT = 2.0**53

T = TypeVar("T")


def format_number(value: float) -> str:
    """Integral values without a decimal point, everything else at full precision."""
    value = float(value)
    if value.is_integer() and abs(value) < _EXACT_INT_LIMIT:
        return str(int(value))
    return repr(value)


def _data_lines(stream: Iterable[str]) -> Iterable[tuple[int, str]]:
    """Yield (line number, stripped line), skipping blanks and % comments."""
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield line_no, line


def _parse_count(rest: str, line_no: int) -> int:
    tokens = rest.split()
    if not tokens:
        raise NetFormatError("*Vertices without a vertex count", line_no)
    try:
        count = int(tokens[0])
    except ValueError:
        raise NetFormatError(f"invalid vertex count '{tokens[0]}'", line_no) from None
    if count <= 0:
        raise NetFormatError(f"vertex count must be positive, got {count}", line_no)
    return count


def _parse_vertex_id(token: str, vertex_count: int, line_no: int) -> int:
    try:
        vertex = int(token)
    except ValueError:
        raise NetFormatError(f"invalid vertex id '{token}'", line_no) from None
    if not 1 <= vertex <= vertex_count:
        raise NetFormatError(f"vertex id {vertex} out of range", line_no)
    return vertex


def _parse_weight(tokens: list[str], line_no: int) -> float:
    if len(tokens) < 3:
        return 1.0
    try:
        weight = float(tokens[2])
    except ValueError:
        raise NetFormatError(f"non-numeric weight '{tokens[2]}'", line_no) from None
    if not math.isfinite(weight):
        raise NetFormatError(f"non-finite weight '{tokens[2]}'", line_no)
    if weight < 0:
        raise NetFormatError(f"negative weight {tokens[2]}", line_no)
    return weight


def parse_net(stream: Iterable[str]) -> RawNetworkFile:
    """Parse a Pajek network.

    Recognized sections are ``*Vertices N``, ``*Arcs`` and ``*Edges``
    (case-insensitive; ``*Network`` title lines are skipped). Edges become two
    opposed arcs, repeated arcs are summed, loops are kept. Coordinates and
    shape attributes after a vertex label are ignored.

    Raises:
        NetFormatError: with the offending line number.
    """
    vertex_count = None
    labels: list[str] = []
    weights: dict[tuple[int, int], float] = {}
    section = None
    edges_seen = False

    for line_no, line in _data_lines(stream):
        match = SECTION_RE.match(line)
        if match:
            keyword, rest = match.group(1).lower(), match.group(2)
            if keyword == "network":
                continue
            if keyword == "vertices":
                if vertex_count is not None:
                    raise NetFormatError("repeated *Vertices section", line_no)
                vertex_count = _parse_count(rest, line_no)
                labels = [str(vertex) for vertex in range(1, vertex_count + 1)]
                section = "vertices"
            elif keyword in ("arcs", "edges"):
                if vertex_count is None:
                    raise NetFormatError("missing *Vertices header", line_no)
                section = keyword
                edges_seen = edges_seen or keyword == "edges"
            else:
                raise NetFormatError(f"unsupported section *{match.group(1)}", line_no)
            continue

        if vertex_count is None:
            raise NetFormatError("missing *Vertices header", line_no)

        if section == "vertices":
            vertex_match = VERTEX_RE.match(line)
            vertex = _parse_vertex_id(vertex_match.group(1), vertex_count, line_no)
            label = vertex_match.group(2)
            if label is None:
                label = vertex_match.group(3) or str(vertex)
            labels[vertex - 1] = label
            continue

        tokens = line.split()
        if len(tokens) < 2:
            raise NetFormatError(f"incomplete {section[:-1]} line", line_no)
        source = _parse_vertex_id(tokens[0], vertex_count, line_no)
        target = _parse_vertex_id(tokens[1], vertex_count, line_no)
        weight = _parse_weight(tokens, line_no)

        weights[(source, target)] = weights.get((source, target), 0.0) + weight
        if section == "edges" and source != target:
            weights[(target, source)] = weights.get((target, source), 0.0) + weight

    if vertex_count is None:
        raise NetFormatError("missing *Vertices header")

    arcs = [(source, target, weight) for (source, target), weight in sorted(weights.items())]
    # Every field was checked line by line above.
    return RawNetworkFile.model_construct(
        vertex_count=vertex_count,
        labels=labels,
        arcs=arcs,
        edge_records_present=edges_seen,
    )


def generate_net(network: RawNetworkFile) -> Iterable[str]:
    """Yield the lines of a Pajek network, arcs sorted by (source, target)."""
    yield f"*Vertices {network.vertex_count}"
    for vertex, label in enumerate(network.labels, start=1):
        if '"' in label:
            raise NetFormatError(f"label of vertex {vertex} contains a double quote")
        yield f'{vertex} "{label}"'
    yield "*Arcs"
    for source, target, weight in sorted(network.arcs):
        yield f"{source} {target} {format_number(weight)}"


def write_net(network: RawNetworkFile, sink: TextIO) -> None:
    for line in generate_net(network):
        sink.write(line + "\n")


def parse_clu(stream: Iterable[str], expected_count: int) -> PartitionFile:
    """Parse a Pajek partition aligned with a network of ``expected_count`` vertices."""
    lines = _data_lines(stream)
    vertex_count = None
    for line_no, line in lines:
        match = SECTION_RE.match(line)
        if not match or match.group(1).lower() != "vertices":
            raise NetFormatError("missing *Vertices header", line_no)
        vertex_count = _parse_count(match.group(2), line_no)
        break
    if vertex_count is None:
        raise NetFormatError("missing *Vertices header")
    if vertex_count != expected_count:
        raise PartitionError(
            f"partition size {vertex_count} ≠ network size {expected_count}"
        )

    group_of: list[int] = []
    for line_no, line in lines:
        token = line.split()[0]
        try:
            group_of.append(int(token))
        except ValueError:
            raise NetFormatError(f"non-integer partition value '{token}'", line_no) from None

    if len(group_of) != vertex_count:
        raise PartitionError(f"expected {vertex_count} entries, found {len(group_of)}")
    return PartitionFile(vertex_count=vertex_count, group_of=group_of)


def write_clu(partition: PartitionFile, sink: TextIO) -> None:
    sink.write(f"*Vertices {partition.vertex_count}\n")
    for group in partition.group_of:
        sink.write(f"{group}\n")


def write_vector(values: Sequence[float], labels: Sequence[str], sink: TextIO) -> None:
    """Write one value per vertex in Pajek .vec format."""
    if len(values) != len(labels):
        raise DataError(f"expected {len(labels)} values, found {len(values)}")
    sink.write(f"*Vertices {len(values)}\n")
    for value in values:
        sink.write(format_number(value) + "\n")


def _read_text(path: Path, parse: Callable[[TextIO], T]) -> T:
    try:
        with open(path, encoding="utf-8") as stream:
            return parse(stream)
    except UnicodeDecodeError as e:
        raise NetFormatError(f"{path} is not valid UTF-8 ({e.reason})") from e


def read_net(path: Path) -> RawNetworkFile:
    return _read_text(path, parse_net)


def read_clu(path: Path, expected_count: int) -> PartitionFile:
    return _read_text(path, lambda stream: parse_clu(stream, expected_count))


def read_labels(path: Path) -> list[str]:
    """One label per line; blank lines and % comments are skipped."""
    return _read_text(path, lambda stream: [line.strip('"') for _, line in _data_lines(stream)])


def save_net(network: RawNetworkFile, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as sink:
        write_net(network, sink)


def save_clu(partition: PartitionFile, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as sink:
        write_clu(partition, sink)


def save_vector(values: Sequence[float], labels: Sequence[str], path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as sink:
        write_vector(values, labels, sink)
