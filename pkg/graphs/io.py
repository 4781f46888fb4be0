"""Edge-list records.

A record is a header line ``n m`` followed by ``m`` lines ``u v`` (simple graphs) or ``u v k`` (multigraphs, ``k`` the
multiplicity). Records are concatenated without separators; blank lines are ignored on input.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from loguru import logger

from graphs.exceptions import GraphError
from graphs.graph import Graph, Multigraph

if TYPE_CHECKING:
    from collections.abc import Iterable


def format_record(g: Graph | Multigraph) -> str:
    if isinstance(g, Graph):
        lines = [f"{g.n} {g.edge_count}", *(f"{u} {v}" for u, v in g.sorted_edges)]
    else:
        lines = [f"{g.n} {len(g.multiplicities)}", *(f"{u} {v} {count}" for (u, v), count in g.multiplicities)]
    return "\n".join(lines) + "\n"


def write_records(graphs: Iterable[Graph | Multigraph]) -> str:
    return "".join(format_record(g) for g in graphs)


def _ints(line: str, number: int) -> list[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError as e:
        msg = f"Line {number}: expected integers, got {line!r}"
        raise GraphError(msg) from e


def _check_distinct(rows: list[list[int]], number: int) -> None:
    seen: set[tuple[int, int]] = set()
    for row in rows:
        pair = (min(row[0], row[1]), max(row[0], row[1]))
        if pair in seen:
            msg = f"Line {number}: record lists the pair {pair} more than once"
            raise GraphError(msg)
        seen.add(pair)


def read_records(text: str, *, multigraph: bool | None = None) -> list[Graph | Multigraph]:
    """Parse concatenated edge-list records.

    A pair may appear on one line only; multiplicities go in the third column.

    Args:
        text (str): The file contents.
        multigraph (bool | None): Read every record as a ``Multigraph`` (``True``) or a ``Graph`` (``False``); when
            omitted a record is a multigraph exactly when one of its lines has three columns, so an edgeless record
            reads as a ``Graph``.

    Returns
    -------
        list[Graph | Multigraph]: One entry per record.
    """
    lines = [(number, line) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]
    records: list[Graph | Multigraph] = []
    position = 0
    while position < len(lines):
        number, header = lines[position]
        fields = _ints(header, number)
        if len(fields) != 2:  # noqa: PLR2004
            msg = f"Line {number}: record header must be 'n m', got {header!r}"
            raise GraphError(msg)
        n, m = fields
        body = lines[position + 1 : position + 1 + m]
        if len(body) < m:
            msg = f"Line {number}: record declares {m} edges but only {len(body)} follow"
            raise GraphError(msg)
        rows = [_ints(line, row_number) for row_number, line in body]
        if any(len(row) not in (2, 3) for row in rows):
            msg = f"Line {number}: edge lines must have two or three columns"
            raise GraphError(msg)
        _check_distinct(rows, number)
        has_multiplicities = any(len(row) == 3 for row in rows)  # noqa: PLR2004
        if multigraph is False and has_multiplicities:
            msg = f"Line {number}: simple-graph record carries a multiplicity column"
            raise GraphError(msg)
        if multigraph or (multigraph is None and has_multiplicities):
            pairs = tuple(((row[0], row[1]), row[2] if len(row) == 3 else 1) for row in rows)  # noqa: PLR2004
            records.append(Multigraph(n, pairs))
        else:
            records.append(Graph(n, frozenset((row[0], row[1]) for row in rows)))
        position += 1 + m
    logger.debug(f"Parsed {len(records)} edge-list records")
    return records
