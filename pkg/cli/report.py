"""CSV and JSON reports plus the run manifest."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
import sys
from importlib import metadata
from typing import TYPE_CHECKING, Any

from loguru import logger

from cli.exceptions import IoFailureError
from cli.strings import file_written
from cli.utils import OutputFormat

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence
    from pathlib import Path

Row = dict[str, Any]
PACKAGE_NAME = "regfactor"


def _render(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _json_value(value: object) -> object:
    if isinstance(value, float):
        return None if math.isnan(value) or math.isinf(value) else float(f"{value:.17g}")
    return value


def render_report(rows: Sequence[Mapping[str, Any]], columns: Sequence[str], fmt: OutputFormat) -> str:
    """Rows as CSV (header first, ``columns`` order) or as a JSON array of objects."""
    for row in rows:
        missing = [column for column in columns if column not in row]
        if missing:
            msg = f"Row is missing columns {missing}: {row}"
            raise ValueError(msg)
    if fmt is OutputFormat.JSON:
        payload = [{column: _json_value(row[column]) for column in columns} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_render(row[column]) for column in columns])
    return buffer.getvalue()


def write_text(text: str, path: Path | None) -> None:
    """Write UTF-8 text to ``path``, or to stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        msg = f"Unable to write {path}: {e}"
        raise IoFailureError(msg) from e
    logger.info(file_written.format(path=path))


def emit_report(
    rows: Sequence[Mapping[str, Any]],
    columns: Sequence[str],
    fmt: OutputFormat = OutputFormat.CSV,
    path: Path | None = None,
) -> str:
    """Render and write a report.

    Args:
        rows (Sequence[Mapping[str, Any]]): One mapping per row, holding every column.
        columns (Sequence[str]): Fixed column order.
        fmt (OutputFormat): CSV or JSON.
        path (Path | None): Destination, stdout when omitted.

    Returns
    -------
        str: The rendered text.
    """
    text = render_report(rows, columns, fmt)
    write_text(text, path)
    return text


def read_csv_report(text: str) -> list[dict[str, str]]:
    """Parse a CSV report back into string-valued rows."""
    return list(csv.DictReader(io.StringIO(text)))


def package_version() -> str:
    try:
        return metadata.version(PACKAGE_NAME)
    except metadata.PackageNotFoundError:
        return "unknown"


def write_manifest(
    out: Path,
    config: Mapping[str, Any],
    seconds: float,
    extras: Mapping[str, Any] | None = None,
) -> Path:
    """``<out>.manifest.json`` with the effective config, the package version and the wall-clock time."""
    manifest = out.with_name(out.name + ".manifest.json")
    payload = {
        "config": dict(config),
        "version": package_version(),
        "python_version": platform.python_version(),
        "wall_clock_seconds": seconds,
        **(extras or {}),
    }
    write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", manifest)
    return manifest
