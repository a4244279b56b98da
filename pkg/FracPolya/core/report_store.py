"""
FracPolya Report Store - CSV, JSON and Markdown artifacts.

Every file is written to a temp file in the target directory and renamed
into place, so an interrupted run never leaves half a table behind.

Numbers go out with 12 significant digits ('.12g'), independent of locale.

Usage:
    store = ReportStore("fracpolya_report")
    store.write_csv("thresholds.csv", ["curve", "alpha_star"], rows)
    store.write_json("report.json", report.to_dict())
    write_csv_stream(sys.stdout, header, rows)
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO

from .defaultsConfig import CLI_DEFAULTS, debug_module
from .errors import OutputError


def format_number(value: Any, digits: int = CLI_DEFAULTS['significant_digits']) -> str:
    """Floats as '.12g'; bools, ints and text pass through str()."""
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, f".{digits}g")
    return str(value)


def write_csv_stream(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]],
                     digits: int = CLI_DEFAULTS['significant_digits']) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v, digits) for v in row])


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    write_csv_stream(buf, header, rows)
    return buf.getvalue()


def json_text(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


class ReportStore:
    """Writes report artifacts into one output directory."""

    def __init__(self, output_dir: os.PathLike):
        self._dir = Path(output_dir).expanduser()

    @property
    def output_dir(self) -> Path:
        return self._dir

    def _atomic_write(self, name: str, content: str) -> Path:
        target = self._dir / name
        try:
            self._dir.mkdir(parents=True, exist_ok=True)
            fd, temp_path = tempfile.mkstemp(suffix='.tmp', prefix='fracpolya_',
                                             dir=str(self._dir))
            try:
                with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
                    f.write(content)
                os.replace(temp_path, target)
            except Exception:
                if os.path.exists(temp_path):
                    os.remove(temp_path)
                raise
        except OSError as e:
            raise OutputError(f"cannot write {target}: {e}") from e
        debug_module('report', f"wrote {target}")
        return target

    def write_csv(self, name: str, header: Sequence[str],
                  rows: Iterable[Sequence[Any]]) -> Path:
        return self._atomic_write(name, csv_text(header, rows))

    def write_json(self, name: str, document: Any) -> Path:
        return self._atomic_write(name, json_text(document))

    def write_text(self, name: str, text: str) -> Path:
        return self._atomic_write(name, text)


__all__ = ["ReportStore", "format_number", "write_csv_stream", "csv_text", "json_text"]
