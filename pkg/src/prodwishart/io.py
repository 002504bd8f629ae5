"""Table serialization: CSV with 17 significant digits, JSON with a meta block."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from typing import Any, Mapping, Sequence

import numpy as np


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cell(v: Any) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def table_to_csv(table: Mapping[str, Sequence[Any]]) -> str:
    keys = list(table)
    cols = [list(table[k]) for k in keys]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(keys)
    for row in zip(*cols):
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _jsonable(v: Any):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def table_to_json(table: Mapping[str, Sequence[Any]], meta: Mapping[str, Any]) -> str:
    doc = {k: [_jsonable(v) for v in table[k]] for k in table}
    doc["meta"] = dict(meta)
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def read_csv_column(path: str, column: str | None = None,
                    preferred: Sequence[str] = ("rescaled_zero", "value")) -> np.ndarray:
    """Read one numeric column; without ``column`` the first preferred name present, else the last column."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        if column is None:
            column = next((c for c in preferred if c in fields), fields[-1] if fields else None)
        if column is None or column not in fields:
            raise KeyError(f"column {column!r} not found in {path} (have {fields})")
        return np.array([float(row[column]) for row in reader])
