"""Deterministic JSON/CSV emission.

Floats are rendered with 17 significant digits ('%.17g'), which round-trips
every double exactly and is locale independent.  The JSON writer is a small
recursive formatter so that float formatting stays under our control; its
output is standard JSON parseable by json.loads.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

SCHEMA_VERSION = 1


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("cannot serialise non-finite float to JSON")
    return format(float(x), ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(pad + it for it in items) + "\n" + closing + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(pad + it for it in items) + "\n" + closing + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__} to JSON")


def to_json_text(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def write_json(path: str | Path, obj) -> Path:
    path = Path(path)
    path.write_text(to_json_text(obj), encoding="utf-8")
    return path


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> Path:
    """CSV with '.' decimal separator; floats at 17 significant digits."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [format_float(v) if isinstance(v, float) else str(v) for v in row]
            )
    return path
