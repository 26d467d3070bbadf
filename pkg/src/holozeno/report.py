"""Deterministic JSON/CSV serialization for CLI reports.

Floats are written with 17 significant digits, complex numbers as
``[re, im]``, so that parsing a report and writing it again reproduces it
byte for byte.
"""
from __future__ import annotations

import json
import math

import numpy as np


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        x = 0.0  # no "-0"
    return "%.17g" % x


def to_plain(obj):
    """Convert numpy/complex values into JSON-ready builtins."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _depth(obj) -> int:
    """Nesting depth of lists; dicts count as unbounded."""
    if isinstance(obj, dict):
        return 99
    if isinstance(obj, list):
        return 1 + max((_depth(v) for v in obj), default=0)
    return 0


def _dump(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if _depth(obj) <= 2:
            return "[" + ", ".join(_dump(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _dump(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _dump(to_plain(obj), indent, 0) + "\n"


def flatten(obj, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted key/value pairs of a report, for CSV output."""
    obj = to_plain(obj)
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows.extend(flatten(v, f"{prefix}.{k}" if prefix else k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            rows.extend(flatten(v, f"{prefix}.{i}" if prefix else str(i)))
    else:
        rows.append((prefix, _dump(obj, 0, 0) if not isinstance(obj, str) else obj))
    return rows


def to_csv(obj) -> str:
    lines = ["key,value"]
    for k, v in flatten(obj):
        if any(ch in v for ch in ',"\n'):
            v = '"' + v.replace('"', '""') + '"'
        lines.append(f"{k},{v}")
    return "\n".join(lines) + "\n"
