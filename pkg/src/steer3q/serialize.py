"""Deterministic machine-readable output.

Reports must be byte-identical for identical (input, flags, seed), so
JSON is emitted by a small local serializer: keys sorted, every float
printed as a full-precision decimal (17 significant digits, dot decimal
separator), no timestamps, LF line endings.  CSV cells use the same
float format.
"""

import json

import numpy as np


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _canon(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def dumps_canonical(obj, indent: int = 2) -> str:
    """Canonical JSON text (ends with a newline)."""

    def render(node, depth):
        node = _canon(node)
        pad = " " * (indent * depth)
        pad_in = " " * (indent * (depth + 1))
        if node is None:
            return "null"
        if isinstance(node, bool):
            return "true" if node else "false"
        if isinstance(node, int):
            return str(node)
        if isinstance(node, float):
            return format_float(node)
        if isinstance(node, str):
            return json.dumps(node, ensure_ascii=True)
        if isinstance(node, dict):
            if not node:
                return "{}"
            items = []
            for key in sorted(node.keys()):
                items.append(f"{pad_in}{json.dumps(str(key))}: {render(node[key], depth + 1)}")
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(node, (list, tuple)):
            if not node:
                return "[]"
            items = [f"{pad_in}{render(v, depth + 1)}" for v in node]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        raise TypeError(f"cannot serialize {type(node).__name__}")

    return render(obj, 0) + "\n"


def csv_row(cells) -> str:
    """One CSV line; floats full precision, None as the empty cell."""
    out = []
    for cell in cells:
        cell = _canon(cell)
        if cell is None:
            out.append("")
        elif isinstance(cell, float):
            out.append(format_float(cell))
        elif isinstance(cell, bool):
            out.append("true" if cell else "false")
        else:
            out.append(str(cell))
    return ",".join(out) + "\n"
