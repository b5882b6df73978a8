"""Deterministic JSON/CSV emission.

Floats are rendered with 17 significant digits so every value round-trips
exactly; output is locale-independent ('.' decimals, '\\n' line endings) and
key order follows insertion order of the result dicts.
"""
from __future__ import annotations

import math
from typing import Any


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return f"{x:.17g}"


def _encode(obj: Any, indent: int) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        escaped = (obj.replace("\\", "\\\\").replace('"', '\\"')
                      .replace("\n", "\\n").replace("\t", "\\t"))
        return f'"{escaped}"'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(f"{pad}  {_encode(v, indent + 1)}" for v in obj)
        return f"[\n{inner}\n{pad}]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  "{k}": {_encode(v, indent + 1)}' for k, v in obj.items())
        return f"{{\n{inner}\n{pad}}}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj: Any) -> str:
    return _encode(obj, 0) + "\n"


def sweep_csv(rows) -> str:
    """CSV with the fixed header T,ln_z,U,N,p; rows are 5-tuples."""
    lines = ["T,ln_z,U,N,p"]
    for r in rows:
        lines.append(",".join(format_float(v) for v in r))
    return "\n".join(lines) + "\n"
