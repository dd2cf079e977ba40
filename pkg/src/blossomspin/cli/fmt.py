"""Number formatting and a small JSON writer with fixed float precision.

Machine output uses 17 significant digits (round-trips any double); human
output uses 6. ``json.dumps`` cannot be told to do the former, hence ``dumps``.
"""

from __future__ import annotations

import json
import math

MACHINE_DIGITS = 17
HUMAN_DIGITS = 6


def machine(x: float) -> str:
    return format(float(x), f".{MACHINE_DIGITS}g")


def human(x: float) -> str:
    return format(float(x), f".{HUMAN_DIGITS}g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: keys in insertion order, floats at 17 digits, non-finite as null."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return machine(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    # numpy scalars end up here
    if hasattr(obj, "item"):
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
