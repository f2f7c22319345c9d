"""Byte-stable JSON, plain-text tables and DOT output for reports and trees.

All exact values are written as strings in the literal syntax accepted by the
parser (``"1/2"``, ``"inf"``) or as JSON integers when integral, so reports can
be diffed and re-read without loss.
"""

from __future__ import annotations

import dataclasses
import json
import math
from enum import Enum
from fractions import Fraction

from ..exact_arith import AlgElem, MPoly, PuiseuxSeries

SCHEMA = "folkit-report/1"


def to_jsonable(obj):
    """Recursively convert exact values and dataclasses into JSON-ready data."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        raise TypeError("floating-point values have no place in exact reports")
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, AlgElem):
        r = obj.to_rational()
        if r is not None:
            return to_jsonable(r)
        return str(obj)
    if isinstance(obj, (MPoly, PuiseuxSeries)):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical JSON text: two-space indent, insertion-ordered keys, trailing newline."""
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def envelope(command: str, payload) -> dict:
    return {"schema": SCHEMA, "command": command, "result": payload}


def _cell(v) -> str:
    v = to_jsonable(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def format_table(rows: list[dict], columns: list[str] | None = None) -> str:
    """Left-aligned text table with a header row."""
    if not rows:
        return "(empty)\n"
    if columns is None:
        columns = []
        for r in rows:
            for k in r:
                if k not in columns:
                    columns.append(k)
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def format_mapping(m: dict) -> str:
    """Two-column key/value table."""
    return format_table([{"key": k, "value": v} for k, v in m.items()], ["key", "value"])


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def tree_to_dot(nodes: list[dict], name: str = "resolution") -> str:
    """DOT digraph; each node dict needs ``id``, ``parent`` and a ``label`` string (newlines allowed)."""
    lines = [f'digraph "{_dot_escape(name)}" {{', "  node [shape=box, fontname=monospace];"]
    for n in nodes:
        lines.append(f'  n{n["id"]} [label="{_dot_escape(n["label"])}"];')
    for n in nodes:
        if n.get("parent") is not None:
            edge = n.get("edge_label")
            attr = f' [label="{_dot_escape(edge)}"]' if edge else ""
            lines.append(f'  n{n["parent"]} -> n{n["id"]}{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
