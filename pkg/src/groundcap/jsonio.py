"""Deterministic JSON writing shared by records, reports, and manifests.

Python's ``json`` module ties float formatting to ``repr``, which is exact but
noisy for golden files, so this serializer pins the canonical form instead:
keys sorted (numerically when every key is a digit string, e.g. frame
indices), floats with exactly six decimal places, UTF-8 with no ASCII
escaping, and ``\n`` separators for JSON-lines.
"""

from __future__ import annotations

import json
import math
from typing import Any


def _format_float(value: float) -> str:
    if math.isnan(value) or math.isinf(value):
        raise ValueError(f"non-finite float {value} cannot be serialized")
    return f"{value:.6f}"


def _sorted_keys(obj: dict) -> list:
    keys = list(obj.keys())
    if keys and all(isinstance(k, str) and k.isdigit() for k in keys):
        return sorted(keys, key=int)
    return sorted(keys)


def _write(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(", ")
            _write(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(_sorted_keys(obj)):
            if i:
                out.append(", ")
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {type(key).__name__}")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(": ")
            _write(obj[key], out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    """Render ``obj`` in the canonical single-line form."""
    out: list[str] = []
    _write(obj, out)
    return "".join(out)


def canonical_json_bytes(obj: Any) -> bytes:
    return canonical_json(obj).encode("utf-8")


def canonical_jsonl_bytes(objs: list[Any]) -> bytes:
    """One canonical JSON document per line, trailing newline included."""
    return "".join(canonical_json(o) + "\n" for o in objs).encode("utf-8")
