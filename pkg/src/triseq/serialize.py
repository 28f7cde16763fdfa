"""Deterministic text encoding for CSV and JSON output.

All floats are written with 17 significant digits so values round-trip
exactly and repeated runs produce byte-identical files.  The stdlib json
module cannot control float formatting, hence the small writer here.
"""

from __future__ import annotations

import json
import math


def fmt_float(v: float) -> str:
    """17-significant-digit representation; non-finite values keep their
    standard spellings (nan, inf, -inf)."""
    return format(float(v), ".17g")


def json_dumps(obj) -> str:
    """Compact JSON with 17-digit floats; non-finite floats become null."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{json_dumps(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(json_dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
