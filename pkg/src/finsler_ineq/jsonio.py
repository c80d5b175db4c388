"""JSON text with every float written to 17 significant digits.

The stdlib encoder prints the shortest round-trip repr; reports here use a
fixed width instead so files are byte-stable across platforms.
"""

from __future__ import annotations

import enum
import json
import math

import numpy as np


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    text = format(x, ".17g")
    if "." not in text and "e" not in text and "n" not in text:
        text += ".0"
    return text


def _encode(obj, indent, level, out):
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," if indent else ", "
    if isinstance(obj, enum.Enum):
        obj = obj.value
    if obj is None or isinstance(obj, (bool, np.bool_)):
        out.append(json.dumps(None if obj is None else bool(obj)))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, np.ndarray):
        _encode(obj.tolist(), indent, level, out)
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for k, (key, val) in enumerate(obj.items()):
            if k:
                out.append(sep)
            out.append(pad)
            out.append(json.dumps(str(key)))
            out.append(": ")
            _encode(val, indent, level + 1, out)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        # numeric vectors stay on one line even in indented output
        flat = all(isinstance(x, (int, float, np.number)) and not isinstance(x, bool) for x in obj)
        inner_pad, inner_end = ("", "") if flat else (pad, end)
        out.append("[")
        for k, val in enumerate(obj):
            if k:
                out.append(", " if flat else sep)
            out.append(inner_pad)
            _encode(val, indent, level + 1, out)
        out.append(inner_end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=None) -> str:
    out = []
    _encode(obj, indent, 0, out)
    return "".join(out)
