"""Canonical JSON output.

Keys are sorted, rationals print as ``"a/b"`` strings in lowest terms (``"a"`` when
integral), floats print with 17 significant digits and infinities as ``"inf"``.
The same value therefore always serializes to the same bytes.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from . import SCHEMA


def rational_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def float_text(x: float) -> str:
    if math.isnan(x):
        raise ValueError("NaN has no canonical form")
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        return "0.0"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _emit(obj: Any, out: list[str]) -> None:
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(rational_text(obj)))
    elif isinstance(obj, float):
        out.append(float_text(obj))
    elif isinstance(obj, complex):
        _emit({"re": obj.real, "im": obj.imag}, out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"JSON keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical compact JSON text for ``obj``."""
    out: list[str] = []
    _emit(obj, out)
    return "".join(out)


def envelope(command: str, payload: dict) -> dict:
    """Wrap a payload with the schema tag and the command name."""
    doc = {"schema": SCHEMA, "command": command}
    doc.update(payload)
    return doc
