"""Deterministic CSV/JSON report writers.

Output is bit-stable for identical inputs: fixed field order, floats at 17
significant digits (round-trip exact for doubles), LF line endings.
"""
from __future__ import annotations

import json
import sys


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps_report(d: dict) -> str:
    """JSON text with insertion-order fields and 17-sig-digit floats."""

    def encode(obj, indent: int) -> str:
        pad = "  " * indent
        if isinstance(obj, dict):
            if not obj:
                return "{}"
            inner = ",\n".join(
                f'{pad}  {json.dumps(str(k))}: {encode(v, indent + 1)}' for k, v in obj.items()
            )
            return "{\n" + inner + "\n" + pad + "}"
        if isinstance(obj, (list, tuple)):
            if not obj:
                return "[]"
            inner = ",\n".join(f"{pad}  {encode(v, indent + 1)}" for v in obj)
            return "[\n" + inner + "\n" + pad + "]"
        if isinstance(obj, bool) or obj is None:
            return json.dumps(obj)
        if isinstance(obj, float):
            return _format_float(obj)
        if isinstance(obj, int):
            return str(obj)
        return json.dumps(obj)

    return encode(d, 0) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return _format_float(v)
    return str(v)


def write_report(report, fmt: str, path: str | None = None) -> None:
    """Write a module report as CSV or JSON.

    ``report`` must provide ``to_json_dict()`` for JSON or ``to_csv_rows()``
    for CSV (a plain dict / iterable of rows is also accepted).  ``path``
    of None writes to stdout.
    """
    if fmt == "json":
        d = report.to_json_dict() if hasattr(report, "to_json_dict") else dict(report)
        text = dumps_report(d)
    elif fmt == "csv":
        rows = report.to_csv_rows() if hasattr(report, "to_csv_rows") else report
        text = "\n".join(",".join(_csv_cell(c) for c in row) for row in rows) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")

    if path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path!r}: {exc}") from exc
