"""CSV and JSON round-tripping of operator matrices.

CSV is row-major with one ``"re,im"`` cell per entry.  JSON has the form
``{"n": N, "structure": ..., "entries": [[[re, im], ...], ...]}``.  Floats
are written with ``repr`` so a write/read cycle reproduces every entry
bit for bit.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .hardy import OperatorMatrix


def _cell(z) -> str:
    return f"{float(z.real)!r},{float(z.imag)!r}"


def _parse_cell(text: str) -> complex:
    re_part, im_part = text.split(",")
    return complex(float(re_part), float(im_part))


def to_csv(op: OperatorMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in op.entries:
        writer.writerow([_cell(z) for z in row])
    return buf.getvalue()


def from_csv(text: str, structure: str | None = None) -> OperatorMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    entries = np.array([[_parse_cell(c) for c in row] for row in rows], dtype=complex)
    return OperatorMatrix(entries, structure)


def to_json(op: OperatorMatrix, **kwargs) -> str:
    payload = {
        "n": op.N,
        "structure": op.structure,
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in op.entries],
    }
    return json.dumps(payload, **kwargs)


def from_json(text: str) -> OperatorMatrix:
    payload = json.loads(text)
    entries = np.array([[complex(re, im) for re, im in row] for row in payload["entries"]])
    if entries.shape != (payload["n"] + 1, payload["n"] + 1):
        raise ValueError(f"entries shape {entries.shape} does not match n={payload['n']}")
    return OperatorMatrix(entries, payload["structure"])
