"""Matrix and vector files.

JSON matrices look like ``{"rows": 2, "cols": 2, "data": [[1, 0], [0, 0.5]]}``;
CSV matrices are headerless, one row per line.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path

import numpy as np

from .errors import InputError


def _finite(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"{where}: non-finite value {value!r}")
    return value


def matrix_from_json(doc, source: str = "<json>") -> np.ndarray:
    if not isinstance(doc, dict) or "data" not in doc:
        raise InputError(f"{source}: expected an object with 'rows', 'cols' and 'data'")
    data = doc["data"]
    if not isinstance(data, list) or not data:
        raise InputError(f"{source}: 'data' must be a non-empty list of rows")
    rows = doc.get("rows", len(data))
    cols = doc.get("cols", len(data[0]) if isinstance(data[0], list) else None)
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise InputError(f"{source}: 'rows' and 'cols' must be positive integers")
    if len(data) != rows:
        raise InputError(f"{source}: header says {rows} rows but data has {len(data)}")
    out = np.empty((rows, cols))
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise InputError(f"{source}: row {i} has {got} entries, expected {cols}")
        for j, value in enumerate(row):
            out[i, j] = _finite(value, f"{source}: row {i}, column {j}")
    return out


def matrix_from_csv(text: str, source: str = "<csv>") -> np.ndarray:
    rows = [r for r in csv.reader(text.splitlines()) if r and any(c.strip() for c in r)]
    if not rows:
        raise InputError(f"{source}: empty CSV")
    cols = len(rows[0])
    out = np.empty((len(rows), cols))
    for i, row in enumerate(rows):
        if len(row) != cols:
            raise InputError(f"{source}: row {i} has {len(row)} entries, expected {cols}")
        for j, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                raise InputError(f"{source}: row {i}, column {j}: cannot parse {cell!r}") from None
            out[i, j] = _finite(value, f"{source}: row {i}, column {j}")
    return out


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.float64)
    return {"rows": int(M.shape[0]), "cols": int(M.shape[1]), "data": M.tolist()}


def read_matrix(path, fmt: str | None = None) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    if fmt == "csv":
        return matrix_from_csv(text, str(path))
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_json(doc, str(path))


def parse_vector(spec: str) -> np.ndarray:
    """A vector given inline (``"1,0,-2"`` or ``"[1, 0, -2]"``) or as a path to a JSON list."""
    if os.path.isfile(spec):
        try:
            values = json.loads(Path(spec).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{spec}: invalid JSON ({exc})") from None
    else:
        text = spec.strip()
        if text.startswith("["):
            try:
                values = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InputError(f"cannot parse vector {spec!r} ({exc})") from None
        else:
            values = []
            for k, cell in enumerate(text.split(",")):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise InputError(f"vector entry {k}: cannot parse {cell!r}") from None
    if not isinstance(values, list) or not values:
        raise InputError(f"vector {spec!r} must be a non-empty list of numbers")
    return np.array([_finite(v, f"vector entry {k}") for k, v in enumerate(values)])
