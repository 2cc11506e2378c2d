"""Matrix JSON wire format.

A matrix is the object ``{"rows": r, "cols": c, "entries": [[re, im], ...]}``
with entries in row-major order.  Doubles are written as decimal literals
with 17 significant digits, which round-trip bit-exactly through any
correct decimal parser; this makes serialized matrices usable as replay
bundles.
"""

from __future__ import annotations

import json

import numpy as np

from .linalg import InvalidInputError, as_matrix


def format_double(x: float) -> str:
    """17-significant-digit decimal representation (bit round-trip safe)."""
    return format(float(x), ".17g")


def matrix_to_dict(a: np.ndarray) -> dict:
    a = as_matrix(a)
    rows, cols = a.shape
    flat = a.reshape(-1)
    return {
        "rows": int(rows),
        "cols": int(cols),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def dumps_matrix(a: np.ndarray) -> str:
    """Canonical serialization; also the digest preimage for reports."""
    a = as_matrix(a)
    rows, cols = a.shape
    parts = ",".join(
        f"[{format_double(z.real)},{format_double(z.imag)}]" for z in a.reshape(-1)
    )
    return f'{{"rows":{rows},"cols":{cols},"entries":[{parts}]}}'


def canonical_bytes(a: np.ndarray) -> bytes:
    return dumps_matrix(a).encode("ascii")


def matrix_from_dict(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InvalidInputError("matrix JSON must be an object")
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix JSON: {exc}") from exc
    if rows < 1 or cols < 1:
        raise InvalidInputError("rows and cols must be positive")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise InvalidInputError(
            f"entries length {len(entries) if isinstance(entries, list) else '?'}"
            f" != rows*cols = {rows * cols}"
        )
    flat = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InvalidInputError(f"entry {k} is not a [re, im] pair")
        flat[k] = complex(float(pair[0]), float(pair[1]))
    return as_matrix(flat.reshape(rows, cols))


def loads_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc
    return matrix_from_dict(obj)


def read_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return loads_matrix(fh.read())


def write_matrix(path, a: np.ndarray) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_matrix(a))
        fh.write("\n")
