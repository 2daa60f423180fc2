"""JSON matrix documents.

A document looks like::

    {"kind": "psd", "rows": 2, "cols": 2,
     "data": [[1.0, 0.0], [0.5, -0.1], [0.5, 0.1], [2.0, 0.0]]}

``data`` is the row-major list of ``[re, im]`` pairs and ``kind`` is one
of "general", "hermitian" or "psd" (default "general"). Parse errors carry
the byte offset of the offending text.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DomainError, MatrixFormatError
from .linalg import HermitianMatrix, PsdMatrix, as_matrix

MATRIX_KINDS = ("general", "hermitian", "psd")


def kind_of(m) -> str:
    if isinstance(m, PsdMatrix):
        return "psd"
    if isinstance(m, HermitianMatrix):
        return "hermitian"
    return "general"


def matrix_to_doc(m, kind=None) -> dict:
    a = as_matrix(m)
    flat = a.reshape(-1)
    return {
        "kind": kind or kind_of(m),
        "rows": a.shape[0],
        "cols": a.shape[1],
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def dumps_matrix(m, kind=None) -> str:
    return json.dumps(matrix_to_doc(m, kind))


def _byte_offset(text, char_pos):
    return len(text[:char_pos].encode("utf-8"))


def _key_offset(text, key):
    pos = text.find(f'"{key}"') if text else -1
    return _byte_offset(text, pos) if pos >= 0 else 0


def matrix_from_doc(doc, text=""):
    """Build the matrix object described by a parsed document."""
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object", 0)
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise MatrixFormatError(f"missing field {key!r}", 0)
    rows, cols = doc["rows"], doc["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 1):
        raise MatrixFormatError(f"rows and cols must be positive integers, got {rows!r}, {cols!r}",
                                _key_offset(text, "rows"))
    data = doc["data"]
    if not isinstance(data, list) or len(data) != rows * cols:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise MatrixFormatError(f"data must hold rows*cols = {rows * cols} entries, got {got}",
                                _key_offset(text, "data"))
    entries = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        ok = (isinstance(pair, list) and len(pair) == 2
              and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
              and all(math.isfinite(v) for v in pair))
        if not ok:
            raise MatrixFormatError(f"data[{i}] must be a finite [re, im] pair, got {pair!r}",
                                    _key_offset(text, "data"))
        entries[i] = complex(pair[0], pair[1])
    kind = doc.get("kind", "general")
    if kind not in MATRIX_KINDS:
        raise MatrixFormatError(f"kind must be one of {MATRIX_KINDS}, got {kind!r}",
                                _key_offset(text, "kind"))
    m = entries.reshape(rows, cols)
    try:
        if kind == "psd":
            return PsdMatrix(m)
        if kind == "hermitian":
            return HermitianMatrix(m)
    except DomainError as exc:
        raise MatrixFormatError(f"declared kind {kind!r} does not hold: {exc}",
                                _key_offset(text, "kind")) from None
    return as_matrix(m)


def loads_matrix(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc.msg}", _byte_offset(text, exc.pos)) from None
    return matrix_from_doc(doc, text)


def load_matrix(path):
    return loads_matrix(Path(path).read_bytes())


def save_matrix(path, m, kind=None):
    Path(path).write_text(dumps_matrix(m, kind) + "\n")
