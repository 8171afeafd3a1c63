"""Matrix file format: ``{"dim": n, "rows": [[[re, im], ...], ...]}``."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ParseError


def matrix_to_doc(A: np.ndarray) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    return {
        "dim": int(A.shape[0]),
        "rows": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }


def matrix_from_doc(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "dim" not in doc or "rows" not in doc:
        raise ParseError("matrix document needs 'dim' and 'rows'")
    dim, rows = doc["dim"], doc["rows"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"bad dim {dim!r}")
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"row {i} does not have {dim} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
            ):
                raise ParseError(f"entry ({i},{j}) must be [re, im]")
            out[i, j] = complex(entry[0], entry[1])
    if not np.all(np.isfinite(out)):
        raise ParseError("non-finite entry")
    return out


def load_matrix(path) -> np.ndarray:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read matrix file {path}: {exc}") from exc
    return matrix_from_doc(doc)


def save_matrix(path, A: np.ndarray) -> None:
    write_atomic(path, json.dumps(matrix_to_doc(A)))


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
