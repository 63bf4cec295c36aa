"""Structure files: strict JSON documents for the three value kinds.

A document is a JSON object with exactly the keys format_version ("1"),
kind ("hermitian" | "tournament" | "sign_matrix"), n, mode ("exact" |
"approx") and entries (an n x n matrix of strings). Unknown keys are
rejected, as are missing ones. Hermitian entries use the scalar grammar
("a/b+c/di" exact, "re,im" approx); tournaments use "0"/"1"; sign matrices
use "-1"/"0"/"1". Tournaments and sign matrices are integer objects, so
their mode must be "exact".

Exact values survive a serialize/parse round trip unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .constructions import SignMatrix
from .core import HermitianStructure, Tournament
from .errors import InputError
from .scalars import APPROX, EXACT, parse_scalar

FORMAT_VERSION = "1"

_KINDS = ("hermitian", "tournament", "sign_matrix")
_KEYS = ("format_version", "kind", "n", "mode", "entries")


@dataclass(frozen=True)
class LoadedDocument:
    kind: str
    mode: str
    value: object  # HermitianStructure | Tournament | SignMatrix


def _entry_grid(raw, n):
    if not isinstance(raw, list) or len(raw) != n:
        raise InputError(f"entries must be a list of {n} rows")
    grid = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"entries row {i} must be a list of {n} strings")
        for j, cell in enumerate(row):
            if not isinstance(cell, str):
                raise InputError(f"entry ({i},{j}) must be a string, got {cell!r}")
        grid.append(row)
    return grid


def parse_document(text):
    """Parse a structure document into a LoadedDocument.

    Raises InputError for anything that is not a well-formed document of a
    known kind, including unknown keys.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"document is not valid UTF-8: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"document is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    unknown = sorted(set(data) - set(_KEYS))
    if unknown:
        raise InputError(f"document has unknown keys: {unknown}")
    missing = [k for k in _KEYS if k not in data]
    if missing:
        raise InputError(f"document is missing keys: {missing}")
    if data["format_version"] != FORMAT_VERSION:
        raise InputError(
            f"unsupported format_version {data['format_version']!r}, "
            f"expected {FORMAT_VERSION!r}"
        )
    kind = data["kind"]
    if kind not in _KINDS:
        raise InputError(f"kind must be one of {_KINDS}, got {kind!r}")
    mode = data["mode"]
    if mode not in (EXACT, APPROX):
        raise InputError(f"mode must be 'exact' or 'approx', got {mode!r}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    grid = _entry_grid(data["entries"], n)

    if kind == "hermitian":
        labels = [
            [parse_scalar(cell, mode) for cell in row] for row in grid
        ]
        return LoadedDocument(kind=kind, mode=mode, value=HermitianStructure(labels))

    if mode != EXACT:
        raise InputError(f"a {kind} document is integral; mode must be 'exact'")
    if kind == "tournament":
        matrix = []
        for i, row in enumerate(grid):
            out = []
            for j, cell in enumerate(row):
                if cell not in ("0", "1"):
                    raise InputError(
                        f"tournament entry ({i},{j}) must be '0' or '1', got {cell!r}"
                    )
                out.append(int(cell))
            matrix.append(out)
        return LoadedDocument(kind=kind, mode=mode, value=Tournament.from_matrix(matrix))

    matrix = []
    for i, row in enumerate(grid):
        out = []
        for j, cell in enumerate(row):
            if cell not in ("-1", "0", "1"):
                raise InputError(
                    f"sign matrix entry ({i},{j}) must be '-1', '0' or '1', got {cell!r}"
                )
            out.append(int(cell))
        matrix.append(out)
    return LoadedDocument(kind=kind, mode=mode, value=SignMatrix(matrix))


def document_dict(value):
    if isinstance(value, HermitianStructure):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "hermitian",
            "n": value.n,
            "mode": value.mode,
            "entries": [
                [value.label(i, j).to_text() for j in range(value.n)]
                for i in range(value.n)
            ],
        }
    if isinstance(value, Tournament):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "tournament",
            "n": value.n,
            "mode": EXACT,
            "entries": [
                ["1" if value.dominates(i, j) else "0" for j in range(value.n)]
                for i in range(value.n)
            ],
        }
    if isinstance(value, SignMatrix):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "sign_matrix",
            "n": value.n,
            "mode": EXACT,
            "entries": [
                [str(value.entries[i][j]) for j in range(value.n)]
                for i in range(value.n)
            ],
        }
    raise InputError(f"cannot serialize {type(value).__name__} as a document")


def serialize_document(value):
    """Render a HermitianStructure, Tournament or SignMatrix as document text."""
    return json.dumps(document_dict(value), indent=2, sort_keys=True) + "\n"
