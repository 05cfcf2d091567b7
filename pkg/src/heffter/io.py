"""
Grid documents (JSON, CSV) and the fixture catalog.

JSON is the canonical format::

    {"schema": "heffter-grid/1", "rows": 4, "cols": 5,
     "cells": [[1, 1, 19], [1, 2, -20], ...],
     "meta": {...}}

Cells are 1-based ``[row, col, value]`` triples in row-major order.  A set of
arrays (an IHS) is stored as ``{"schema": "heffter-set/1", "arrays": [...]}``
where each element is a grid document without its own schema tag.

The CSV form has one line per row and leaves empty cells blank.
"""

from __future__ import annotations

import csv
import io
import json
import os
from importlib import resources
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .core import Grid, HeffterError

GRID_SCHEMA = "heffter-grid/1"
SET_SCHEMA = "heffter-set/1"
FIXTURES_ENV = "HEFFTER_FIXTURES"


class GridFormatError(HeffterError, ValueError):
    """A grid document could not be parsed."""


# -- JSON ---------------------------------------------------------------------


def grid_to_dict(g: Grid, meta: dict | None = None) -> dict:
    doc = {
        "rows": g.rows,
        "cols": g.cols,
        "cells": [[i + 1, j + 1, v] for (i, j), v in sorted(g.cells().items())],
    }
    if meta:
        doc["meta"] = meta
    return doc


def grid_from_dict(doc: dict, where: str = "document") -> Grid:
    try:
        rows, cols, triples = doc["rows"], doc["cols"], doc["cells"]
    except (KeyError, TypeError) as exc:
        raise GridFormatError(f"{where}: missing field {exc}") from None
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise GridFormatError(f"{where}: rows/cols must be positive integers")
    a = np.zeros((rows, cols), dtype=np.int64)
    for idx, t in enumerate(triples):
        here = f"{where}, cells[{idx}]"
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, int) and not isinstance(x, bool) for x in t)):
            raise GridFormatError(f"{here}: expected [row, col, value] integers, got {t!r}")
        r, c, v = t
        if not (1 <= r <= rows and 1 <= c <= cols):
            raise GridFormatError(f"{here}: coordinate ({r}, {c}) outside {rows}x{cols}")
        if v == 0:
            raise GridFormatError(f"{here}: zero entry at ({r}, {c})")
        if a[r - 1, c - 1]:
            raise GridFormatError(f"{here}: duplicate coordinate ({r}, {c})")
        a[r - 1, c - 1] = v
    return Grid(a)


def _dump(doc: dict) -> str:
    # one cell triple per line keeps documents diffable; key order is fixed
    def grid_body(d: dict, indent: str) -> list[str]:
        lines = [f'{indent}"rows": {d["rows"]},', f'{indent}"cols": {d["cols"]},']
        cells = ",\n".join(f"{indent}  [{r}, {c}, {v}]" for r, c, v in d["cells"])
        lines.append(f'{indent}"cells": [\n{cells}\n{indent}]' if cells else f'{indent}"cells": []')
        if "meta" in d:
            lines[-1] += ","
            lines.append(f'{indent}"meta": {json.dumps(d["meta"], sort_keys=True)}')
        return lines

    if doc["schema"] == GRID_SCHEMA:
        body = [f'  "schema": "{GRID_SCHEMA}",'] + grid_body(doc, "  ")
        return "{\n" + "\n".join(body) + "\n}\n"
    parts = []
    for d in doc["arrays"]:
        parts.append("    {\n" + "\n".join(grid_body(d, "      ")) + "\n    }")
    body = [f'  "schema": "{SET_SCHEMA}",', '  "arrays": [\n' + ",\n".join(parts) + "\n  ]"]
    if "meta" in doc:
        body[-1] += ","
        body.append(f'  "meta": {json.dumps(doc["meta"], sort_keys=True)}')
    return "{\n" + "\n".join(body) + "\n}\n"


def dumps_grid(g: Grid, meta: dict | None = None) -> str:
    return _dump({"schema": GRID_SCHEMA, **grid_to_dict(g, meta)})


def dumps_set(blocks: Sequence[Grid], meta: dict | None = None) -> str:
    doc = {"schema": SET_SCHEMA, "arrays": [grid_to_dict(b) for b in blocks]}
    if meta:
        doc["meta"] = meta
    return _dump(doc)


def loads(text: str, where: str = "document") -> Grid | list[Grid]:
    """Parse a grid or set document; the schema tag decides the return type."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GridFormatError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise GridFormatError(f"{where}: top level must be an object")
    schema = doc.get("schema", GRID_SCHEMA)
    if schema == GRID_SCHEMA:
        return grid_from_dict(doc, where)
    if schema == SET_SCHEMA:
        arrays = doc.get("arrays")
        if not isinstance(arrays, list):
            raise GridFormatError(f"{where}: 'arrays' must be a list")
        return [grid_from_dict(d, f"{where}, arrays[{i}]") for i, d in enumerate(arrays)]
    raise GridFormatError(f"{where}: unknown schema {schema!r}")


def load_meta(source) -> dict:
    return json.loads(_read_text(source)).get("meta", {})


# -- CSV ----------------------------------------------------------------------


def dumps_csv(g: Grid) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in g.tolist():
        w.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def loads_csv(text: str, where: str = "document") -> Grid:
    rows = []
    for lineno, fields in enumerate(csv.reader(io.StringIO(text)), 1):
        if not fields:
            continue
        row = []
        for colno, f in enumerate(fields, 1):
            f = f.strip()
            if not f:
                row.append(0)
                continue
            try:
                v = int(f)
            except ValueError:
                raise GridFormatError(f"{where}: line {lineno} field {colno}: not an integer: {f!r}") from None
            if v == 0:
                raise GridFormatError(f"{where}: line {lineno} field {colno}: zero entry")
            row.append(v)
        if rows and len(row) != len(rows[0]):
            raise GridFormatError(f"{where}: line {lineno}: {len(row)} fields, expected {len(rows[0])}")
        rows.append(row)
    if not rows:
        raise GridFormatError(f"{where}: no rows")
    return Grid(rows)


# -- files --------------------------------------------------------------------


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text()


def _guess_format(source, fmt: str | None) -> str:
    if fmt:
        return fmt
    name = getattr(source, "name", source)
    return "csv" if str(name).lower().endswith(".csv") else "json"


def read_grid(source, fmt: str | None = None) -> Grid:
    """Read a single grid from a path or text stream."""
    where = str(getattr(source, "name", source))
    text = _read_text(source)
    if _guess_format(source, fmt) == "csv":
        return loads_csv(text, where)
    g = loads(text, where)
    if isinstance(g, list):
        raise GridFormatError(f"{where}: expected a single grid, found a set of {len(g)}")
    return g


def read_set(source) -> list[Grid]:
    """Read a set document; a single-grid document yields a one-element list."""
    g = loads(_read_text(source), str(getattr(source, "name", source)))
    return g if isinstance(g, list) else [g]


def _write_text(sink, text: str):
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        Path(sink).write_text(text)


def write_grid(g: Grid, sink, fmt: str | None = None, meta: dict | None = None) -> None:
    if _guess_format(sink, fmt) == "csv":
        _write_text(sink, dumps_csv(g))
    else:
        _write_text(sink, dumps_grid(g, meta))


def write_set(blocks: Sequence[Grid], sink: str | os.PathLike | IO[str], meta: dict | None = None) -> None:
    _write_text(sink, dumps_set(blocks, meta))


# -- fixture catalog ----------------------------------------------------------


def builtin_fixtures_dir() -> Path:
    return Path(str(resources.files("heffter") / "fixtures"))


def fixture_dirs(fixtures_dir: str | os.PathLike | None = None) -> list[Path]:
    """Search path: explicit directory, then ``$HEFFTER_FIXTURES``, then the shipped fixtures."""
    dirs = []
    for d in (fixtures_dir, os.environ.get(FIXTURES_ENV)):
        if d:
            dirs.append(Path(d))
    dirs.append(builtin_fixtures_dir())
    return dirs


def find_fixture(name: str, fixtures_dir=None) -> Path | None:
    for d in fixture_dirs(fixtures_dir):
        p = d / name
        if p.is_file():
            return p
    return None


def list_fixtures(fixtures_dir=None) -> list[tuple[str, Path]]:
    seen = {}
    for d in fixture_dirs(fixtures_dir):
        if d.is_dir():
            for p in sorted(d.glob("*.json")):
                seen.setdefault(p.name, p)
    return sorted(seen.items())


def install_fixture(source, name: str, fixtures_dir=None) -> Path:
    """Copy a grid/set document into the first writable catalog directory."""
    dirs = fixture_dirs(fixtures_dir)
    target_dir = dirs[0] if len(dirs) > 1 else None
    if target_dir is None:
        raise GridFormatError(f"no fixtures directory configured (set {FIXTURES_ENV} or pass one)")
    text = _read_text(source)
    loads(text, str(source))  # refuse to install garbage
    target_dir.mkdir(parents=True, exist_ok=True)
    dest = target_dir / name
    dest.write_text(text)
    return dest


def base_fixture_name(N: int) -> str:
    return f"base_h4N5_N{N}.json"
