"""Result tables and their CSV serialization."""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from typing import Sequence

from .spec import ExperimentSpec, format_spec


@dataclass
class ResultTable:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    provenance: ExperimentSpec | None = None
    # per-realization curves some experiments can attach
    realizations: ResultTable | None = None

    def __post_init__(self):
        self.columns = tuple(self.columns)
        for row in self.rows:
            self._check(row)

    def _check(self, row: Sequence) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} values, table has {len(self.columns)} columns")

    def append(self, *row) -> None:
        self._check(row)
        self.rows.append(tuple(row))

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def where(self, **conds) -> "ResultTable":
        idx = {name: self.columns.index(name) for name in conds}
        rows = [r for r in self.rows if all(r[idx[k]] == v for k, v in conds.items())]
        return ResultTable(self.columns, rows, self.provenance)

    def __len__(self) -> int:
        return len(self.rows)


def format_value(value) -> str:
    """Shortest round-trip text for a table cell."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def to_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def emit_csv(table: ResultTable, path: str | os.PathLike) -> None:
    """Write ``table`` as UTF-8 CSV with LF endings, plus the ``<path>.spec`` echo."""
    path = os.fspath(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(to_csv(table))
        if table.provenance is not None:
            with open(path + ".spec", "w", encoding="utf-8", newline="\n") as fh:
                fh.write(format_spec(table.provenance))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path: str | os.PathLike) -> ResultTable:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    columns = tuple(lines[0].split(","))
    rows = []
    for line in lines[1:]:
        rows.append(tuple(int(v) if v.lstrip("-").isdigit() else float(v) for v in line.split(",")))
    return ResultTable(columns, rows)
