"""Dataset tables and figure descriptions.

A dataset is a CSV written by the cost pipeline next to a JSON sidecar
that describes every column (name, unit, symbol, description) and records
derived constants. The renderer trusts the sidecar: columns are looked up
by name and all labels come from it.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field


class SchemaError(ValueError):
    """The dataset does not provide what the requested figure needs."""


def sidecar_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".schema.json"


@dataclass(frozen=True)
class Table:
    """One loaded dataset: parsed rows plus the sidecar description."""

    path: str
    columns: list
    constants: dict
    rows: list

    def names(self) -> list:
        return [c["name"] for c in self.columns]

    def meta(self, name: str) -> dict:
        for c in self.columns:
            if c["name"] == name:
                return c
        raise SchemaError(f"{self.path}: no column {name!r} in the sidecar")

    def symbol(self, name: str) -> str:
        return self.meta(name).get("symbol") or name

    def axis_label(self, name: str) -> str:
        m = self.meta(name)
        sym = m.get("symbol") or name
        unit = m.get("unit", "")
        if unit and unit not in ("dimensionless", "flag"):
            return f"{sym} [{unit}]"
        return sym

    def column(self, name: str) -> list:
        self.meta(name)
        return [r[name] for r in self.rows]


def _cell(text: str):
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


def load_table(csv_path: str) -> Table:
    """Read a CSV and its sidecar; empty cells become None."""
    sc = sidecar_path(csv_path)
    try:
        with open(sc, "r", encoding="utf-8") as fh:
            schema = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"missing sidecar for {csv_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"sidecar {sc} is not valid JSON: {exc}") from exc
    columns = schema.get("columns", [])
    try:
        with open(csv_path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise SchemaError(f"{csv_path} has no header row")
            rows = [dict(zip(header, map(_cell, row))) for row in reader]
    except OSError as exc:
        raise SchemaError(f"cannot read {csv_path}: {exc}") from exc
    declared = [c["name"] for c in columns]
    if header != declared:
        raise SchemaError(f"{csv_path} header {header} does not match the "
                          f"sidecar columns {declared}")
    return Table(csv_path, columns, schema.get("constants", {}), rows)


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: figure id, input dataset(s), output image path.

    scales overrides the figure's default axis scales, e.g. {"y": "log"}.
    Output format follows the extension: .svg is vector (the default
    choice), anything else is rasterized.
    """

    figure: str
    csv_paths: tuple
    out_path: str
    scales: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.csv_paths, str):
            object.__setattr__(self, "csv_paths", (self.csv_paths,))
        else:
            object.__setattr__(self, "csv_paths", tuple(self.csv_paths))
        for k in self.scales:
            if k not in ("x", "y"):
                raise SchemaError(f"scales keys must be 'x' or 'y', got {k!r}")
