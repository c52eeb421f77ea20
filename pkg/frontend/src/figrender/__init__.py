"""Render figure analogs from cost-pipeline CSV datasets.

The cost pipeline writes flat CSV files with JSON schema sidecars; this
package turns them into SVG (or raster) figures. It never recomputes
anything: every plotted value originates in a dataset column or a sidecar
constant.
"""

from .render import known_figures, render
from .spec import FigureSpec, SchemaError, Table, load_table, sidecar_path

__all__ = [
    "FigureSpec",
    "SchemaError",
    "Table",
    "known_figures",
    "load_table",
    "render",
    "sidecar_path",
]

__version__ = "0.1.0"
