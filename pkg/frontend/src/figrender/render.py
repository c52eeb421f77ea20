"""Figure assembly on top of matplotlib.

Every plotted value comes straight out of a dataset column or a sidecar
constant; the only arithmetic here is mapping values onto axes (log
scales, the reciprocal that puts a constant onto an inverse axis). Data
lines carry SVG ids series_1, series_2, ... and guide lines marker_1,
marker_2, ... so outputs can be checked without rasterizing them.
"""

from __future__ import annotations

import warnings

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .spec import FigureSpec, SchemaError, Table, load_table

# fixed hash salt and text kept as text: identical inputs, identical bytes
_RC = {"svg.fonttype": "none", "svg.hashsalt": "figrender"}

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


class _Gids:
    """Running SVG ids for data series and guide lines."""

    def __init__(self):
        self.series = 0
        self.markers = 0

    def next_series(self) -> str:
        self.series += 1
        return f"series_{self.series}"

    def next_marker(self) -> str:
        self.markers += 1
        return f"marker_{self.markers}"


def _series(ax, gids, x, y, **kwargs):
    (line,) = ax.plot(x, y, **kwargs)
    line.set_gid(gids.next_series())
    return line

def _vmarker(ax, gids, x, **kwargs):
    line = ax.axvline(x, linestyle=":", linewidth=1.0, **kwargs)
    line.set_gid(gids.next_marker())

def _hmarker(ax, gids, y, **kwargs):
    line = ax.axhline(y, linestyle=":", linewidth=1.0, **kwargs)
    line.set_gid(gids.next_marker())


def _keep(table: Table) -> list:
    # points flagged unattainable by the pipeline are never drawn
    if "unattainable" in table.names():
        return [r for r in table.rows if not r.get("unattainable")]
    return table.rows


def _grouped(rows: list, key: str) -> list:
    order: list = []
    bucket: dict = {}
    for r in rows:
        k = r[key]
        if k not in bucket:
            bucket[k] = []
            order.append(k)
        bucket[k].append(r)
    return [(k, bucket[k]) for k in order]


def _color(i: int) -> str:
    return _COLORS[i % len(_COLORS)]


# ---------------------------------------------------------------------------
# one draw function per figure id

_FIGURES: dict = {}


def _figure(figure_id: str, needs: tuple, scales: dict, extra: tuple = ()):
    def deco(fn):
        _FIGURES[figure_id] = {"draw": fn, "needs": needs,
                               "scales": scales, "extra": extra}
        return fn
    return deco


@_figure("fig2a", needs=("kappa", "step", "qfi_per_step", "n_opt_pred"),
         scales={"x": "linear", "y": "linear"})
def _fig2a(ax, gids, t: Table):
    sym = t.symbol("kappa")
    for i, (kappa, rows) in enumerate(_grouped(_keep(t), "kappa")):
        c = _color(i)
        _series(ax, gids, [r["step"] for r in rows],
                [r["qfi_per_step"] for r in rows],
                color=c, label=f"{sym} = {kappa:g}")
        # peak position comes with the dataset, one guide per curve
        _vmarker(ax, gids, rows[0]["n_opt_pred"], color=c)
    ax.set_xlabel(t.axis_label("step"))
    ax.set_ylabel(t.axis_label("qfi_per_step"))


@_figure("fig2b", needs=("phi", "inv_kappa", "raw_gates", "true_gates"),
         scales={"x": "log", "y": "log"})
def _fig2b(ax, gids, t: Table):
    for i, (phi, rows) in enumerate(_grouped(_keep(t), "phi")):
        c = _color(i)
        x = [r["inv_kappa"] for r in rows]
        _series(ax, gids, x, [r["true_gates"] for r in rows], color=c,
                label=f"{t.symbol('true_gates')}, {t.symbol('phi')} = {phi:g}")
        _series(ax, gids, x, [r["raw_gates"] for r in rows], color=c,
                linestyle="--",
                label=f"{t.symbol('raw_gates')}, {t.symbol('phi')} = {phi:g}")
    ax.set_xlabel(t.axis_label("inv_kappa"))
    ax.set_ylabel(t.meta("true_gates").get("unit", ""))


@_figure("fig3a", needs=("inv_m_bar", "resource_true", "resource_raw"),
         scales={"x": "log", "y": "log"})
def _fig3a(ax, gids, t: Table):
    rows = _keep(t)
    x = [r["inv_m_bar"] for r in rows]
    _series(ax, gids, x, [r["resource_true"] for r in rows],
            color=_color(0), label=t.symbol("resource_true"))
    _series(ax, gids, x, [r["resource_raw"] for r in rows],
            color=_color(1), linestyle="--", label=t.symbol("resource_raw"))
    # sweet-spot crosshair; the reciprocal moves the constant onto this axis
    m_bar0 = t.constants.get("m_bar0")
    r0 = t.constants.get("r0")
    if m_bar0:
        _vmarker(ax, gids, 1.0 / m_bar0, color="0.3")
    if r0:
        _hmarker(ax, gids, r0, color="0.3")
    ax.set_xlabel(t.axis_label("inv_m_bar"))
    ax.set_ylabel(t.axis_label("resource_true"))


@_figure("fig3b", needs=("delta_sq", "inv_m_bar", "resource_true"),
         scales={"x": "log", "y": "log"}, extra=("inv_m_bar0", "r0"))
def _fig3b(ax, gids, t: Table, *overlays):
    sym = t.symbol("delta_sq")
    for i, (dsq, rows) in enumerate(_grouped(_keep(t), "delta_sq")):
        _series(ax, gids, [r["inv_m_bar"] for r in rows],
                [r["resource_true"] for r in rows],
                color=_color(i), label=f"{sym} = {dsq:g}")
    for sat in overlays:
        # saturation locus across targets, drawn as a guide
        line, = ax.plot([r["inv_m_bar0"] for r in sat.rows],
                        [r["r0"] for r in sat.rows],
                        linestyle=":", color="0.2")
        line.set_gid(gids.next_marker())
    ax.set_xlabel(t.axis_label("inv_m_bar"))
    ax.set_ylabel(t.axis_label("resource_true"))


@_figure("fig4", needs=("prep_qubits", "inv_m_bar", "resource_exact",
                        "resource_approx"),
         scales={"x": "log", "y": "log"})
def _fig4(ax, gids, t: Table):
    sym = t.symbol("prep_qubits")
    for i, (m_s, rows) in enumerate(_grouped(_keep(t), "prep_qubits")):
        c = _color(i)
        x = [r["inv_m_bar"] for r in rows]
        _series(ax, gids, x, [r["resource_exact"] for r in rows], color=c,
                label=f"{sym} = {m_s:g}")
        _series(ax, gids, x, [r["resource_approx"] for r in rows], color=c,
                linestyle="--")
    ax.set_xlabel(t.axis_label("inv_m_bar"))
    ax.set_ylabel(t.axis_label("resource_exact"))


@_figure("fig5", needs=("omega1_ratio", "inv_m_bar", "resource_gate_opt",
                        "resource_opt"),
         scales={"x": "log", "y": "log"})
def _fig5(ax, gids, t: Table):
    sym = t.symbol("omega1_ratio")
    for i, (omega, rows) in enumerate(_grouped(_keep(t), "omega1_ratio")):
        c = _color(i)
        x = [r["inv_m_bar"] for r in rows]
        _series(ax, gids, x, [r["resource_gate_opt"] for r in rows], color=c,
                label=f"{t.symbol('resource_gate_opt')}, {sym} = {omega:g}")
        _series(ax, gids, x, [r["resource_opt"] for r in rows], color=c,
                linestyle="--",
                label=f"{t.symbol('resource_opt')}, {sym} = {omega:g}")
    ax.set_xlabel(t.axis_label("inv_m_bar"))
    ax.set_ylabel(t.axis_label("resource_opt"))


@_figure("fig7", needs=("m_bar", "g", "step", "pct_error"),
         scales={"x": "linear", "y": "log"})
def _fig7(ax, gids, t: Table):
    rows = [r for r in _keep(t) if r["pct_error"] is not None]
    m_sym, g_sym = t.symbol("m_bar"), t.symbol("g")
    groups = _grouped([dict(r, _k=(r["m_bar"], r["g"])) for r in rows], "_k")
    for i, ((m_bar, g), sub) in enumerate(groups):
        _series(ax, gids, [r["step"] for r in sub],
                [r["pct_error"] for r in sub], color=_color(i),
                label=f"{m_sym} = {m_bar:g}, {g_sym} = {g:g}")
    ax.set_xlabel(t.axis_label("step"))
    ax.set_ylabel(t.axis_label("pct_error"))


# ---------------------------------------------------------------------------
# entry point


def _require(table: Table, needed: tuple):
    have = set(table.names())
    missing = [n for n in needed if n not in have]
    if missing:
        raise SchemaError(f"{table.path}: missing columns "
                          f"{', '.join(missing)}; this figure expects "
                          f"{', '.join(needed)}")


def render(spec: FigureSpec):
    """Draw the figure and write it to spec.out_path.

    Returns the output path, or None (with a warning) when the dataset
    has no rows to draw.
    """
    entry = _FIGURES.get(spec.figure)
    if entry is None:
        raise SchemaError(f"unknown figure {spec.figure!r}; known ids: "
                          + ", ".join(sorted(_FIGURES)))
    if not spec.csv_paths:
        raise SchemaError("no input dataset given")
    tables = [load_table(p) for p in spec.csv_paths]
    _require(tables[0], entry["needs"])
    for t in tables[1:]:
        _require(t, entry["extra"])
    if not any(t.rows for t in tables):
        warnings.warn(f"{spec.csv_paths[0]}: empty grid, nothing to draw")
        return None

    scales = dict(entry["scales"])
    scales.update(spec.scales)
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.4), constrained_layout=True)
        try:
            entry["draw"](ax, _Gids(), *tables)
            ax.set_xscale(scales["x"])
            ax.set_yscale(scales["y"])
            if ax.get_legend_handles_labels()[0]:
                legend = ax.legend(fontsize=8, frameon=False)
                # legend proxies copy artist properties; keep ids unique
                for handle in legend.legend_handles:
                    handle.set_gid(None)
            if spec.out_path.lower().endswith(".svg"):
                fig.savefig(spec.out_path, format="svg",
                            metadata={"Date": None})
            else:
                fig.savefig(spec.out_path, dpi=200)
        finally:
            plt.close(fig)
    return spec.out_path


def known_figures() -> list:
    return sorted(_FIGURES)
