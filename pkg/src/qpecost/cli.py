"""Command-line interface: figure datasets, parameter sweeps, reports.

Every subcommand writes one or more datasets into the output directory:
a CSV (or JSON) table plus a sidecar <name>.schema.json documenting each
column (name, unit, symbol) and the exact configuration that produced it.
Output is byte-identical for identical (config, seed), including across
worker counts: grid points are evaluated independently and gathered in
grid order.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .bloch import BlochVector
from .channels import (FieldParams, delta_of_g, field_channel, lambdas_of_map,
                       vmf_channel)
from .config import ExperimentConfig, validate_config
from .errors import (ConfigError, DomainError, NumericError,
                     UnattainableTargetError)
from .fisher import apply_corrections, default_n_max, sequence_qfi, \
    sequence_qfi_approx_field
from .protocol import (Target, optimal_resource, raw_complexity,
                       resource_of_plan, sweet_spot, true_complexity,
                       approx_resource_with_cooling)
from .thermo import state_prep_cost, work_per_qubit

ENV_OUT_DIR = "QPECOST_OUT_DIR"
# Plateau detection: R rising past this multiple of the plateau median
# marks the empirical sweet-spot onset.
ONSET_FACTOR = 1.2
_SWEEP_GRID_POINTS = 28


def _col(name: str, unit: str, symbol: str, description: str) -> dict:
    return {"name": name, "unit": unit, "symbol": symbol,
            "description": description}


# ---------------------------------------------------------------------------
# deterministic writers


def _fmt_csv(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        # repr gives the shortest round-trip form, stable across runs.
        return repr(float(v))
    return str(v)


def _json_safe(v):
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    raise TypeError(f"unexpected cell type {type(v).__name__}")


def write_dataset(out_dir: str, name: str, columns: list[dict], rows,
                  cfg: ExperimentConfig, constants: dict | None = None) -> str:
    rows = [list(r) for r in rows]
    base = os.path.join(out_dir, name)
    if cfg.format == "csv":
        path = base + ".csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([c["name"] for c in columns])
            for row in rows:
                writer.writerow([_fmt_csv(v) for v in row])
    else:
        path = base + ".json"
        doc = {
            "columns": [c["name"] for c in columns],
            "rows": [[_json_safe(v) for v in row] for row in rows],
        }
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    schema = {
        "dataset": name,
        "data_file": os.path.basename(path),
        "columns": columns,
        "constants": {k: _json_safe(v) for k, v in (constants or {}).items()},
        "config": cfg.to_dict(),
        "seed": cfg.seed,
    }
    with open(base + ".schema.json", "w", encoding="utf-8", newline="") as fh:
        json.dump(schema, fh, indent=2)
        fh.write("\n")
    print(f"wrote {path}")
    return path


# ---------------------------------------------------------------------------
# per-point evaluation (top level so worker processes can import it)


def _series_for(cfg: ExperimentConfig):
    """Information series for the configured model, corrections applied.

    Returns (series, per-step-peak estimate used for the default length).
    """
    if cfg.model == "vmf":
        ch = vmf_channel(cfg.vmf_params())
        s0 = BlochVector(1.0, 0.0, 0.0)
        lam_perp, _ = lambdas_of_map(ch.map)
        est = -1.0 / (2.0 * np.log(lam_perp)) if lam_perp < 1.0 else 64.0
    else:
        p = cfg.field_params()
        ch = field_channel(p)
        s0 = BlochVector(0.0, 0.0, 1.0)
        delta = delta_of_g(p.g, p.k_m, p.k_theta)
        est = p.m_bar / delta if delta > 0 else 64.0
    n_max = cfg.n_max if cfg.n_max is not None else default_n_max(est)
    series = sequence_qfi(ch, s0, n_max)
    if cfg.prep_qubits or cfg.meas_qubits:
        series = apply_corrections(series, cfg.correction_spec())
    return series, est


def _point_e_ext(cfg: ExperimentConfig, axis: str) -> float:
    # Sweeping a thermodynamic axis implies the matching external cost;
    # every other axis charges the configured e_ext verbatim.
    if axis == "omega1_ratio":
        return cfg.omega1_ratio
    if axis == "prep_qubits" and cfg.prep_qubits >= 1:
        return state_prep_cost(cfg.thermal_env(), cfg.prep_qubits)
    return cfg.e_ext


def _eval_sweep_point(payload: dict) -> dict:
    base = ExperimentConfig.from_dict(payload["config"])
    axis = payload["axis"]
    value = payload["value"]
    typed = int(value) if axis == "prep_qubits" else float(value)
    cfg = base.override(**{axis: typed})

    record: dict = {key: None for key in (
        "n_max_used", "n_opt", "f_n_opt", "raw_gates", "n_raw",
        "true_gates", "n_c", "full_rounds_c", "tail_c", "rounds_c",
        "rounds_literal_c", "n_r", "rounds_r", "resource_c", "resource_r",
        "gate_energy_r", "external_energy_r", "resource_raw",
        "m_bar0", "c0", "r0",
    )}
    record["value"] = typed
    record["unattainable"] = False
    if cfg.model == "field":
        record["flags"] = "; ".join(cfg.field_params().validity_warnings())
    else:
        record["flags"] = ""

    series, _ = _series_for(cfg)
    t = cfg.target()
    record["n_max_used"] = series.n_max
    n_opt = series.argmax_per_step()
    record["n_opt"] = n_opt
    record["f_n_opt"] = series.value_at(n_opt)
    try:
        c, n_raw = raw_complexity(series, t)
        gates, n_c, plan_c = true_complexity(series, t)
    except UnattainableTargetError:
        record["unattainable"] = True
        return record
    record.update(raw_gates=c, n_raw=n_raw, true_gates=gates, n_c=n_c,
                  full_rounds_c=plan_c.full_rounds, tail_c=plan_c.tail_steps,
                  rounds_c=plan_c.rounds, rounds_literal_c=plan_c.rounds_literal)
    if cfg.model == "field":
        e_ext = _point_e_ext(cfg, axis)
        r_opt, n_r, plan_r = optimal_resource(series, t, cfg.m_bar, e_ext)
        breakdown_r = resource_of_plan(plan_r, cfg.m_bar, e_ext)
        record.update(
            resource_c=resource_of_plan(plan_c, cfg.m_bar, e_ext).total,
            resource_r=r_opt, n_r=n_r, rounds_r=plan_r.rounds,
            gate_energy_r=breakdown_r.gate_energy,
            external_energy_r=breakdown_r.external_energy,
            resource_raw=c * cfg.m_bar,
        )
        spot = sweet_spot(cfg.g, t, cfg.k_m, cfg.k_theta)
        record.update(m_bar0=spot.m_bar0, c0=spot.c0, r0=spot.r0)
    return record


def _pmap(items: list[dict], workers: int) -> list[dict]:
    if workers <= 1 or len(items) <= 1:
        return [_eval_sweep_point(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval_sweep_point, items, chunksize=1))


def _points(cfg: ExperimentConfig, axis: str, values) -> list[dict]:
    base = cfg.to_dict()
    return [{"config": base, "axis": axis, "value": float(v)} for v in values]


def _default_m_bar_grid(cfg: ExperimentConfig, t: Target) -> np.ndarray:
    spot = sweet_spot(cfg.g, t, cfg.k_m, cfg.k_theta)
    return np.geomspace(50.0, 4.0 * spot.m_bar0, _SWEEP_GRID_POINTS)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_sweep(cfg: ExperimentConfig, out_dir: str):
    if cfg.sweep is None:
        raise ConfigError("the sweep subcommand needs a 'sweep' config section")
    values = cfg.sweep.grid.build()
    axis = cfg.sweep.axis
    records = _pmap(_points(cfg, axis, values), cfg.workers)
    keys = ["value", "n_max_used", "n_opt", "f_n_opt", "raw_gates", "n_raw",
            "true_gates", "n_c", "full_rounds_c", "tail_c", "rounds_c",
            "rounds_literal_c", "resource_c", "n_r", "rounds_r", "resource_r",
            "gate_energy_r", "external_energy_r", "resource_raw",
            "m_bar0", "c0", "r0", "unattainable", "flags"]
    columns = [
        _col(axis, _AXIS_UNITS.get(axis, "dimensionless"), axis,
             "swept parameter value"),
        _col("n_max_used", "steps", "N_max", "series length evaluated"),
        _col("n_opt", "steps", "N_opt", "argmax of F_N/N"),
        _col("f_n_opt", "1/rad^2", "F_{N_opt}", "information at the peak"),
        _col("raw_gates", "gates", "c", "continuous-relaxation gate count"),
        _col("n_raw", "steps", "N_opt", "sequence length minimizing N/F_N"),
        _col("true_gates", "gates", "C", "integer-feasible gate count"),
        _col("n_c", "steps", "N_C", "sequence length of the gate optimum"),
        _col("full_rounds_c", "rounds", "Q_N", "full rounds at N_C"),
        _col("tail_c", "steps", "N_0", "tail length at N_C"),
        _col("rounds_c", "rounds", "Q_N+[N_0>0]",
             "rounds that actually run at N_C"),
        _col("rounds_literal_c", "rounds", "Q_N+1",
             "always-charge-the-tail round count at N_C (flagged variant)"),
        _col("resource_c", "photons", "R_{N_C}", "energy of the gate-optimal plan"),
        _col("n_r", "steps", "N_R", "sequence length of the energy optimum"),
        _col("rounds_r", "rounds", "", "rounds that actually run at N_R"),
        _col("resource_r", "photons", "R_{N_R}", "minimal total energy"),
        _col("gate_energy_r", "photons", "m_bar*C", "photon part at N_R"),
        _col("external_energy_r", "photons", "rounds*E_ext",
             "external part at N_R"),
        _col("resource_raw", "photons", "m_bar*c", "energy of the raw count"),
        _col("m_bar0", "photons", "m_bar_0", "sweet-spot photon budget"),
        _col("c0", "gates", "C_0", "sweet-spot gate count"),
        _col("r0", "photons", "R_0", "sweet-spot energy"),
        _col("unattainable", "flag", "", "1 when the target cannot be met"),
        _col("flags", "text", "", "validity warnings for this point"),
    ]
    rows = [[r[k] for k in keys] for r in records]
    write_dataset(out_dir, "sweep", columns, rows, cfg)


_AXIS_UNITS = {
    "kappa": "dimensionless",
    "m_bar": "photons",
    "delta_sq": "rad^2",
    "prep_qubits": "qubits",
    "omega1_ratio": "photon energy",
}


def _cmd_fig2(cfg: ExperimentConfig, out_dir: str):
    # Panel a: information per step for three axis concentrations.
    rows_a = []
    for kappa in (20.0, 50.0, 100.0):
        c2 = cfg.override(model="vmf", kappa=kappa)
        ch = vmf_channel(c2.vmf_params())
        lam_perp, _ = lambdas_of_map(ch.map)
        pred = -1.0 / (2.0 * np.log(lam_perp))
        n_max = c2.n_max if c2.n_max is not None else default_n_max(pred)
        series = sequence_qfi(ch, BlochVector(1.0, 0.0, 0.0), n_max)
        per = series.per_step()
        n_pred = int(round(pred))
        for i in range(n_max):
            rows_a.append([kappa, i + 1, float(series.values[i]),
                           float(per[i]), n_pred])
    columns_a = [
        _col("kappa", "dimensionless", "kappa", "axis concentration"),
        _col("step", "steps", "N", "sequence length"),
        _col("qfi", "1/rad^2", "F_N", "information after N steps"),
        _col("qfi_per_step", "1/rad^2", "F_N/N", "information per gate"),
        _col("n_opt_pred", "steps", "-1/(2 ln lambda_perp)",
             "closed-form peak location"),
    ]
    write_dataset(out_dir, "fig2a", columns_a, rows_a, cfg)

    # Panel b: gate counts against axis spread, for two nominal phases.
    inv_kappa = np.geomspace(1e-3, 0.3, 40)
    rows_b = []
    for phi in (0.5, 0.25):
        base = cfg.override(model="vmf", phi=phi)
        points = [{"config": base.to_dict(), "axis": "kappa", "value": 1.0 / ik}
                  for ik in inv_kappa]
        records = _pmap(points, cfg.workers)
        for ik, rec in zip(inv_kappa, records):
            rows_b.append([phi, float(ik), rec["value"], rec["raw_gates"],
                           rec["true_gates"], rec["n_c"],
                           rec["full_rounds_c"], rec["unattainable"]])
    columns_b = [
        _col("phi", "rad", "phi", "nominal phase per step"),
        _col("inv_kappa", "dimensionless", "1/kappa", "axis spread"),
        _col("kappa", "dimensionless", "kappa", "axis concentration"),
        _col("raw_gates", "gates", "c", "continuous-relaxation gate count"),
        _col("true_gates", "gates", "C", "integer-feasible gate count"),
        _col("n_c", "steps", "N_C", "sequence length of the optimum"),
        _col("full_rounds_c", "rounds", "Q_N", "full rounds at the optimum"),
        _col("unattainable", "flag", "", "1 when the target cannot be met"),
    ]
    write_dataset(out_dir, "fig2b", columns_b, rows_b, cfg)


_FIG3_COLUMNS = [
    _col("inv_m_bar", "1/photons", "1/m_bar", "inverse photon budget"),
    _col("m_bar", "photons", "m_bar", "photon budget per gate"),
    _col("resource_true", "photons", "m_bar*C", "energy of the true complexity"),
    _col("resource_raw", "photons", "m_bar*c", "energy of the raw complexity"),
    _col("gates_true", "gates", "C", "integer-feasible gate count"),
    _col("gates_raw", "gates", "c", "continuous-relaxation gate count"),
    _col("n_c", "steps", "N_C", "sequence length of the optimum"),
    _col("unattainable", "flag", "", "1 when the target cannot be met"),
]


def _field_only(cfg: ExperimentConfig, command: str) -> ExperimentConfig:
    if cfg.model != "field":
        raise ConfigError(f"{command} needs the field model")
    return cfg


def _cmd_fig3(cfg: ExperimentConfig, out_dir: str):
    cfg = _field_only(cfg, "fig3")
    t = cfg.target()
    spot = sweet_spot(cfg.g, t, cfg.k_m, cfg.k_theta)

    grid = _default_m_bar_grid(cfg, t)
    records = _pmap(_points(cfg, "m_bar", grid), cfg.workers)
    rows = [[1.0 / r["value"], r["value"], r["resource_c"], r["resource_raw"],
             r["true_gates"], r["raw_gates"], r["n_c"], r["unattainable"]]
            for r in records]
    write_dataset(out_dir, "fig3a", _FIG3_COLUMNS, rows, cfg,
                  constants={"m_bar0": spot.m_bar0, "c0": spot.c0,
                             "r0": spot.r0})

    # Panel b: the same curve for a spread of targets, plus the closed-form
    # saturation locus.
    rows_b = []
    for dsq in (1e-3, 1e-4, 1e-5):
        c2 = cfg.override(delta_sq=dsq)
        t2 = c2.target()
        grid2 = _default_m_bar_grid(c2, t2)
        recs = _pmap(_points(c2, "m_bar", grid2), c2.workers)
        for rec in recs:
            rows_b.append([dsq, 1.0 / rec["value"], rec["value"],
                           rec["resource_c"], rec["unattainable"]])
    columns_b = [
        _col("delta_sq", "rad^2", "delta^2", "target variance"),
        _col("inv_m_bar", "1/photons", "1/m_bar", "inverse photon budget"),
        _col("m_bar", "photons", "m_bar", "photon budget per gate"),
        _col("resource_true", "photons", "m_bar*C",
             "energy of the true complexity"),
        _col("unattainable", "flag", "", "1 when the target cannot be met"),
    ]
    write_dataset(out_dir, "fig3b", columns_b, rows_b, cfg)

    sat_rows = []
    for dsq in np.geomspace(1e-5, 1e-3, 25):
        s = sweet_spot(cfg.g, Target(float(dsq)), cfg.k_m, cfg.k_theta)
        sat_rows.append([float(dsq), s.m_bar0, 1.0 / s.m_bar0, s.r0])
    sat_columns = [
        _col("delta_sq", "rad^2", "delta^2", "target variance"),
        _col("m_bar0", "photons", "m_bar_0", "saturation photon budget"),
        _col("inv_m_bar0", "1/photons", "1/m_bar_0",
             "inverse saturation photon budget"),
        _col("r0", "photons", "R_0", "saturation energy"),
    ]
    write_dataset(out_dir, "fig3b_saturation", sat_columns, sat_rows, cfg)


def _cmd_fig4(cfg: ExperimentConfig, out_dir: str):
    cfg = _field_only(cfg, "fig4")
    t = cfg.target()
    env = cfg.thermal_env()
    w_bar = work_per_qubit(env)
    grid = _default_m_bar_grid(cfg, t)
    rows = []
    for m_s in (1, 2, 3, 5):
        c2 = cfg.override(prep_qubits=m_s,
                          e_ext=state_prep_cost(env, m_s))
        records = _pmap(_points(c2, "m_bar", grid), c2.workers)
        for rec in records:
            m_bar = rec["value"]
            approx = approx_resource_with_cooling(m_bar, cfg.g, t, m_s,
                                                  cfg.xi, w_bar)
            rows.append([m_s, 1.0 / m_bar, m_bar, rec["resource_r"], approx,
                         rec["unattainable"]])
    columns = [
        _col("prep_qubits", "qubits", "M_s", "cooling qubits per round"),
        _col("inv_m_bar", "1/photons", "1/m_bar", "inverse photon budget"),
        _col("m_bar", "photons", "m_bar", "photon budget per gate"),
        _col("resource_exact", "photons", "R_{N_R}",
             "energy optimum with the corrected series"),
        _col("resource_approx", "photons", "R(approx)",
             "closed-form estimate with cooling"),
        _col("unattainable", "flag", "", "1 when the target cannot be met"),
    ]
    write_dataset(out_dir, "fig4", columns, rows, cfg,
                  constants={"w_bar": w_bar, "xi": cfg.xi})


def _cmd_fig5(cfg: ExperimentConfig, out_dir: str):
    cfg = _field_only(cfg, "fig5")
    t = cfg.target()
    grid = _default_m_bar_grid(cfg, t)
    rows = []
    for omega in (10.0, 50.0, 200.0):
        c2 = cfg.override(omega1_ratio=omega, e_ext=omega)
        records = _pmap(_points(c2, "m_bar", grid), c2.workers)
        for rec in records:
            rows.append([omega, 1.0 / rec["value"], rec["value"],
                         rec["resource_c"], rec["resource_r"],
                         rec["rounds_c"], rec["rounds_r"],
                         rec["unattainable"]])
    columns = [
        _col("omega1_ratio", "photon energy", "omega_1/omega",
             "pointer gap over photon energy (external cost per round)"),
        _col("inv_m_bar", "1/photons", "1/m_bar", "inverse photon budget"),
        _col("m_bar", "photons", "m_bar", "photon budget per gate"),
        _col("resource_gate_opt", "photons", "R_{N_C}",
             "energy when minimizing gates"),
        _col("resource_opt", "photons", "R_{N_R}",
             "energy when minimizing energy"),
        _col("rounds_gate_opt", "rounds", "", "executed rounds at N_C"),
        _col("rounds_opt", "rounds", "", "executed rounds at N_R"),
        _col("unattainable", "flag", "", "1 when the target cannot be met"),
    ]
    write_dataset(out_dir, "fig5", columns, rows, cfg)


def _cmd_fig7(cfg: ExperimentConfig, out_dir: str):
    cfg = _field_only(cfg, "fig7")
    rows = []
    for m_bar in (200.0, 500.0, 1000.0):
        for g in (0.5, 1.5, 2.5):
            p = FieldParams(m_bar, g, cfg.k_m, cfg.k_theta)
            delta = delta_of_g(g, cfg.k_m, cfg.k_theta)
            limit = 2 * int(round(m_bar / delta))
            ch = field_channel(p)
            series = sequence_qfi(ch, BlochVector(0.0, 0.0, 1.0), limit)
            stride = max(1, limit // 400)
            for n in range(1, limit + 1, stride):
                exact = series.value_at(n)
                approx = sequence_qfi_approx_field(p, n)
                pct = abs(exact - approx) / exact * 100.0 if exact > 0 else None
                rows.append([m_bar, g, n, exact, approx, pct])
    columns = [
        _col("m_bar", "photons", "m_bar", "photon budget per gate"),
        _col("g", "rad", "g", "coupling"),
        _col("step", "steps", "N", "sequence length"),
        _col("qfi_exact", "1/rad^2", "F_N", "propagated information"),
        _col("qfi_approx", "1/rad^2", "N^2 r^{2N}", "closed-form estimate"),
        _col("pct_error", "percent", "", "relative deviation of the estimate"),
    ]
    write_dataset(out_dir, "fig7", columns, rows, cfg)


def _cmd_sweet_spot(cfg: ExperimentConfig, out_dir: str):
    cfg = _field_only(cfg, "sweet-spot")
    t = cfg.target()
    spot = sweet_spot(cfg.g, t, cfg.k_m, cfg.k_theta)
    grid = _default_m_bar_grid(cfg, t)
    records = _pmap(_points(cfg, "m_bar", grid), cfg.workers)
    resources = np.array([r["resource_c"] for r in records], dtype=float)
    plateau = resources[grid <= spot.m_bar0]
    median = float(np.median(plateau))
    onset = None
    for m_bar, res in zip(grid, resources):
        if res > ONSET_FACTOR * median:
            onset = float(m_bar)
            break
    row = [cfg.g, cfg.delta_sq, spot.m_bar0, spot.c0, spot.r0, median,
           onset, (onset / spot.m_bar0 if onset is not None else None)]
    columns = [
        _col("g", "rad", "g", "coupling"),
        _col("delta_sq", "rad^2", "delta^2", "target variance"),
        _col("m_bar0", "photons", "m_bar_0", "sweet-spot photon budget"),
        _col("c0", "gates", "C_0", "sweet-spot gate count"),
        _col("r0", "photons", "R_0", "sweet-spot energy"),
        _col("plateau_median", "photons", "", "median energy on the plateau"),
        _col("onset_m_bar", "photons", "",
             f"first grid point with energy above {ONSET_FACTOR} x median"),
        _col("onset_ratio", "dimensionless", "", "onset over m_bar_0"),
    ]
    write_dataset(out_dir, "sweet_spot", columns, [row], cfg)


def _cmd_validate(cfg: ExperimentConfig) -> int:
    errors, warnings = validate_config(cfg)
    for msg in errors:
        print(f"error: {msg}")
    for msg in warnings:
        print(f"warning: {msg}")
    if not errors and not warnings:
        print("ok")
    return 1 if errors else 0


# ---------------------------------------------------------------------------
# argument plumbing


class _Parser(argparse.ArgumentParser):
    # argparse exits the process on error; the contract wants exit code 1
    # through the ConfigError path instead.
    def error(self, message):
        raise ConfigError(message)


_COMMANDS = {
    "fig2": _cmd_fig2,
    "fig3": _cmd_fig3,
    "fig4": _cmd_fig4,
    "fig5": _cmd_fig5,
    "fig7": _cmd_fig7,
    "sweep": _cmd_sweep,
    "sweet-spot": _cmd_sweet_spot,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="JSON configuration file")
    common.add_argument("--out", metavar="PATH",
                        help="output directory (default: config value or .)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--workers", type=int, metavar="N")
    common.add_argument("--seed", type=int, metavar="U64")
    common.add_argument("--n-max", dest="n_max", type=int, metavar="N")
    parser = _Parser(prog="qpecost",
                     description="Phase-estimation complexity and energy "
                                 "cost datasets")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)
    for name in (*_COMMANDS, "validate"):
        sub.add_parser(name, parents=[common])
    return parser


def _resolve_out_dir(out: str) -> str:
    env = os.environ.get(ENV_OUT_DIR)
    if env and not os.path.isabs(out):
        out = os.path.join(env, out)
    os.makedirs(out, exist_ok=True)
    return out


def _load_config(args) -> ExperimentConfig:
    cfg = (ExperimentConfig.from_json_file(args.config)
           if args.config else ExperimentConfig())
    return cfg.override(out=args.out, format=args.format, seed=args.seed,
                        workers=args.workers, n_max=args.n_max)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _load_config(args)
        if args.command == "validate":
            return _cmd_validate(cfg)
        errors, warnings = validate_config(cfg)
        if errors:
            raise ConfigError("; ".join(errors))
        for msg in warnings:
            print(f"warning: {msg}", file=sys.stderr)
        out_dir = _resolve_out_dir(cfg.out)
        _COMMANDS[args.command](cfg, out_dir)
        return 0
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
