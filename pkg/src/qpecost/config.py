"""Experiment configuration: JSON document, flag overrides, validation.

A single flat JSON object configures every subcommand; CLI flags override
individual fields, and the output directory may come from the environment
(QPECOST_OUT_DIR) when the --out path is relative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .channels import FieldParams, VmfParams
from .errors import ConfigError, DomainError
from .fisher import CorrectionSpec
from .protocol import Target
from .thermo import ThermalEnv

SWEEP_AXES = ("kappa", "m_bar", "delta_sq", "prep_qubits", "omega1_ratio")
_AXIS_MODEL = {"kappa": "vmf", "m_bar": "field"}


@dataclass(frozen=True)
class GridSpec:
    """Sweep grid: linspace/logspace endpoints or an explicit value list."""

    kind: str = "logspace"
    start: float | None = None
    stop: float | None = None
    num: int | None = None
    values: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        if not isinstance(d, dict):
            raise ConfigError("grid must be an object")
        kind = d.get("kind", "logspace")
        if kind == "list":
            vals = d.get("values")
            if not isinstance(vals, (list, tuple)) or not vals:
                raise ConfigError("list grid needs a nonempty 'values' array")
            return cls(kind="list", values=tuple(float(v) for v in vals))
        if kind not in ("linspace", "logspace"):
            raise ConfigError(f"unknown grid kind {kind!r}")
        try:
            start, stop = float(d["start"]), float(d["stop"])
            num = int(d["num"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{kind} grid needs numeric start/stop/num") from exc
        return cls(kind=kind, start=start, stop=stop, num=num)

    def build(self) -> np.ndarray:
        if self.kind == "list":
            vals = np.asarray(self.values, dtype=float)
        elif self.kind == "linspace":
            vals = np.linspace(self.start, self.stop, self.num)
        else:
            if self.start <= 0 or self.stop <= 0:
                raise ConfigError("logspace grid endpoints must be positive")
            vals = np.geomspace(self.start, self.stop, self.num)
        if vals.size == 0:
            raise ConfigError("sweep grid is empty")
        if not np.all(np.isfinite(vals)):
            raise ConfigError("sweep grid contains non-finite values")
        if vals.size > 1:
            diffs = np.diff(vals)
            if not (np.all(diffs > 0) or np.all(diffs < 0)):
                raise ConfigError("sweep grid must be strictly monotone")
        return vals

    def to_dict(self) -> dict:
        if self.kind == "list":
            return {"kind": "list", "values": list(self.values)}
        return {"kind": self.kind, "start": self.start, "stop": self.stop,
                "num": self.num}


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: GridSpec

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        if not isinstance(d, dict):
            raise ConfigError("sweep must be an object")
        axis = d.get("axis")
        if axis not in SWEEP_AXES:
            raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
        if "grid" not in d:
            raise ConfigError("sweep needs a grid")
        return cls(axis=axis, grid=GridSpec.from_dict(d["grid"]))

    def to_dict(self) -> dict:
        return {"axis": self.axis, "grid": self.grid.to_dict()}


@dataclass(frozen=True)
class ExperimentConfig:
    """Full experiment description; defaults follow the reference scenario."""

    model: str = "field"
    # vmf model
    kappa: float = 50.0
    phi: float = 0.5
    # field model
    m_bar: float = 300.0
    g: float = 2.5
    k_m: float = 1.0
    k_theta: float = 1.0
    # target and protocol
    delta_sq: float = 1e-4
    e_ext: float = 0.0
    n_max: int | None = None
    # thermodynamics
    prep_qubits: int = 0
    meas_qubits: int = 0
    xi: float = 0.2
    xi_meas: float | None = None
    omega0_ratio: float = 1.0
    omega1_ratio: float = 1.0
    # sweep and output plumbing
    sweep: SweepSpec | None = None
    out: str = "."
    format: str = "csv"
    seed: int = 0
    workers: int = 1

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigError(f"unknown config fields: {', '.join(unknown)}")
        kwargs = dict(d)
        if "sweep" in kwargs and kwargs["sweep"] is not None:
            kwargs["sweep"] = SweepSpec.from_dict(kwargs["sweep"])
        try:
            cfg = cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(f"bad config value: {exc}") from exc
        cfg._basic_checks()
        return cfg

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def _basic_checks(self):
        if self.model not in ("vmf", "field"):
            raise ConfigError(f"model must be 'vmf' or 'field', got {self.model!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        if self.n_max is not None and (not isinstance(self.n_max, int) or self.n_max < 1):
            raise ConfigError("n_max must be a positive integer")
        if self.sweep is not None:
            needed = _AXIS_MODEL.get(self.sweep.axis)
            if needed and needed != self.model:
                raise ConfigError(
                    f"sweep axis {self.sweep.axis!r} requires model {needed!r}"
                )

    def override(self, **kwargs) -> "ExperimentConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        cfg = replace(self, **kwargs)
        cfg._basic_checks()
        return cfg

    # typed views ----------------------------------------------------------

    def target(self) -> Target:
        return Target(self.delta_sq)

    def vmf_params(self) -> VmfParams:
        return VmfParams(self.kappa, self.phi)

    def field_params(self) -> FieldParams:
        return FieldParams(self.m_bar, self.g, self.k_m, self.k_theta)

    def model_params(self):
        return self.vmf_params() if self.model == "vmf" else self.field_params()

    def thermal_env(self) -> ThermalEnv:
        return ThermalEnv(self.xi, self.omega0_ratio, self.omega1_ratio)

    def correction_spec(self) -> CorrectionSpec:
        return CorrectionSpec(self.prep_qubits, self.meas_qubits,
                              self.xi, self.xi_meas)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "sweep":
                v = v.to_dict() if v is not None else None
            out[f.name] = v
        return out


def validate_config(cfg: ExperimentConfig) -> tuple[list[str], list[str]]:
    """All hard violations and soft validity warnings, as message lists."""
    errors: list[str] = []
    warnings: list[str] = []

    def check(build, *args):
        try:
            return build(*args)
        except (DomainError, ConfigError) as exc:
            errors.append(str(exc))
            return None

    check(cfg.target)
    check(cfg.thermal_env)
    check(cfg.correction_spec)
    if cfg.model == "vmf":
        check(cfg.vmf_params)
    else:
        p = check(cfg.field_params)
        if p is not None:
            warnings.extend(p.validity_warnings())
    if cfg.e_ext < 0:
        errors.append("e_ext must be nonnegative")
    if cfg.sweep is not None:
        try:
            values = cfg.sweep.grid.build()
        except ConfigError as exc:
            errors.append(str(exc))
        else:
            if cfg.sweep.axis == "prep_qubits":
                bad = [v for v in values if v < 1 or v != int(v)]
                if bad:
                    errors.append("prep_qubits grid must hold positive integers")
            elif np.any(values <= 0):
                errors.append(f"{cfg.sweep.axis} grid must be positive")
    if not math.isfinite(cfg.e_ext):
        errors.append("e_ext must be finite")
    return errors, warnings
