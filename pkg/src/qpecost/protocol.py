"""Repetition planning: from an information series to gate counts and energy.

A target variance delta^2 is met by repeating an N-step sequence q_N =
1/(delta^2 F_N) times. The continuous relaxation gives the raw complexity;
the integer-feasible plan (Q_N full rounds plus an N0-step tail) gives the
true complexity, and attaching per-gate photon cost plus per-round
external cost gives the resource optimum and its sweet spot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import delta_of_g
from .errors import DomainError, UnattainableTargetError
from .fisher import QfiSeries

# Residual at or below this counts as an exactly integer repetition count.
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class Target:
    """Requested estimation variance bound (>0)."""

    delta_sq: float

    def __post_init__(self):
        if not (np.isfinite(self.delta_sq) and self.delta_sq > 0):
            raise DomainError(f"delta_sq must be positive, got {self.delta_sq}")

    @property
    def information_needed(self) -> float:
        return 1.0 / self.delta_sq


@dataclass(frozen=True)
class RoundPlan:
    """Integer protocol plan: full_rounds rounds of `steps` gates plus a tail."""

    steps: int
    full_rounds: int
    tail_steps: int

    def __post_init__(self):
        if self.steps < 1 or self.full_rounds < 0:
            raise DomainError("need steps >= 1 and full_rounds >= 0")
        if not 0 <= self.tail_steps <= self.steps:
            raise DomainError("tail length must lie in [0, steps]")

    @property
    def total_gates(self) -> int:
        return self.steps * self.full_rounds + self.tail_steps

    @property
    def rounds(self) -> int:
        """Rounds that actually run: the tail counts only when nonempty."""
        return self.full_rounds + (1 if self.tail_steps > 0 else 0)

    @property
    def rounds_literal(self) -> int:
        """Always-charge-the-tail count (full_rounds + 1), kept inspectable."""
        return self.full_rounds + 1


@dataclass(frozen=True)
class ResourceBreakdown:
    """Energy cost of a plan, split into gate photons and external work."""

    gate_energy: float
    external_energy: float

    def __post_init__(self):
        if self.gate_energy < 0 or self.external_energy < 0:
            raise DomainError("energies must be nonnegative")

    @property
    def total(self) -> float:
        return self.gate_energy + self.external_energy


@dataclass(frozen=True)
class SweetSpot:
    """Saturation point of the resource curve: photon budget, gates, energy."""

    m_bar0: float
    c0: float
    r0: float

    def __post_init__(self):
        for name in ("m_bar0", "c0", "r0"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")


def reps_needed(f_value: float, t: Target) -> float:
    """Continuous repetition count q = 1/(delta^2 F) for one sequence length."""
    if not f_value > 0:
        raise UnattainableTargetError(
            f"information per sequence must be positive, got {f_value}"
        )
    return t.information_needed / f_value


def raw_complexity(series: QfiSeries, t: Target) -> tuple[float, int]:
    """Continuous-relaxation gate count and its optimal sequence length.

    (1/delta^2) * min_N (N / F_N); ties resolve to the smallest N.
    """
    f = series.values
    if not np.any(f > 0):
        raise UnattainableTargetError("series carries no information")
    steps = np.arange(1, series.n_max + 1, dtype=float)
    with np.errstate(divide="ignore"):
        ratio = np.where(f > 0, steps / np.where(f > 0, f, 1.0), np.inf)
    n_opt = int(np.argmin(ratio))
    return float(t.information_needed * ratio[n_opt]), n_opt + 1


def _plan_arrays(f: np.ndarray, inv: float):
    """Vectorized (full_rounds, tail, gates) for every sequence length.

    Infeasible lengths (F_N = 0) get gates = +inf. The tail length is the
    smallest n whose F_n covers the residual, found on the running maximum
    (guaranteed to exist below N since F_N itself exceeds the residual).
    """
    n_max = f.size
    steps = np.arange(1, n_max + 1, dtype=float)
    positive = f > 0
    safe_f = np.where(positive, f, 1.0)
    full = np.floor(inv / safe_f)
    residual = inv - full * safe_f
    running_max = np.maximum.accumulate(f)
    tail_idx = np.searchsorted(running_max, residual, side="left")
    tail = np.where(residual <= RESIDUAL_TOL, 0, tail_idx + 1)
    gates = np.where(positive, steps * full + tail, np.inf)
    return full, tail, gates


def plan_round(series: QfiSeries, n: int, t: Target) -> RoundPlan:
    """Integer plan for a fixed sequence length n.

    full_rounds = floor(q_n); the tail is empty when the residual
    information is at most RESIDUAL_TOL, otherwise the smallest prefix
    length whose information covers the residual.
    """
    f_n = series.value_at(n)
    if not f_n > 0:
        raise UnattainableTargetError(f"F at n={n} is not positive")
    inv = t.information_needed
    full = int(np.floor(inv / f_n))
    residual = inv - full * f_n
    if residual <= RESIDUAL_TOL:
        tail = 0
    else:
        running_max = np.maximum.accumulate(series.values[:n])
        tail = int(np.searchsorted(running_max, residual, side="left")) + 1
    plan = RoundPlan(n, full, tail)
    achieved = full * f_n + (series.value_at(tail) if tail else 0.0)
    if achieved < inv - RESIDUAL_TOL:
        raise UnattainableTargetError(
            f"plan at n={n} reaches {achieved:.6g} < required {inv:.6g}"
        )
    return plan


def true_complexity(series: QfiSeries, t: Target) -> tuple[int, int, RoundPlan]:
    """Minimal integer-feasible gate count over all sequence lengths.

    Returns (gates, sequence length, plan); ties resolve to the smallest
    length.
    """
    f = series.values
    if not np.any(f > 0):
        raise UnattainableTargetError("series carries no information")
    _, _, gates = _plan_arrays(f, t.information_needed)
    best = int(np.argmin(gates))
    plan = plan_round(series, best + 1, t)
    return plan.total_gates, best + 1, plan


def resource_of_plan(plan: RoundPlan, m_bar: float, e_ext: float) -> ResourceBreakdown:
    """Energy of a plan: photons per gate, external work per executed round."""
    if not m_bar > 0:
        raise DomainError("m_bar must be positive")
    if e_ext < 0:
        raise DomainError("e_ext must be nonnegative")
    return ResourceBreakdown(
        gate_energy=plan.total_gates * m_bar,
        external_energy=plan.rounds * e_ext,
    )


def optimal_resource(series: QfiSeries, t: Target, m_bar: float,
                     e_ext: float) -> tuple[float, int, RoundPlan]:
    """Minimal total energy over all sequence lengths.

    Returns (energy, sequence length, plan); ties resolve to the smallest
    length. With e_ext = 0 this coincides with true_complexity.
    """
    if not m_bar > 0:
        raise DomainError("m_bar must be positive")
    if e_ext < 0:
        raise DomainError("e_ext must be nonnegative")
    f = series.values
    if not np.any(f > 0):
        raise UnattainableTargetError("series carries no information")
    full, tail, gates = _plan_arrays(f, t.information_needed)
    rounds = full + (tail > 0)
    cost = np.where(np.isfinite(gates), gates * m_bar + rounds * e_ext, np.inf)
    best = int(np.argmin(cost))
    plan = plan_round(series, best + 1, t)
    return float(resource_of_plan(plan, m_bar, e_ext).total), best + 1, plan


def sweet_spot(g: float, t: Target, k_m: float = 1.0,
               k_theta: float = 1.0) -> SweetSpot:
    """Saturation point of the field-model resource curve.

    Where a single repetition of the optimal sequence meets the target:
    m_bar0 = delta * sqrt(e/delta^2), c0 = sqrt(e/delta^2),
    r0 = e * delta / delta^2.
    """
    if g == 0:
        raise DomainError("g must be nonzero")
    delta = delta_of_g(g, k_m, k_theta)
    c0 = float(np.sqrt(np.e / t.delta_sq))
    return SweetSpot(m_bar0=float(delta * c0), c0=c0,
                     r0=float(np.e * delta / t.delta_sq))


def approx_resource_with_cooling(m_bar: float, g: float, t: Target,
                                 m_s: int, xi: float, w_bar: float) -> float:
    """Closed-form resource estimate including state-preparation cooling.

    (e/delta^2) * (delta(g)^2/m_bar^2) * (w_bar*M_s + m_bar^2/delta(g))
    / tanh(M_s/(4 xi))^2. The cooling penalty enters squared through the
    shortened probe; M_s = 0 would zero the tanh and is rejected.
    """
    if m_s < 1:
        raise DomainError("need at least one cooling qubit (m_s >= 1)")
    if not (m_bar > 0 and xi > 0 and w_bar >= 0):
        raise DomainError("need m_bar > 0, xi > 0, w_bar >= 0")
    delta = delta_of_g(g, 1.0, 1.0)
    gamma = np.tanh(m_s / (4.0 * xi))
    return float(
        np.e / t.delta_sq * delta**2 / m_bar**2
        * (w_bar * m_s + m_bar**2 / delta) / gamma**2
    )
