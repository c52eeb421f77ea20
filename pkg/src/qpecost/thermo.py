"""Thermodynamic cost model for state preparation and measurement.

Dynamic cooling compresses the entropy of M thermal qubits into M-1 of
them, leaving one at roughly temperature 2*T0/M; the work per consumed
qubit has a closed thermodynamic-limit form. Photon energy is the global
unit (the gate cost of a round is just its photon budget), so every cost
here is expressed relative to it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ThermalEnv:
    """Bath and hardware frequencies.

    xi: bath temperature in units of the cooling-qubit gap (k_B T0 / hbar
    omega0); omega0_ratio: cooling-qubit gap over photon energy;
    omega1_ratio: pointer-qubit gap over photon energy.
    """

    xi: float
    omega0_ratio: float = 1.0
    omega1_ratio: float = 1.0

    def __post_init__(self):
        for name in ("xi", "omega0_ratio", "omega1_ratio"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class CoolingSpec:
    """Cooling-qubit counts for the two stages (at least one each)."""

    M_s: int
    M_m: int

    def __post_init__(self):
        for name in ("M_s", "M_m"):
            v = getattr(self, name)
            if not (isinstance(v, (int, np.integer)) and v >= 1):
                raise DomainError(f"{name} must be a positive integer, got {v!r}")


def cooled_temperature(t0: float, m: int) -> float:
    """Temperature reachable by dynamic cooling with m qubits: 2*t0/m."""
    if not (t0 > 0 and m >= 1):
        raise DomainError("need t0 > 0 and m >= 1")
    return 2.0 * t0 / m


def purity_gamma(m: int, xi: float) -> float:
    """Bloch-vector length of a qubit cooled with m qubits: tanh(m/(4*xi))."""
    if not (m >= 1 and xi > 0):
        raise DomainError("need m >= 1 and xi > 0")
    return float(np.tanh(m / (4.0 * xi)))


def work_per_qubit(env: ThermalEnv) -> float:
    """Minimal work to consume one cooling qubit, in photon units.

    (omega0 / 2 omega) * tanh(1/(2 xi)) / (exp(1/xi) + 1); vanishes in
    both the already-cold and the infinitely-hot limits.
    """
    inv = 1.0 / env.xi
    # exp(-inv)/(1 + exp(-inv)) == 1/(exp(inv) + 1) without overflow at small xi
    occupation = np.exp(-inv) / (1.0 + np.exp(-inv))
    return float(env.omega0_ratio / 2.0 * np.tanh(inv / 2.0) * occupation)


def state_prep_cost(env: ThermalEnv, m_s: int) -> float:
    """External work per round for preparing the probe with m_s cooling qubits."""
    if m_s < 1:
        raise DomainError("need m_s >= 1")
    return work_per_qubit(env) * m_s


def measurement_cost_bound(env: ThermalEnv) -> float:
    """State-independent upper bound on the pointer correlating cost."""
    return env.omega1_ratio


def exact_pointer_cost(env: ThermalEnv, z: float) -> float:
    """Correlating cost for a probe with Bloch z-component z.

    The CNOT flips the pointer with the excited-state population
    (1 - z)/2; always below measurement_cost_bound.
    """
    if not -1.0 - 1e-9 <= z <= 1.0 + 1e-9:
        raise DomainError(f"z={z} outside [-1, 1]")
    return (1.0 - z) / 2.0 * env.omega1_ratio


def measurement_epsilon(m_m: int, xi: float) -> float:
    """Pointer impurity parameter (1 - gamma)/2 in [0, 1/2)."""
    return (1.0 - purity_gamma(m_m, xi)) / 2.0
