"""Fisher-information series over repeated channel applications.

The probe state and its parameter derivative are propagated jointly step
by step (product rule, exact given the channel), giving the information
series F_1..F_N_max. Closed-form approximations for both models and the
state-preparation/measurement corrections live here too.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import BlochVector, _qfi_from_arrays
from .channels import ChannelWithDerivative, FieldParams
from .errors import DomainError, NonInformativeMeasurementError
from .thermo import purity_gamma


@dataclass(frozen=True)
class QfiSeries:
    """Information values F_N for N = 1..n_max (values[k] is F_{k+1})."""

    model: str
    s0: BlochVector
    values: np.ndarray
    n_max: int

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size != self.n_max:
            raise DomainError("series length must equal n_max")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise DomainError("information values must be finite and nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def value_at(self, n: int) -> float:
        """F_n for 1-based step count n."""
        if not 1 <= n <= self.n_max:
            raise DomainError(f"step count {n} outside 1..{self.n_max}")
        return float(self.values[n - 1])

    def per_step(self) -> np.ndarray:
        """F_N / N for N = 1..n_max."""
        return self.values / np.arange(1, self.n_max + 1)

    def argmax_per_step(self) -> int:
        """Step count maximizing F_N / N (smallest on ties)."""
        return int(np.argmax(self.per_step())) + 1

    def scaled(self, factor: float, label: str) -> "QfiSeries":
        if factor < 0:
            raise DomainError("scale factor must be nonnegative")
        return QfiSeries(label, self.s0, self.values * factor, self.n_max)


@dataclass(frozen=True)
class CorrectionSpec:
    """Cooling-qubit counts for the two stages; 0 means that stage is ideal.

    xi is the preparation-stage bath parameter; xi_meas overrides it for
    the measurement stage when the two baths differ.
    """

    prep_qubits: int = 0
    meas_qubits: int = 0
    xi: float = 0.2
    xi_meas: float | None = None

    def __post_init__(self):
        if self.prep_qubits < 0 or self.meas_qubits < 0:
            raise DomainError("cooling qubit counts must be nonnegative")
        if not (np.isfinite(self.xi) and self.xi > 0):
            raise DomainError("xi must be positive and finite")
        if self.xi_meas is not None and not (np.isfinite(self.xi_meas) and self.xi_meas > 0):
            raise DomainError("xi_meas must be positive and finite")

    @property
    def xi_for_measurement(self) -> float:
        return self.xi if self.xi_meas is None else self.xi_meas


def sequence_qfi(ch: ChannelWithDerivative, s0: BlochVector, n_max: int) -> QfiSeries:
    """Exact information series for n_max repeated channel applications.

    Iterates s -> G s and ds -> dG s + G ds with ds_0 = 0; each step's
    QFI comes from the Bloch-vector formula. Exact to machine precision
    given the channel and its derivative.
    """
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    g = ch.map.matrix
    dg = ch.dmap
    s = np.asarray(s0, dtype=float)
    ds = np.zeros(3)
    values = np.empty(n_max)
    for k in range(n_max):
        ds = dg @ s + g @ ds
        s = g @ s
        values[k] = _qfi_from_arrays(s, ds)
    # Tiny negative values can only arise from roundoff at F ~ 0.
    np.clip(values, 0.0, None, out=values)
    return QfiSeries("sequence", s0, values, n_max)


def sequence_qfi_approx_vmf(lambda_perp: float, dlambda_perp_dphi: float,
                            n: int) -> float:
    """Closed-form series approximation for the random-axis model."""
    if not 0.0 < lambda_perp <= 1.0:
        raise DomainError("lambda_perp must lie in (0, 1]")
    return float(
        n * n * lambda_perp ** (2 * n - 2)
        * (lambda_perp**2 + dlambda_perp_dphi**2)
    )


def sequence_qfi_approx_field(p: FieldParams, n: int) -> float:
    """Closed-form series approximation N^2 r^{2N} for the field model."""
    r = 1.0 - delta_over_photons(p)
    if r <= 0.0:
        raise DomainError("approximation invalid: 1 - delta/(2 m_bar) <= 0")
    return float(n * n * r ** (2 * n))


def delta_over_photons(p: FieldParams) -> float:
    """delta(g) / (2 m_bar), the per-step shrink rate of the field model."""
    from .channels import delta_of_g

    return delta_of_g(p.g, p.k_m, p.k_theta) / (2.0 * p.m_bar)


def default_n_max(n_opt_estimate: float) -> int:
    """Series length covering the peak and decay region with margin."""
    if not np.isfinite(n_opt_estimate) or n_opt_estimate < 0:
        raise DomainError("n_opt_estimate must be finite and nonnegative")
    return max(64, int(np.ceil(4.0 * n_opt_estimate)))


def correction_factor(c: CorrectionSpec) -> float:
    """Multiplicative information penalty gamma_s^2 * (2 gamma_m - 1).

    Either stage with a zero qubit count is ideal (factor 1). Raises when
    the measurement factor is nonpositive: such a pointer is too hot to
    carry any signal.
    """
    prep = purity_gamma(c.prep_qubits, c.xi) ** 2 if c.prep_qubits else 1.0
    meas = (
        2.0 * purity_gamma(c.meas_qubits, c.xi_for_measurement) - 1.0
        if c.meas_qubits else 1.0
    )
    if meas <= 0.0:
        raise NonInformativeMeasurementError(
            f"measurement correction 2*gamma-1 = {meas:.4g} <= 0: the pointer "
            "is too hot to be informative"
        )
    return prep * meas


def apply_corrections(series: QfiSeries, c: CorrectionSpec) -> QfiSeries:
    """Scale a series by the state-preparation and measurement penalties."""
    return series.scaled(correction_factor(c), series.model + "+corrections")


def prep_corrected_series_exact(ch: ChannelWithDerivative, gamma_s: float,
                                n_max: int,
                                s0: BlochVector = BlochVector(0.0, 0.0, 1.0)
                                ) -> QfiSeries:
    """Exact series for a thermal (shortened) initial Bloch vector.

    Validates the multiplicative gamma^2 shortcut: the probe starts at
    gamma_s * s0 instead of applying a scalar to the ideal series.
    """
    if not 0.0 < gamma_s <= 1.0:
        raise DomainError("gamma_s must lie in (0, 1]")
    start = BlochVector.from_array(gamma_s * np.asarray(s0, dtype=float))
    return sequence_qfi(ch, start, n_max)
