"""Information series under repeated gates, and their hardware corrections."""

import numpy as np
import pytest

from qpecost import (BlochMap, BlochVector, CorrectionSpec, DomainError,
                     FieldParams, NonInformativeMeasurementError, QfiSeries,
                     VmfParams, apply_corrections, correction_factor,
                     default_n_max, density_from_bloch,
                     prep_corrected_series_exact, qfi_sld_oracle, sequence_qfi,
                     sequence_qfi_approx_field, sequence_qfi_approx_vmf,
                     vmf_lambda_perp_derivative, vmf_lambdas)
from qpecost.bloch import PAULI
from qpecost.channels import ChannelWithDerivative
from qpecost.fisher import delta_over_photons

import helpers


def ideal_rotation_channel(phi):
    c, s = np.cos(phi), np.sin(phi)
    m = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    dm = np.array([[-s, -c, 0.0], [c, -s, 0.0], [0.0, 0.0, 0.0]])
    return ChannelWithDerivative(BlochMap(m), dm)


# ---------------------------------------------------------------------------
# series container

def test_series_container_validation():
    with pytest.raises(DomainError):
        QfiSeries("field", helpers.Z_AXIS, [1.0, 2.0], 3)
    with pytest.raises(DomainError):
        QfiSeries("field", helpers.Z_AXIS, [1.0, -2.0], 2)
    ser = QfiSeries("field", helpers.Z_AXIS, [1.0, 4.0, 9.0], 3)
    assert ser.value_at(2) == 4.0
    with pytest.raises(DomainError):
        ser.value_at(0)
    np.testing.assert_allclose(ser.per_step(), [1.0, 2.0, 3.0])
    assert ser.argmax_per_step() == 3
    assert ser.scaled(0.5, "x").value_at(3) == pytest.approx(4.5)


def test_default_n_max_floor_and_margin():
    assert default_n_max(1.0) == 64
    assert default_n_max(15.9) == 64
    assert default_n_max(100.0) == 400
    assert default_n_max(100.3) == 402


# ---------------------------------------------------------------------------
# exact propagation

def test_noiseless_rotation_is_quadratic_in_steps():
    ser = sequence_qfi(ideal_rotation_channel(0.5), helpers.X_AXIS, 30)
    np.testing.assert_allclose(ser.values, np.arange(1, 31, dtype=float) ** 2,
                               rtol=1e-12)


def test_sequence_matches_density_matrix_oracle(field_ch_300, vmf_ch_50):
    # propagate (s, ds) step by step and hand each intermediate pair to the
    # SLD route at the 2x2 level
    for ch, s0 in ((field_ch_300, helpers.Z_AXIS), (vmf_ch_50, helpers.X_AXIS)):
        ser = sequence_qfi(ch, s0, 10)
        g = np.asarray(ch.map)
        s = s0.as_array()
        ds = np.zeros(3)
        for n in range(1, 11):
            ds = ch.dmap @ s + g @ ds
            s = g @ s
            rho = density_from_bloch(BlochVector(*s))
            drho = 0.5 * np.einsum("k,kij->ij", ds, PAULI)
            assert ser.value_at(n) == pytest.approx(
                qfi_sld_oracle(rho, drho), rel=1e-8, abs=1e-10)


def test_field_series_peak_matches_photon_budget(field_series_300):
    # the per-step shrink rate is delta/(2 m_bar), so the peak sits at
    # half its inverse: m_bar / delta
    pred = 0.5 / delta_over_photons(FieldParams(300.0, 2.5))
    assert field_series_300.argmax_per_step() == 150
    assert abs(field_series_300.argmax_per_step() - pred) <= 2.0


def test_vmf_series_peak_tracks_shrink_rate(vmf_series_50):
    lam, _ = vmf_lambdas(VmfParams(50.0, 0.5))
    pred = round(-0.5 / np.log(lam))
    assert abs(vmf_series_50.argmax_per_step() - pred) <= 2


# ---------------------------------------------------------------------------
# closed-form envelopes

def test_vmf_envelope_noiseless_limit():
    values = [sequence_qfi_approx_vmf(1.0, 0.0, n) for n in (1, 7, 50)]
    assert values == [pytest.approx(float(n * n)) for n in (1, 7, 50)]


def test_vmf_envelope_frozen_example():
    # lambda = 0.99, no derivative term, 50 steps: 2500 * 0.99^100
    got = sequence_qfi_approx_vmf(0.99, 0.0, 50)
    assert got == pytest.approx(2500.0 * 0.99**100, rel=1e-12)
    assert got == pytest.approx(915.08, abs=1e-2)


def test_vmf_envelope_tracks_exact_series(vmf_series_50):
    p = VmfParams(50.0, 0.5)
    lam, _ = vmf_lambdas(p)
    dlam = vmf_lambda_perp_derivative(p)
    n = vmf_series_50.argmax_per_step()
    approx = sequence_qfi_approx_vmf(lam, dlam, n)
    assert approx == pytest.approx(vmf_series_50.value_at(n), rel=0.05)


def test_vmf_envelope_tighter_at_larger_concentration():
    series = helpers.vmf_series(100.0, 0.5)
    p = VmfParams(100.0, 0.5)
    lam, _ = vmf_lambdas(p)
    dlam = vmf_lambda_perp_derivative(p)
    n = series.argmax_per_step()
    approx = sequence_qfi_approx_vmf(lam, dlam, n)
    assert approx == pytest.approx(series.value_at(n), rel=0.05)


def test_field_envelope_zero_drive_limit():
    assert sequence_qfi_approx_field(FieldParams(300.0, 0.0), 21) == \
        pytest.approx(441.0)


def test_field_envelope_frozen_example(field_series_300):
    p = FieldParams(300.0, 2.5)
    got = sequence_qfi_approx_field(p, 149)
    direct = 149.0**2 * (1.0 - delta_over_photons(p)) ** 298
    assert got == pytest.approx(direct, rel=1e-12)
    assert got == pytest.approx(8176.0, rel=0.01)
    # and it stays within 10% of the exact propagation near the peak
    exact = field_series_300.value_at(149)
    assert abs(got - exact) / exact < 0.10


# ---------------------------------------------------------------------------
# preparation and readout corrections

def test_correction_factor_trivial_cases():
    assert correction_factor(CorrectionSpec()) == 1.0
    assert correction_factor(CorrectionSpec(prep_qubits=0, meas_qubits=0)) == 1.0


def test_correction_factor_reference_values():
    prep_only = correction_factor(CorrectionSpec(prep_qubits=1, xi=0.2))
    assert prep_only == pytest.approx(np.tanh(1.25) ** 2, rel=1e-14)
    assert prep_only == pytest.approx(0.719586, abs=1e-5)
    meas_only = correction_factor(CorrectionSpec(meas_qubits=1, xi=0.2))
    assert meas_only == pytest.approx(2.0 * np.tanh(1.25) - 1.0, rel=1e-14)
    assert meas_only == pytest.approx(0.696568, abs=1e-5)
    both = correction_factor(CorrectionSpec(prep_qubits=1, meas_qubits=1,
                                            xi=0.2))
    assert both == pytest.approx(prep_only * meas_only, rel=1e-14)


def test_correction_factor_equals_one_minus_four_epsilon():
    from qpecost import measurement_epsilon
    eps = measurement_epsilon(1, 0.2)
    got = correction_factor(CorrectionSpec(meas_qubits=1, xi=0.2))
    assert got == pytest.approx(1.0 - 4.0 * eps, abs=1e-15)


def test_correction_factor_improves_with_more_cooling():
    values = [correction_factor(CorrectionSpec(prep_qubits=m, meas_qubits=m,
                                               xi=0.3))
              for m in (1, 2, 4, 8)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(0.0 < v < 1.0 for v in values)


def test_too_hot_measurement_is_non_informative():
    # gamma = tanh(1/(4 xi)) <= 1/2 makes the readout worthless
    with pytest.raises(NonInformativeMeasurementError):
        correction_factor(CorrectionSpec(meas_qubits=1, xi=20.0))


def test_separate_measurement_stage_temperature():
    spec = CorrectionSpec(prep_qubits=1, meas_qubits=1, xi=0.2, xi_meas=0.1)
    prep = np.tanh(1.25) ** 2
    meas = 2.0 * np.tanh(1.0 / 0.4) - 1.0
    assert correction_factor(spec) == pytest.approx(prep * meas, rel=1e-14)


def test_apply_corrections_scales_every_step(field_series_300):
    spec = CorrectionSpec(prep_qubits=1, meas_qubits=1, xi=0.2)
    factor = correction_factor(spec)
    corrected = apply_corrections(field_series_300, spec)
    np.testing.assert_allclose(corrected.values,
                               factor * field_series_300.values, rtol=1e-14)


def test_exact_prep_correction_limits(field_ch_300, field_series_300):
    ident = prep_corrected_series_exact(field_ch_300, 1.0, 200)
    np.testing.assert_allclose(ident.values, field_series_300.values[:200],
                               rtol=1e-12)
    shrunk = prep_corrected_series_exact(field_ch_300, 0.95, 200)
    n = 150
    ratio = shrunk.value_at(n) / field_series_300.value_at(n)
    # near the peak the initial-purity loss enters almost exactly squared
    assert 0.95**2 * 0.95 < ratio < 0.95**2 * 1.05
    tiny = prep_corrected_series_exact(field_ch_300, 1e-8, 50)
    assert tiny.values.max() < 1e-10


def test_exact_prep_correction_rejects_bad_purity(field_ch_300):
    with pytest.raises(DomainError):
        prep_corrected_series_exact(field_ch_300, 1.5, 10)
    with pytest.raises(DomainError):
        prep_corrected_series_exact(field_ch_300, 0.0, 10)
