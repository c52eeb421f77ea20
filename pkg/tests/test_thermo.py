"""Cooling, preparation and readout costs in photon-energy units."""

import numpy as np
import pytest

from qpecost import (CoolingSpec, DomainError, ThermalEnv, cooled_temperature,
                     exact_pointer_cost, measurement_cost_bound,
                     measurement_epsilon, purity_gamma, state_prep_cost,
                     work_per_qubit)


def test_env_and_spec_validation():
    with pytest.raises(DomainError):
        ThermalEnv(0.0)
    with pytest.raises(DomainError):
        ThermalEnv(0.2, omega1_ratio=-1.0)
    with pytest.raises(DomainError):
        CoolingSpec(0, 1)
    with pytest.raises(DomainError):
        CoolingSpec(1.5, 1)


def test_cooled_temperature():
    assert cooled_temperature(1.0, 2) == pytest.approx(1.0)
    assert cooled_temperature(1.0, 20) == pytest.approx(0.1)
    with pytest.raises(DomainError):
        cooled_temperature(-1.0, 2)


def test_purity_examples():
    # one cooling qubit at xi = 0.2: tanh(1/(4*0.2))
    assert purity_gamma(1, 0.2) == pytest.approx(np.tanh(1.25), abs=1e-15)
    assert purity_gamma(1, 0.2) == pytest.approx(0.848284, abs=1e-6)
    assert purity_gamma(1000, 0.2) == pytest.approx(1.0, abs=1e-12)


def test_purity_grows_with_cooling_qubits():
    values = [purity_gamma(m, 0.5) for m in (1, 2, 4, 8, 32)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_work_per_qubit_reference_value():
    env = ThermalEnv(0.2)
    # (1/2) tanh(1/(2 xi)) / (e^{1/xi} + 1), evaluated independently
    direct = 0.5 * np.tanh(2.5) / (np.exp(5.0) + 1.0)
    assert work_per_qubit(env) == pytest.approx(direct, rel=1e-14)
    assert work_per_qubit(env) == pytest.approx(0.003302, abs=1e-5)


def test_work_per_qubit_vanishes_in_both_limits():
    assert work_per_qubit(ThermalEnv(1e-3)) == 0.0  # already cold, no overflow
    assert work_per_qubit(ThermalEnv(1e8)) < 1e-8   # too hot to order


def test_work_per_qubit_scales_with_gap():
    assert work_per_qubit(ThermalEnv(0.2, omega0_ratio=3.0)) == pytest.approx(
        3.0 * work_per_qubit(ThermalEnv(0.2)), rel=1e-14)


def test_state_prep_cost_is_linear_in_qubits():
    env = ThermalEnv(0.2)
    assert state_prep_cost(env, 1) == pytest.approx(work_per_qubit(env))
    assert state_prep_cost(env, 10) == pytest.approx(10.0 * work_per_qubit(env))
    with pytest.raises(DomainError):
        state_prep_cost(env, 0)


def test_pointer_cost_stays_below_bound():
    env = ThermalEnv(0.2, omega1_ratio=7.0)
    assert measurement_cost_bound(env) == pytest.approx(7.0)
    for z in np.linspace(-1.0, 1.0, 9):
        assert exact_pointer_cost(env, z) <= measurement_cost_bound(env) + 1e-12
    assert exact_pointer_cost(env, 1.0) == pytest.approx(0.0)
    assert exact_pointer_cost(env, -1.0) == pytest.approx(7.0)
    with pytest.raises(DomainError):
        exact_pointer_cost(env, 1.5)


def test_measurement_epsilon_reference_value():
    eps = measurement_epsilon(1, 0.2)
    assert eps == pytest.approx((1.0 - np.tanh(1.25)) / 2.0, rel=1e-14)
    assert eps == pytest.approx(0.075858, abs=1e-6)
    # identity linking the impurity to the purity: 1 - 4 eps = 2 gamma - 1
    assert 1.0 - 4.0 * eps == pytest.approx(2.0 * purity_gamma(1, 0.2) - 1.0,
                                            abs=1e-15)
