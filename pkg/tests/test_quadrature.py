"""Adaptive panel integration: exactness, vector integrands, failure modes."""

import numpy as np
import pytest

from qpecost import DomainError, NumericError, adaptive_quad


def test_polynomial_is_exact_on_one_panel():
    value, err = adaptive_quad(lambda x: x**7, 0.0, 1.0, tol=1e-12)
    assert value == pytest.approx(1.0 / 8.0, abs=1e-14)
    assert err <= 1e-12


def test_high_degree_polynomial_converges():
    value, _ = adaptive_quad(lambda x: 31.0 * x**30, 0.0, 1.0, tol=1e-12)
    assert value == pytest.approx(1.0, abs=1e-11)


def test_oscillatory_scalar_integrand():
    value, _ = adaptive_quad(lambda x: np.sin(x) ** 2, 0.0, 2.0 * np.pi,
                             tol=1e-12)
    assert value == pytest.approx(np.pi, abs=1e-11)


def test_stacked_rows_integrate_componentwise():
    value, _ = adaptive_quad(
        lambda x: np.stack([np.sin(x), np.cos(x), x**2]), 0.0, 2.0, tol=1e-12)
    np.testing.assert_allclose(
        value, [1.0 - np.cos(2.0), np.sin(2.0), 8.0 / 3.0], atol=1e-11)


def test_sharp_exponential_weight_has_unit_mass():
    # the concentrated axis weight, still resolvable from the full interval
    kappa = 1e3
    def weight(x):
        return kappa * np.exp(kappa * (x - 1.0)) / -np.expm1(-2.0 * kappa)
    value, _ = adaptive_quad(weight, -1.0, 1.0, tol=1e-10)
    assert value == pytest.approx(1.0, abs=1e-10)


def test_budget_exhaustion_reports_achieved_error():
    # kink at 1/3 never lands on a bisection boundary
    with pytest.raises(NumericError) as info:
        adaptive_quad(lambda x: np.abs(x - 1.0 / 3.0), 0.0, 1.0,
                      tol=1e-15, max_panels=10)
    assert info.value.achieved > 1e-15
    assert np.isfinite(info.value.achieved)


def test_interval_and_tolerance_validation():
    f = np.sin
    with pytest.raises(DomainError):
        adaptive_quad(f, 1.0, 1.0)
    with pytest.raises(DomainError):
        adaptive_quad(f, 0.0, np.inf)
    with pytest.raises(DomainError):
        adaptive_quad(f, 0.0, 1.0, tol=0.0)


def test_integrand_shape_mismatch_is_rejected():
    with pytest.raises(DomainError):
        adaptive_quad(lambda x: np.ones(3), 0.0, 1.0)
