"""Geometric primitives cross-checked against 2x2 density-matrix algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpecost import (BlochMap, BlochVector, DensityMatrix, DomainError, Povm,
                     SingularOutcomeError, apply, bloch_from_density, cfi,
                     density_from_bloch, qfi_bloch, qfi_sld_oracle, rodrigues,
                     sld_povm)
from qpecost.bloch import PAULI

import helpers


def unit_axes():
    raw = st.tuples(st.floats(-1.0, 1.0), st.floats(-1.0, 1.0),
                    st.floats(-1.0, 1.0))
    return (raw.filter(lambda t: np.linalg.norm(t) > 0.2)
               .map(lambda t: tuple(np.asarray(t) / np.linalg.norm(t))))


# ---------------------------------------------------------------------------
# vectors, maps, states

def test_bloch_vector_validation():
    BlochVector(0.6, 0.0, 0.8)
    with pytest.raises(DomainError):
        BlochVector(1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        BlochVector(np.nan, 0.0, 0.0)
    s = BlochVector.from_array([0.1, 0.2, 0.3])
    assert s.norm == pytest.approx(np.sqrt(0.14))


def test_bloch_map_validation():
    with pytest.raises(DomainError):
        BlochMap(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        BlochMap(np.full((3, 3), np.inf))
    m = BlochMap(0.5 * np.eye(3))
    assert m.singular_values() == pytest.approx([0.5, 0.5, 0.5])
    with pytest.raises(DomainError):
        BlochMap(2.0 * np.eye(3)).require_contraction()


def test_bloch_map_is_write_protected():
    m = BlochMap(np.eye(3))
    with pytest.raises(ValueError):
        m.matrix[0, 0] = 2.0


def test_density_matrix_validation():
    with pytest.raises(DomainError):
        DensityMatrix(np.array([[1.0, 1.0], [0.0, 0.0]]))  # not hermitian
    with pytest.raises(DomainError):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([1.5, -0.5]))  # negative eigenvalue


def test_density_bloch_round_trip():
    for s in [(0.0, 0.0, 0.0), (0.3, -0.4, 0.5), (1.0, 0.0, 0.0)]:
        v = BlochVector(*s)
        back = bloch_from_density(density_from_bloch(v))
        np.testing.assert_allclose(back.as_array(), v.as_array(), atol=1e-14)


# ---------------------------------------------------------------------------
# rotations vs SU(2) conjugation

def test_rodrigues_z_rotation_entries():
    r = rodrigues((0.0, 0.0, 1.0), 0.5)
    c, s = np.cos(0.5), np.sin(0.5)
    np.testing.assert_allclose(
        r.matrix, [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]], atol=1e-15)


def test_rodrigues_rejects_non_unit_axis():
    with pytest.raises(DomainError):
        rodrigues((1.0, 1.0, 0.0), 0.5)


@settings(max_examples=60, deadline=None)
@given(axis=unit_axes(), angle=st.floats(-10.0, 10.0))
def test_rodrigues_matches_su2_conjugation(axis, angle):
    r = rodrigues(axis, angle)
    for s in [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0),
              (0.3, -0.5, 0.2)]:
        expected = helpers.conjugate_bloch(axis, angle, s)
        got = apply(r, BlochVector(*s))
        np.testing.assert_allclose(got.as_array(), expected, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(axis=unit_axes(), a=st.floats(-5.0, 5.0), b=st.floats(-5.0, 5.0))
def test_rodrigues_composes_along_shared_axis(axis, a, b):
    lhs = rodrigues(axis, a).compose(rodrigues(axis, b))
    rhs = rodrigues(axis, a + b)
    np.testing.assert_allclose(lhs.matrix, rhs.matrix, atol=1e-12)


def test_rotation_preserves_norm():
    r = rodrigues((0.6, 0.0, 0.8), 1.3)
    s = BlochVector(0.2, -0.3, 0.4)
    assert apply(r, s).norm == pytest.approx(s.norm, abs=1e-14)


# ---------------------------------------------------------------------------
# Fisher information: geometric formula vs SLD eigendecomposition

def test_qfi_pure_state_is_squared_speed():
    # pure branch: F = |ds|^2 when s.ds = 0
    assert qfi_bloch((0.0, 1.0, 0.0), (3.0, 0.0, 4.0)) == pytest.approx(25.0)


def test_qfi_mixed_state_hand_value():
    # s = (0, 0, 1/2), ds = (0, 0, 1/4): F = |ds|^2 + (s.ds)^2/(1-|s|^2)
    expected = 1.0 / 16.0 + (1.0 / 8.0) ** 2 / (1.0 - 0.25)
    assert qfi_bloch((0.0, 0.0, 0.5), (0.0, 0.0, 0.25)) == pytest.approx(expected)


def test_qfi_matches_sld_oracle_on_random_states(rng):
    for _ in range(100):
        s = rng.uniform(-1.0, 1.0, 3)
        s *= rng.uniform(0.05, 0.995) / np.linalg.norm(s)
        ds = rng.uniform(-1.0, 1.0, 3)
        rho = density_from_bloch(BlochVector(*s))
        drho = 0.5 * np.einsum("k,kij->ij", ds, PAULI)
        f_geom = qfi_bloch(s, ds)
        f_sld = qfi_sld_oracle(rho, drho)
        assert f_geom == pytest.approx(f_sld, rel=1e-8, abs=1e-10)


def test_sld_oracle_rejects_bad_derivatives():
    rho = density_from_bloch(BlochVector(0.0, 0.0, 0.5))
    with pytest.raises(DomainError):
        qfi_sld_oracle(rho, np.array([[0.0, 1.0], [0.0, 0.0]]))  # not hermitian
    with pytest.raises(DomainError):
        qfi_sld_oracle(rho, np.eye(2))  # nonzero trace


# ---------------------------------------------------------------------------
# measurements

def test_povm_must_resolve_identity():
    p0 = np.diag([1.0, 0.0])
    with pytest.raises(DomainError):
        Povm((p0, p0))
    with pytest.raises(DomainError):
        Povm((np.diag([2.0, 0.0]), np.diag([-1.0, 1.0])))  # not psd


def test_cfi_hand_value_z_measurement():
    rho = density_from_bloch(BlochVector(0.0, 0.0, 0.5))
    drho = 0.3 * np.diag([0.5, -0.5]) * 2.0  # 0.3 * sigma_z
    povm = Povm((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
    # p = (3/4, 1/4), dp = (0.3, -0.3)
    assert cfi(rho, drho, povm) == pytest.approx(0.09 / 0.75 + 0.09 / 0.25)


def test_sld_povm_attains_the_qfi(rng):
    for _ in range(25):
        s = rng.uniform(-1.0, 1.0, 3)
        s *= rng.uniform(0.1, 0.9) / np.linalg.norm(s)
        ds = rng.uniform(-1.0, 1.0, 3)
        rho = density_from_bloch(BlochVector(*s))
        drho = 0.5 * np.einsum("k,kij->ij", ds, PAULI)
        best = cfi(rho, drho, sld_povm(rho, drho))
        assert best == pytest.approx(qfi_sld_oracle(rho, drho), rel=1e-10)


def test_cfi_raises_on_singular_outcome():
    rho = density_from_bloch(BlochVector(0.0, 0.0, 1.0))
    drho = np.diag([0.5, -0.5])  # pushes weight into the zero-probability outcome
    povm = Povm((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
    with pytest.raises(SingularOutcomeError):
        cfi(rho, drho, povm)


def test_cfi_skips_flat_zero_probability_outcome():
    rho = density_from_bloch(BlochVector(0.0, 0.0, 1.0))
    drho = 0.5 * np.array([[0.0, 1.0], [1.0, 0.0]])  # dp = 0 on both outcomes
    povm = Povm((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
    assert cfi(rho, drho, povm) == 0.0
