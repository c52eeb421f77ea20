"""Bloch-sphere primitives for a single qubit.

States are Bloch vectors, unital channels are 3x3 real contractions
acting on them, and the Fisher-information helpers work directly in this
representation. A density-matrix route (SLD eigendecomposition, explicit
POVMs) is kept alongside as an independent cross-check path: the two ways
of computing the QFI share no code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularOutcomeError

# Tolerated overshoot of norms above 1 from roundoff.
NORM_SLACK = 1e-9
# 1 - |s|^2 below this is treated as a pure state (the mixed-state QFI
# formula divides by it).
PURITY_THRESHOLD = 1e-12
# Eigenvalue-sum cutoff below which SLD matrix elements are dropped.
SLD_DROP = 1e-14

PAULI = np.array([
    [[0.0, 1.0], [1.0, 0.0]],
    [[0.0, -1.0j], [1.0j, 0.0]],
    [[1.0, 0.0], [0.0, -1.0]],
])


@dataclass(frozen=True)
class BlochVector:
    """Point in the closed Bloch ball."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        a = self.as_array()
        if not np.all(np.isfinite(a)):
            raise DomainError("Bloch vector components must be finite")
        n = float(np.linalg.norm(a))
        if n > 1.0 + NORM_SLACK:
            raise DomainError(f"Bloch vector norm {n} exceeds 1")

    @classmethod
    def from_array(cls, a) -> "BlochVector":
        a = np.asarray(a, dtype=float)
        if a.shape != (3,):
            raise DomainError("Bloch vector needs exactly 3 components")
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.as_array(), dtype=dtype)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class BlochMap:
    """Linear action of a unital qubit channel on Bloch vectors."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise DomainError("BlochMap needs a finite 3x3 real matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.matrix, compute_uv=False)

    def require_contraction(self) -> "BlochMap":
        top = float(self.singular_values()[0])
        if top > 1.0 + NORM_SLACK:
            raise DomainError(f"map expands the Bloch ball (top singular value {top})")
        return self

    def compose(self, other: "BlochMap") -> "BlochMap":
        """self after other."""
        return BlochMap(self.matrix @ other.matrix)


def rodrigues(axis, angle: float) -> BlochMap:
    """Rotation of the Bloch ball by `angle` about the unit vector `axis`.

    Matches conjugation of the density matrix by exp(-i angle/2 axis.sigma).
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise DomainError("rotation axis needs 3 finite components")
    if abs(np.linalg.norm(n) - 1.0) > NORM_SLACK:
        raise DomainError("rotation axis must be a unit vector")
    c, s = np.cos(angle), np.sin(angle)
    cross = np.array([
        [0.0, -n[2], n[1]],
        [n[2], 0.0, -n[0]],
        [-n[1], n[0], 0.0],
    ])
    return BlochMap(c * np.eye(3) + s * cross + (1.0 - c) * np.outer(n, n))


def apply(bmap: BlochMap, s: BlochVector) -> BlochVector:
    return BlochVector.from_array(np.asarray(bmap.matrix) @ np.asarray(s))


def _qfi_from_arrays(s: np.ndarray, ds: np.ndarray) -> float:
    # Fast path shared with the sequence propagation: no validation.
    gap = 1.0 - float(s @ s)
    base = float(ds @ ds)
    if gap < PURITY_THRESHOLD:
        return base
    return base + float(s @ ds) ** 2 / gap


def qfi_bloch(s, ds) -> float:
    """Quantum Fisher information from a Bloch vector and its derivative.

    |ds|^2 + (s.ds)^2/(1-|s|^2) for mixed states; the second term is
    dropped when 1-|s|^2 < PURITY_THRESHOLD (pure-state limit, where
    s.ds = 0 up to roundoff anyway).
    """
    sv = np.asarray(s, dtype=float)
    dv = np.asarray(ds, dtype=float)
    if sv.shape != (3,) or dv.shape != (3,):
        raise DomainError("qfi_bloch needs 3-vectors")
    if not (np.all(np.isfinite(sv)) and np.all(np.isfinite(dv))):
        raise DomainError("qfi_bloch needs finite inputs")
    n2 = float(sv @ sv)
    if n2 > 1.0 + 3.0 * NORM_SLACK:
        raise DomainError(f"state norm^2 {n2} exceeds 1")
    return _qfi_from_arrays(sv, dv)


# ---------------------------------------------------------------------------
# density-matrix route (cross-check path)


@dataclass(frozen=True)
class DensityMatrix:
    """2x2 density matrix: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2) or not np.all(np.isfinite(m)):
            raise DomainError("density matrix must be a finite 2x2 array")
        if np.max(np.abs(m - m.conj().T)) > NORM_SLACK:
            raise DomainError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > NORM_SLACK:
            raise DomainError("density matrix must have unit trace")
        if np.linalg.eigvalsh(m)[0] < -NORM_SLACK:
            raise DomainError("density matrix must be positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def density_from_bloch(s: BlochVector) -> DensityMatrix:
    a = np.asarray(s, dtype=float)
    return DensityMatrix(0.5 * (np.eye(2) + np.einsum("i,ijk->jk", a, PAULI)))


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    m = np.asarray(rho)
    return BlochVector.from_array(np.real(np.einsum("ijk,kj->i", PAULI, m)))


@dataclass(frozen=True)
class Povm:
    """Finite POVM: Hermitian PSD elements resolving the identity."""

    elements: tuple

    def __post_init__(self):
        elems = tuple(np.array(e, dtype=complex) for e in self.elements)
        if not elems:
            raise DomainError("POVM needs at least one element")
        total = np.zeros((2, 2), dtype=complex)
        for e in elems:
            if e.shape != (2, 2):
                raise DomainError("POVM elements must be 2x2")
            if np.max(np.abs(e - e.conj().T)) > NORM_SLACK:
                raise DomainError("POVM elements must be Hermitian")
            if np.linalg.eigvalsh(e)[0] < -NORM_SLACK:
                raise DomainError("POVM elements must be positive semidefinite")
            e.setflags(write=False)
            total += e
        if np.max(np.abs(total - np.eye(2))) > NORM_SLACK:
            raise DomainError("POVM elements must sum to the identity")
        object.__setattr__(self, "elements", elems)


def _sld_matrix(rho: DensityMatrix, drho: np.ndarray) -> np.ndarray:
    """Symmetric logarithmic derivative: solves drho = (L rho + rho L)/2.

    Built in the eigenbasis of rho; matrix elements whose eigenvalue sum
    falls below SLD_DROP are set to zero (standard regularization for
    rank-deficient states).
    """
    w, v = np.linalg.eigh(np.asarray(rho))
    d = v.conj().T @ drho @ v
    denom = w[:, None] + w[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        l_eig = np.where(denom > SLD_DROP, 2.0 * d / denom, 0.0)
    return v @ l_eig @ v.conj().T


def _check_derivative(drho) -> np.ndarray:
    d = np.asarray(drho, dtype=complex)
    if d.shape != (2, 2) or not np.all(np.isfinite(d)):
        raise DomainError("state derivative must be a finite 2x2 array")
    if np.max(np.abs(d - d.conj().T)) > NORM_SLACK:
        raise DomainError("state derivative must be Hermitian")
    if abs(np.trace(d)) > NORM_SLACK:
        raise DomainError("state derivative must be traceless")
    return d


def qfi_sld_oracle(rho: DensityMatrix, drho) -> float:
    """QFI via the SLD eigendecomposition, for cross-checks.

    Independent of qfi_bloch: works entirely at the density-matrix level.
    """
    d = _check_derivative(drho)
    sld = _sld_matrix(rho, d)
    return float(np.real(np.trace(np.asarray(rho) @ sld @ sld)))


def sld_povm(rho: DensityMatrix, drho) -> Povm:
    """Eigenprojectors of the SLD: the measurement attaining the QFI."""
    d = _check_derivative(drho)
    _, v = np.linalg.eigh(_sld_matrix(rho, d))
    return Povm(tuple(np.outer(v[:, k], v[:, k].conj()) for k in range(2)))


def cfi(rho: DensityMatrix, drho, povm: Povm) -> float:
    """Classical Fisher information of the given measurement.

    Sum over outcomes of (dp)^2/p. Outcomes with p < 1e-14 are dropped
    unless |dp| >= 1e-12 there, which signals a non-regular model and
    raises SingularOutcomeError.
    """
    d = _check_derivative(drho)
    rm = np.asarray(rho)
    total = 0.0
    for e in povm.elements:
        p = float(np.real(np.trace(rm @ e)))
        dp = float(np.real(np.trace(d @ e)))
        if p < 1e-14:
            if abs(dp) >= 1e-12:
                raise SingularOutcomeError(
                    f"outcome with p={p:.3e} but dp={dp:.3e}: CFI diverges"
                )
            continue
        total += dp * dp / p
    return total
