"""Averaged single-step channels for the two gate-imperfection models.

Model 1 (vmf): the rotation axis is random, drawn from a von Mises-Fisher
cloud concentrated around z; the rotation angle per step is the nominal
phase. Model 2 (field): the gate is driven by a noisy semiclassical field,
so the rotation angle inherits photon-number fluctuations and the axis
(x, up to phase noise tilting it toward -y) inherits phase fluctuations.

Both averages are computed by adaptive quadrature together with their
parameter derivatives (the derivative of the integrand, same grid), and
both have a Monte-Carlo sampling oracle for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import BlochMap
from .errors import DomainError, NumericError, StructuralError
from .quadrature import adaptive_quad

QUAD_TOL = 1e-10
# Off-pattern entries of the averaged vmf map above this are a quadrature
# bug, not physics.
PATTERN_TOL = 1e-9
# Azimuth average: the integrand is a trigonometric polynomial of degree
# <= 2 in the azimuth, so a 16-point periodic rule is exact.
N_AZIMUTH = 16

MIN_MC_SAMPLES = 10_000
_MC_CHUNK = 1_000_000


@dataclass(frozen=True)
class VmfParams:
    """Random-axis model: concentration kappa, nominal phase phi per step."""

    kappa: float
    phi: float

    def __post_init__(self):
        if not (np.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError(f"kappa must be positive and finite, got {self.kappa}")
        if not np.isfinite(self.phi):
            raise DomainError("phi must be finite")


@dataclass(frozen=True)
class FieldParams:
    """Noisy-field model.

    m_bar: mean photon number per gate; g: coupling (the target rotation
    angle); k_m, k_theta: spread coefficients, giving a photon-number
    standard deviation k_m*sqrt(m_bar) and a phase standard deviation
    k_theta/(2*sqrt(m_bar)). A coherent field has k_m = k_theta = 1.
    """

    m_bar: float
    g: float
    k_m: float = 1.0
    k_theta: float = 1.0

    def __post_init__(self):
        for name in ("m_bar", "k_m", "k_theta"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v}")
        if not np.isfinite(self.g):
            raise DomainError("g must be finite")

    @property
    def sigma_m(self) -> float:
        return self.k_m * np.sqrt(self.m_bar)

    @property
    def sigma_theta(self) -> float:
        return self.k_theta / (2.0 * np.sqrt(self.m_bar))

    @property
    def eta(self) -> float:
        return float(np.exp(-2.0 * self.sigma_theta**2))

    def validity_warnings(self) -> list[str]:
        """Flags for leaving the semiclassical validity regime."""
        out = []
        if self.m_bar < 100:
            out.append(
                f"m_bar={self.m_bar:g} is below the semiclassical regime "
                "(needs m_bar of order 100 or more)"
            )
        if self.g**2 / self.m_bar > 0.1:
            out.append(
                f"g^2/m_bar={self.g ** 2 / self.m_bar:.3g} exceeds 0.1; the "
                "closed-form approximations degrade here"
            )
        return out


@dataclass(frozen=True)
class ChannelWithDerivative:
    """Averaged step map together with its derivative in the encoded parameter."""

    map: BlochMap
    dmap: np.ndarray

    def __post_init__(self):
        d = np.array(self.dmap, dtype=float)
        if d.shape != (3, 3) or not np.all(np.isfinite(d)):
            raise DomainError("dmap must be a finite 3x3 real matrix")
        d.setflags(write=False)
        object.__setattr__(self, "dmap", d)


@dataclass(frozen=True)
class FieldIntegrals:
    """Scalars characterizing the averaged field channel.

    A, B are the cosine/sine averages of the fluctuating rotation angle,
    dA_dg and dB_dg their coupling derivatives, eta the phase-noise
    attenuation, (r, alpha) the modulus and argument of the yz-block
    eigenvalue pair, delta the noise trade-off constant.
    """

    A: float
    B: float
    dA_dg: float
    dB_dg: float
    eta: float
    r: float
    alpha: float
    delta: float

    def __post_init__(self):
        if not (0.0 < self.r <= 1.0 + 1e-9):
            raise DomainError(f"eigenvalue modulus r={self.r} outside (0, 1]")
        if not (0.0 < self.eta <= 1.0):
            raise DomainError(f"eta={self.eta} outside (0, 1]")
        if self.delta < 0:
            raise DomainError("delta must be nonnegative")


# ---------------------------------------------------------------------------
# vmf model


def _rodrigues_entries(n0, n1, n2, cos_a, sin_a):
    """Entries of the rotation matrix about (n0,n1,n2), vectorized.

    Returns a list of 9 arrays in row-major order.
    """
    k = 1.0 - cos_a
    return [
        cos_a + k * n0 * n0, k * n0 * n1 - sin_a * n2, k * n0 * n2 + sin_a * n1,
        k * n0 * n1 + sin_a * n2, cos_a + k * n1 * n1, k * n1 * n2 - sin_a * n0,
        k * n0 * n2 - sin_a * n1, k * n1 * n2 + sin_a * n0, cos_a + k * n2 * n2,
    ]


def _vmf_integrand(p: VmfParams):
    """Stacked (18, npts) integrand over x = cos(polar angle).

    Rows 0..8: azimuth-averaged rotation entries; rows 9..17: their phase
    derivative. The weight is the vmf marginal of x, normalized on [-1, 1];
    expm1 keeps the normalization accurate for tiny kappa.
    """
    kappa, phi = p.kappa, p.phi
    norm = kappa / -np.expm1(-2.0 * kappa)
    az = 2.0 * np.pi * np.arange(N_AZIMUTH) / N_AZIMUTH
    cos_az = np.cos(az)[:, None]
    sin_az = np.sin(az)[:, None]
    cph, sph = np.cos(phi), np.sin(phi)

    def f(x):
        st = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
        n0 = st * cos_az
        n1 = st * sin_az
        n2 = np.broadcast_to(x, n0.shape)
        rot = _rodrigues_entries(n0, n1, n2, cph, sph)
        # d/dphi of the rotation: cos(phi)*cross(n) + sin(phi)*(nn^T - I)
        nnt = [n0 * n0 - 1.0, n0 * n1, n0 * n2,
               n0 * n1, n1 * n1 - 1.0, n1 * n2,
               n0 * n2, n1 * n2, n2 * n2 - 1.0]
        crs = [np.zeros_like(n0), -n2, n1,
               n2, np.zeros_like(n0), -n0,
               -n1, n0, np.zeros_like(n0)]
        drot = [cph * c + sph * q for c, q in zip(crs, nnt)]
        weight = norm * np.exp(kappa * (x - 1.0))
        rows = [e.mean(axis=0) * weight for e in rot + drot]
        return np.stack(rows)

    return f


def vmf_channel(p: VmfParams) -> ChannelWithDerivative:
    """Average of the random-axis rotation and its phase derivative."""
    # At large kappa the weight lives within ~1/kappa of x = 1, far below
    # the first panel's node spacing, so the adaptive rule would accept a
    # spurious zero. Clip to the support; the discarded mass is < e^-40.
    lo = max(-1.0, 1.0 - 40.0 / p.kappa)
    stacked, _ = adaptive_quad(_vmf_integrand(p), lo, 1.0, tol=QUAD_TOL)
    g = stacked[:9].reshape(3, 3)
    dg = stacked[9:].reshape(3, 3)
    return ChannelWithDerivative(BlochMap(g).require_contraction(), dg)


def _covariant_block(g: np.ndarray) -> tuple[float, float]:
    """Check the phase-covariant pattern and return (a, b) of the xy block.

    Pattern: z-row and z-column couple to nothing transverse, and the
    transverse block is a scaled rotation [[a, -b], [b, a]].
    """
    off = max(abs(g[0, 2]), abs(g[1, 2]), abs(g[2, 0]), abs(g[2, 1]),
              abs(g[0, 0] - g[1, 1]), abs(g[0, 1] + g[1, 0]))
    if off > PATTERN_TOL:
        raise StructuralError(
            f"averaged map violates the phase-covariant pattern by {off:.3e}; "
            "this indicates a quadrature failure",
            achieved=off,
        )
    return float(g[0, 0]), float(g[1, 0])


def lambdas_of_map(bmap: BlochMap) -> tuple[float, float]:
    """Transverse and longitudinal shrink factors of a phase-covariant map.

    The transverse 2x2 block is a scaled rotation whose angle tracks the
    nominal phase only in the concentrated limit, so the shrink factor is
    taken as the block's complex-eigenvalue modulus, not a single matrix
    entry.
    """
    m = np.asarray(bmap)
    a, b = _covariant_block(m)
    return float(np.hypot(a, b)), float(m[2, 2])


def vmf_lambdas(p: VmfParams) -> tuple[float, float]:
    """Shrink factors of the averaged random-axis channel."""
    return lambdas_of_map(vmf_channel(p).map)


def vmf_lambda_perp_derivative(p: VmfParams) -> float:
    """d(lambda_perp)/d(phi), from the analytic channel derivative."""
    ch = vmf_channel(p)
    a, b = _covariant_block(ch.map.matrix)
    da, db = float(ch.dmap[0, 0]), float(ch.dmap[1, 0])
    return (a * da + b * db) / np.hypot(a, b)


# ---------------------------------------------------------------------------
# field model

# Upper quadrature cutoff for the standardized photon variable: the
# Gaussian weight at 12 sigma is ~ 5e-32, below double-precision noise.
_U_MAX = 12.0


def _field_integrand(p: FieldParams):
    """Stacked (4, npts) integrand over the standardized photon variable.

    Rows: cos / sin averages of the fluctuating angle, then their coupling
    derivatives (differentiated under the integral sign).
    """
    g = p.g
    c = p.k_m / np.sqrt(p.m_bar)

    def f(u):
        root = np.sqrt(np.clip(1.0 + c * u, 0.0, None))
        w = np.exp(-0.5 * u * u) / np.sqrt(2.0 * np.pi)
        cos_t = np.cos(g * root)
        sin_t = np.sin(g * root)
        return np.stack([w * cos_t, w * sin_t, -w * root * sin_t, w * root * cos_t])

    return f


def delta_of_g(g: float, k_m: float, k_theta: float) -> float:
    """Noise trade-off constant: (k_m^2 g^2 + k_theta^2 (1 - cos g)) / 4."""
    if not np.isfinite(g):
        raise DomainError("g must be finite")
    return float((k_m**2 * g**2 + k_theta**2 * (1.0 - np.cos(g))) / 4.0)


def field_integrals(p: FieldParams) -> FieldIntegrals:
    """Angle averages and the yz-block eigenvalue pair of the field channel.

    The eigenvalues are r * exp(+-i alpha); the oscillatory regime requires
    a positive discriminant, and a genuinely negative one (real eigenvalue
    pair, overdamped averaging) is reported as an error. Discriminants
    negative only at roundoff scale (e.g. g=0, where the exact value is 0)
    are clamped to zero.
    """
    lo = -np.sqrt(p.m_bar) / p.k_m
    vals, _ = adaptive_quad(_field_integrand(p), lo, _U_MAX, tol=QUAD_TOL)
    a_int, b_int, da_int, db_int = (float(v) for v in vals)
    eta = p.eta
    term_osc = 16.0 * np.sqrt(eta) * b_int**2
    term_damp = (1.0 - a_int) ** 2 * (1.0 - eta) ** 2
    disc = term_osc - term_damp
    if disc < 0.0:
        if disc < -1e-12 * (1.0 + term_osc + term_damp):
            raise NumericError(
                "field channel has a real eigenvalue pair here "
                f"(discriminant {disc:.3e}); outside the oscillatory regime",
                achieved=disc,
            )
        disc = 0.0
    re = (1.0 - eta + a_int * (eta + 3.0)) / 4.0
    im = np.sqrt(disc) / 4.0
    return FieldIntegrals(
        A=a_int,
        B=b_int,
        dA_dg=da_int,
        dB_dg=db_int,
        eta=eta,
        r=float(np.hypot(re, im)),
        alpha=float(np.arctan2(im, re)),
        delta=delta_of_g(p.g, p.k_m, p.k_theta),
    )


def field_channel(p: FieldParams) -> ChannelWithDerivative:
    """Averaged field-driven step map and its coupling derivative.

    The x axis decouples; the yz block carries the rotation-like action
    whose eigenvalues are r * exp(+-i alpha).
    """
    fi = field_integrals(p)
    q = fi.eta**0.25
    g = np.array([
        [1.0 - (1.0 - fi.A) * (1.0 - fi.eta) / 2.0, 0.0, 0.0],
        [0.0, 1.0 - (1.0 - fi.A) * (1.0 + fi.eta) / 2.0, -q * fi.B],
        [0.0, q * fi.B, fi.A],
    ])
    dg = np.array([
        [fi.dA_dg * (1.0 - fi.eta) / 2.0, 0.0, 0.0],
        [0.0, fi.dA_dg * (1.0 + fi.eta) / 2.0, -q * fi.dB_dg],
        [0.0, q * fi.dB_dg, fi.dA_dg],
    ])
    return ChannelWithDerivative(BlochMap(g).require_contraction(), dg)


def optimal_squeezing(g: float) -> tuple[float, float]:
    """Squeezing exponent minimizing the trade-off constant, and the minimum.

    Number-phase squeezing scales k_m -> e^{-s}, k_theta -> e^{s}; the
    product bound gives s* = ln(g / sqrt(1 - cos g)) / 2 with minimum
    g * sqrt(1 - cos g) / 2.
    """
    if not (np.isfinite(g) and g > 0):
        raise DomainError("g must be positive and finite")
    base = 1.0 - np.cos(g)
    if base < 1e-12:
        raise DomainError(f"g={g:g} is degenerate (a full-turn multiple)")
    s_star = 0.5 * np.log(g / np.sqrt(base))
    delta_min = 0.5 * g * np.sqrt(base)
    achieved = delta_of_g(g, np.exp(-s_star), np.exp(s_star))
    if abs(achieved - delta_min) > 1e-10:
        raise NumericError(
            "squeezing optimum failed its consistency check",
            achieved=abs(achieved - delta_min),
        )
    return float(s_star), float(delta_min)


# ---------------------------------------------------------------------------
# Monte-Carlo oracle


def _mc_accumulate(entry_chunks):
    """Entrywise mean and standard error from chunked samples."""
    s = np.zeros(9)
    s2 = np.zeros(9)
    total = 0
    for entries, count in entry_chunks:
        for i, e in enumerate(entries):
            s[i] += e.sum()
            s2[i] += (e * e).sum()
        total += count
    mean = s / total
    var = np.clip(s2 / total - mean**2, 0.0, None)
    se = np.sqrt(var / total)
    return mean.reshape(3, 3), se.reshape(3, 3)


def _mc_vmf_chunks(p: VmfParams, samples: int, rng):
    cph, sph = np.cos(p.phi), np.sin(p.phi)
    tail = -np.expm1(-2.0 * p.kappa)
    left = samples
    while left > 0:
        k = min(_MC_CHUNK, left)
        u = rng.random(k)
        # Inverse CDF of cos(polar angle) under the vmf marginal.
        x = 1.0 + np.log1p(-(1.0 - u) * tail) / p.kappa
        psi = 2.0 * np.pi * rng.random(k)
        st = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
        entries = _rodrigues_entries(st * np.cos(psi), st * np.sin(psi), x, cph, sph)
        yield entries, k
        left -= k


def _mc_field_chunks(p: FieldParams, samples: int, rng, photon_stats: str):
    left = samples
    while left > 0:
        k = min(_MC_CHUNK, left)
        if photon_stats == "poisson":
            m = rng.poisson(p.m_bar, k).astype(float)
        else:
            m = rng.normal(p.m_bar, p.sigma_m, k)
            # Redraw negatives: the photon count cannot go below zero.
            while np.any(m < 0.0):
                bad = m < 0.0
                m[bad] = rng.normal(p.m_bar, p.sigma_m, int(bad.sum()))
        theta = rng.normal(0.0, p.sigma_theta, k)
        ang = p.g * np.sqrt(m / p.m_bar)
        entries = _rodrigues_entries(
            np.cos(theta), -np.sin(theta), np.zeros(k), np.cos(ang), np.sin(ang)
        )
        yield entries, k
        left -= k


def mc_channel_oracle(model, samples: int, seed: int,
                      photon_stats: str = "gaussian",
                      return_stderr: bool = False):
    """Empirical mean map over i.i.d. gate draws; deterministic per seed.

    Sampling is chunked with fixed chunk boundaries so partial sums
    combine identically on every run. With return_stderr=True also
    returns the entrywise standard error matrix.
    """
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    if photon_stats not in ("gaussian", "poisson"):
        raise DomainError(f"unknown photon_stats {photon_stats!r}")
    rng = np.random.default_rng(seed)
    if isinstance(model, VmfParams):
        chunks = _mc_vmf_chunks(model, samples, rng)
    elif isinstance(model, FieldParams):
        chunks = _mc_field_chunks(model, samples, rng, photon_stats)
    else:
        raise DomainError(f"unsupported model type {type(model).__name__}")
    mean, se = _mc_accumulate(chunks)
    bmap = BlochMap(mean)
    return (bmap, se) if return_stderr else bmap
