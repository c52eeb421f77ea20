"""Independent oracles used across the test modules.

Everything here recomputes expected values by a route different from the
library's own: 2x2 density-matrix conjugation instead of 3x3 rotation
algebra, closed-form sphere moments instead of quadrature, an exhaustive
planner instead of the vectorized argmin. Tests freeze the outputs of
these oracles, never the library's.
"""

import numpy as np

from qpecost import BlochVector, FieldParams, default_n_max, delta_of_g
from qpecost.bloch import PAULI

X_AXIS = BlochVector(1.0, 0.0, 0.0)
Z_AXIS = BlochVector(0.0, 0.0, 1.0)


def su2_matrix(axis, angle):
    """exp(-i angle/2 axis.sigma) built entrywise from the half-angle."""
    n = np.asarray(axis, dtype=float)
    sigma_n = n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]
    return np.cos(angle / 2.0) * np.eye(2) - 1j * np.sin(angle / 2.0) * sigma_n


def conjugate_bloch(axis, angle, s):
    """Rotate a Bloch vector by conjugating the 2x2 density matrix."""
    u = su2_matrix(axis, angle)
    rho = 0.5 * (np.eye(2) + s[0] * PAULI[0] + s[1] * PAULI[1] + s[2] * PAULI[2])
    out = u @ rho @ u.conj().T
    return np.array([np.real(np.trace(out @ PAULI[k])) for k in range(3)])


def langevin_mean(kappa):
    """E[x] under the vMF marginal on [-1, 1]: coth(kappa) - 1/kappa."""
    if kappa < 1e-3:
        # series: kappa/3 - kappa^3/45 + 2 kappa^5/945
        return kappa / 3.0 - kappa**3 / 45.0 + 2.0 * kappa**5 / 945.0
    return 1.0 / np.tanh(kappa) - 1.0 / kappa


def vmf_moment_lambdas(kappa, phi):
    """(lambda_perp, lambda_par) from closed-form axis moments.

    Averaging the rotation over the azimuth kills all terms odd in the
    transverse axis components, leaving polynomials in E[x] and E[x^2];
    the transverse block becomes [[a, -b], [b, a]].
    """
    ex = langevin_mean(kappa)
    ex2 = 1.0 - 2.0 * ex / kappa
    a = 1.0 - (1.0 - np.cos(phi)) * (1.0 + ex2) / 2.0
    b = np.sin(phi) * ex
    lam_par = 1.0 - (1.0 - np.cos(phi)) * (1.0 - ex2)
    return float(np.hypot(a, b)), float(lam_par)


def finite_difference_map(build, x, step=1e-6):
    """Central difference of a parameter -> 3x3 matrix function."""
    hi = np.asarray(build(x + step), dtype=float)
    lo = np.asarray(build(x - step), dtype=float)
    return (hi - lo) / (2.0 * step)


def brute_force_plan(values, inv):
    """Plain-loop search over step counts for the cheapest round plan.

    Each step count N defines exactly one plan: floor(inv / F_N) full
    rounds plus the shortest tail round that covers the remaining
    information (with the 1e-9 slack of the library contract). Returns
    (gates, n) or None when no step count works; ties prefer smaller N.
    """
    values = np.asarray(values, dtype=float)
    cummax = np.maximum.accumulate(values)
    best = None
    for i, f_n in enumerate(values):
        n = i + 1
        if f_n <= 0.0:
            continue
        q_full = int(np.floor(inv / f_n))
        resid = inv - q_full * f_n
        if resid <= 1e-9:
            tail = 0
        else:
            j = int(np.searchsorted(cummax, resid, side="left"))
            if j >= values.size:
                continue
            tail = j + 1
        gates = n * q_full + tail
        if best is None or gates < best[0] or (gates == best[0] and n < best[1]):
            best = (gates, n)
    return best


def field_series(m_bar, g, n_max=None, k_m=1.0, k_theta=1.0):
    """Exact information series for the noisy-field gate from z-polarized start."""
    from qpecost import field_channel, sequence_qfi

    p = FieldParams(m_bar, g, k_m, k_theta)
    if n_max is None:
        n_max = default_n_max(m_bar / delta_of_g(g, k_m, k_theta))
    return sequence_qfi(field_channel(p), Z_AXIS, n_max)


def vmf_series(kappa, phi, n_max=None):
    """Exact information series for the random-axis gate from x-polarized start."""
    from qpecost import VmfParams, sequence_qfi, vmf_channel, vmf_lambdas

    p = VmfParams(kappa, phi)
    if n_max is None:
        lam, _ = vmf_lambdas(p)
        n_max = default_n_max(-0.5 / np.log(lam))
    return sequence_qfi(vmf_channel(p), X_AXIS, n_max)
