"""
omit/dynamics.py

Linearized two-mode Langevin system in the frame rotating at ω_m:

    d/dt (d, c) = M (d, c) − (√κ a_in, √Γ c_in)
    M = [[−κ/2,  iG          ],
         [ iG,  −Γ/2 − iε    ]]
    d_out = d_in + √κ d

with the probe a_pr_in e^{−iδt} switched on at t = 0.

Two kinds of functions live here:

  closed forms   green_function, mean_fields, phonon_number, cav_photon_number,
                 steady_state_phonon_number, homodyne_mean, reflection_coefficient
  oracles        mean_fields_oracle (adaptive RK45 on the mean-field ODE) and
                 homodyne_variance_oracle (white-noise quadrature at finite κ)

The oracles take no large-κ limit; omit.readout is validated against them.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.linalg import solve_continuous_lyapunov

from omit.errors import DomainError, IntegrationError
from omit.params import derived_quantities

logger = logging.getLogger(__name__)

_SERIES_CUTOFF = 1e-6
RWA_MARGIN = 0.1


@dataclass(frozen=True, eq=False)
class GreenMatrix:
    """e^{Mτ}; rows/cols ordered (optical d, mechanical c)."""

    entries: np.ndarray
    tau: float

    @property
    def dd(self):
        return self.entries[0, 0]

    @property
    def cc(self):
        return self.entries[1, 1]

    @property
    def dc(self):
        return self.entries[0, 1]

    @property
    def cd(self):
        return self.entries[1, 0]


@dataclass(frozen=True)
class FieldMeans:
    d_mean: complex
    c_mean: complex
    t: float
    epsilon: float


@dataclass(frozen=True)
class HomodyneStats:
    mean: float
    variance: float
    tau: float
    phi: float


# ── Drift matrix and Green's function ─────────────────────────────────────────

def drift_matrix(sys, drive, epsilon=0.0):
    G = derived_quantities(sys, drive).G
    return np.array([
        [-sys.kappa / 2.0, 1j * G],
        [1j * G, -sys.gamma_mech / 2.0 - 1j * epsilon],
    ], dtype=complex)


def _expm2(A, t):
    """
    e^{At} for a 2×2 matrix via cosh/sinh of the half eigenvalue splitting.

    t may be a scalar or an array; the result has shape t.shape + (2, 2).
    sinh(x)/x falls back to its Taylor series for |x| < 1e-6, which keeps
    the exceptional point (degenerate eigenvalues) finite.
    """
    t = np.asarray(t, dtype=float)
    m = 0.5 * (A[0, 0] + A[1, 1])
    s = np.sqrt(0.25 * (A[0, 0] - A[1, 1]) ** 2 + A[0, 1] * A[1, 0] + 0j)
    x = s * t
    small = np.abs(x) < _SERIES_CUTOFF
    # e^{mt}cosh(st) and e^{mt}sinh(st)/s written with e^{(m±s)t} so that
    # neither factor overflows for κt ≫ 1
    e_plus = np.exp((m + s) * t)
    e_minus = np.exp((m - s) * t)
    safe_s = s if s != 0 else 1.0
    pref = np.exp(m * t)
    diag = np.where(small, pref * (1.0 + 0.5 * x * x), 0.5 * (e_plus + e_minus))
    off = np.where(small, pref * t * (1.0 + x * x / 6.0), 0.5 * (e_plus - e_minus) / safe_s)
    B = A - m * np.eye(2)
    return np.asarray(diag)[..., None, None] * np.eye(2) + np.asarray(off)[..., None, None] * B


def green_function(tau, sys, drive, epsilon=0.0):
    """
    Green's function of the Heisenberg-Langevin equations at delay tau.

    Raises DomainError for tau < 0.
    """
    if tau < 0:
        raise DomainError(f'green_function needs tau >= 0, got {tau!r}')
    M = drift_matrix(sys, drive, epsilon)
    return GreenMatrix(entries=_expm2(M, tau), tau=float(tau))


# ── Mean fields ───────────────────────────────────────────────────────────────

def _probe_vector(sys, drive):
    return np.array([math.sqrt(sys.kappa) * drive.a_pr_in, 0.0], dtype=complex)


def _shifted(sys, drive, epsilon):
    M = drift_matrix(sys, drive, epsilon)
    return M + 1j * drive.delta * np.eye(2)


def mean_fields(t, sys, drive, epsilon=0.0):
    """Closed-form convolution of the Green's function with the probe input."""
    if t <= 0 or drive.a_pr_in == 0:
        return FieldMeans(0j, 0j, float(t), float(epsilon))
    A = _shifted(sys, drive, epsilon)
    b = _probe_vector(sys, drive)
    # e^{At} = e^{iδt} e^{Mt}
    growth = _expm2(A, t) - np.eye(2)
    x = -np.exp(-1j * drive.delta * t) * np.linalg.solve(A, growth @ b)
    return FieldMeans(complex(x[0]), complex(x[1]), float(t), float(epsilon))


def steady_state_fields(sys, drive, epsilon=0.0):
    """(d, c) at t → ∞ with the probe phasor e^{−iδt} removed."""
    A = _shifted(sys, drive, epsilon)
    x = np.linalg.solve(A, _probe_vector(sys, drive))
    return complex(x[0]), complex(x[1])


def reflection_coefficient(delta, sys, drive, epsilon=0.0):
    """
    Steady-state OMIT reflection d_out/a_pr_in at probe detuning delta.

    Equals (C − 1)/(C + 1) at delta = epsilon = 0, so the probe is fully
    absorbed at impedance matching.
    """
    M = drift_matrix(sys, drive, epsilon)
    A = M + 1j * delta * np.eye(2)
    inv00 = np.linalg.inv(A)[0, 0]
    return complex(1.0 + sys.kappa * inv00)


def mean_fields_oracle(t, sys, drive, epsilon=0.0, rtol=1e-10):
    """
    Mean fields by adaptive RK45 integration of the mean-field equations.

    Independent of the closed form: only the drift matrix is shared.
    """
    if t <= 0 or drive.a_pr_in == 0:
        return FieldMeans(0j, 0j, float(t), float(epsilon))
    M = drift_matrix(sys, drive, epsilon)
    b = _probe_vector(sys, drive)
    delta = drive.delta

    def rhs(time, x):
        return M @ x - b * np.exp(-1j * delta * time)

    scale = abs(b[0]) / max(sys.kappa, sys.gamma_mech)
    sol = solve_ivp(rhs, (0.0, float(t)), np.zeros(2, dtype=complex),
                    method='RK45', rtol=rtol, atol=rtol * scale * 1e-2)
    if not sol.success:
        raise IntegrationError(f'mean-field ODE failed at t={t!r}: {sol.message}')
    x = sol.y[:, -1]
    return FieldMeans(complex(x[0]), complex(x[1]), float(t), float(epsilon))


# ── Occupation numbers (large-κ closed forms) ─────────────────────────────────

def steady_state_phonon_number(sys, drive, epsilon=0.0):
    g = sys.gamma_mech * (1.0 + drive.c_om)
    return 4.0 * sys.gamma_mech * drive.c_om * drive.a_pr_in ** 2 / (g * g + 4.0 * epsilon ** 2)


def phonon_number(t, sys, drive, epsilon=0.0):
    """
    n_mech(t) after the probe switches on, valid for κ ≫ G, χ, Γ.

    Accepts scalar or array t.
    """
    t = np.asarray(t, dtype=float)
    g = sys.gamma_mech * (1.0 + drive.c_om)
    n_ss = steady_state_phonon_number(sys, drive, epsilon)
    ring = 1.0 + np.exp(-g * t) - 2.0 * np.cos(epsilon * t) * np.exp(-g * t / 2.0)
    out = n_ss * ring
    return float(out) if out.ndim == 0 else out


def cav_photon_number(t, sys, drive, epsilon=0.0):
    """n_cav(t), the intracavity photon number, in the same regime as phonon_number."""
    t = np.asarray(t, dtype=float)
    gamma = sys.gamma_mech
    c = drive.c_om
    g = gamma * (1.0 + c)
    decay = np.exp(-g * t / 2.0)
    bracket = (gamma * c * decay * (2.0 * gamma * np.cos(epsilon * t) - 4.0 * epsilon * np.sin(epsilon * t))
               + gamma ** 2 + 4.0 * epsilon ** 2
               + gamma ** 2 * c ** 2 * decay ** 2)
    out = 4.0 * drive.a_pr_in ** 2 / (sys.kappa * (g * g + 4.0 * epsilon ** 2)) * bracket
    return float(out) if out.ndim == 0 else out


def rwa_validity_check(sys, drive, n_mech):
    """(G√n ≪ 2ω_m, g₀√n ≪ ω_m), each "≪" read as a factor of 10."""
    root_n = math.sqrt(max(n_mech, 0.0))
    G = derived_quantities(sys, drive).G
    return (G * root_n <= RWA_MARGIN * 2.0 * sys.omega_m,
            sys.g0 * root_n <= RWA_MARGIN * sys.omega_m)


# ── Homodyne current ──────────────────────────────────────────────────────────

def integrated_output(tau, sys, drive, epsilon=0.0):
    """∫₀^τ e^{iδt} ⟨d_out(t)⟩ dt (complex, finite κ)."""
    if tau < 0:
        raise DomainError(f'integration time must be >= 0, got {tau!r}')
    if tau == 0 or drive.a_pr_in == 0:
        return 0j
    A = _shifted(sys, drive, epsilon)
    b = _probe_vector(sys, drive)
    inner = np.linalg.solve(A, (_expm2(A, tau) - np.eye(2)) @ b) - tau * b
    field = -np.linalg.solve(A, inner)
    return complex(drive.a_pr_in * tau + math.sqrt(sys.kappa) * field[0])


def homodyne_mean(tau, phi, sys, drive, epsilon=0.0):
    """Mean integrated homodyne current ⟨I(τ)⟩ at LO angle phi."""
    J = integrated_output(tau, sys, drive, epsilon)
    return 2.0 * math.sqrt(sys.kappa) * float(np.real(np.exp(1j * phi) * np.conj(J)))


def homodyne_signal_oracle(tau, phi, sys, drive, chi):
    """⟨I⟩ at ε = −χ minus ⟨I⟩ at ε = +χ."""
    return homodyne_mean(tau, phi, sys, drive, -chi) - homodyne_mean(tau, phi, sys, drive, chi)


def oracle_optimal_angle(tau, sys, drive, chi):
    """
    LO angle maximising the finite-κ mean difference, for any probe detuning.

    The difference is 2√κ|ΔJ| cos(φ − arg ΔJ), so the maximiser is arg ΔJ.
    """
    dJ = integrated_output(tau, sys, drive, -chi) - integrated_output(tau, sys, drive, chi)
    return float(np.angle(dJ))


def homodyne_variance_oracle(tau, phi, sys, drive, epsilon=0.0, rtol=1e-8):
    """
    Var[I(τ)] from the white-noise inputs, without any large-κ limit.

    The current is a linear functional of the input noises,
    I = √κ Σ_j ∫ (A_j(s) ξ_j(s) + h.c.) ds, so its symmetrized variance is
    κ Σ_j (2N_j + 1) ∫ |A_j(s)|² ds with N = (0, n_th). The kernel over
    [0, τ] is integrated adaptively; the pre-probe history (s < 0) is the
    stationary covariance, a Lyapunov solve propagated by the Green's
    function. Noise is phase-insensitive, so phi drops out.

    Raises IntegrationError when quad's error estimate exceeds rtol.
    """
    if tau < 0:
        raise DomainError(f'integration time must be >= 0, got {tau!r}')
    if tau == 0:
        return 0.0

    kappa, gamma = sys.kappa, sys.gamma_mech
    M = drift_matrix(sys, drive, epsilon)
    A = M + 1j * drive.delta * np.eye(2)
    A_inv = np.linalg.inv(A)
    K = np.array([math.sqrt(kappa), math.sqrt(gamma)])
    weights = np.array([1.0, 2.0 * sys.n_th + 1.0])
    root_kappa = math.sqrt(kappa)

    def kernel_sq(u):
        # u = τ − s ∈ [0, τ]; the overall phase e^{−iφ}e^{iδs} drops out of |A_j|²
        row = A_inv[0] @ (_expm2(A, u) - np.eye(2))
        amp = -root_kappa * K * row
        amp[0] += 1.0
        return float(np.sum(weights * np.abs(amp) ** 2))

    edges = [0.0]
    for k in (1.0, 10.0, 60.0):
        u = k / kappa
        if u < tau:
            edges.append(u)
    g_tot = gamma * (1.0 + drive.c_om)
    for k in (1.0, 10.0):
        u = k / g_tot
        if edges[-1] < u < tau:
            edges.append(u)
    edges.append(float(tau))

    inside = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = quad(kernel_sq, lo, hi, limit=400, epsabs=0.0, epsrel=rtol * 0.1)
        if err > rtol * max(abs(val), (hi - lo)):
            raise IntegrationError(
                f'variance quadrature on [{lo:.3g}, {hi:.3g}] reached {err:.3g}, '
                f'above tolerance {rtol:.1g}')
        inside += val

    # s < 0: amplitudes (r e^{Mu})_j K_j with u = −s > 0; ∫ e^{Mu} W e^{M†u} du
    # solves M P + P M† = −W
    r = A_inv[0] @ (_expm2(A, tau) - np.eye(2))
    W = np.diag(weights * K ** 2).astype(complex)
    P = solve_continuous_lyapunov(M, -W)
    past = kappa * float(np.real(r @ P @ r.conj()))

    variance = kappa * (inside + past)
    logger.debug('variance oracle tau=%.3g: inside=%.6g past=%.6g', tau, inside, past)
    return max(variance, 0.0)


def homodyne_stats(tau, phi, sys, drive, epsilon=0.0, rtol=1e-8):
    return HomodyneStats(
        mean=homodyne_mean(tau, phi, sys, drive, epsilon),
        variance=homodyne_variance_oracle(tau, phi, sys, drive, epsilon, rtol=rtol),
        tau=float(tau),
        phi=float(phi),
    )


def oracle_snr(tau, sys, drive, chi, phi=None, rtol=1e-8):
    """SNR from the finite-κ mean difference and summed branch variances."""
    if phi is None:
        phi = oracle_optimal_angle(tau, sys, drive, chi)
    signal = homodyne_signal_oracle(tau, phi, sys, drive, chi)
    var = (homodyne_variance_oracle(tau, phi, sys, drive, -chi, rtol=rtol)
           + homodyne_variance_oracle(tau, phi, sys, drive, chi, rtol=rtol))
    return abs(signal) / math.sqrt(var) if var > 0 else 0.0
