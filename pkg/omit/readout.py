"""
omit/readout.py

Closed-form readout SNR and everything built on it: measurement-time root
finding, cooperativity optimization (with and without a cutoff), critical
probe power and phonon number, Purcell/QND budget and the χ sweeps behind
the measurement-time figures.

The closed forms assume κ ≫ G, χ, Γ_mech and a resonant probe (δ = 0) read
out at the optimal homodyne angle. Internally everything is evaluated in
Γ_mech units: T = Γτ, x = χ/Γ, a_n = a_pr_in/√Γ.

With z = Γ(1 + C) + 2iχ and φ₂(w) = (eʷ − 1 − w)/w², the transient integral

    X(τ) = τ² [φ₂(−z*τ/2) − φ₂(−zτ/2)]

gives S/√κ = 2CΓa|X| and 1 − G = 1 + (4ΓCn_th/(1 + C)) τ Re φ₂(−zτ/2).
Writing S and G through φ₂ (instead of the cos/sin form) keeps the SNR
accurate down to τΓ ~ 1e-6 where the τ⁵ ring-up law holds.

Times in seconds are quoted against the linear linewidth Γ/2π, the same
convention as τ_Purcell and T1 = 2π/γ_rel, so that every entry of the QND
budget shares one clock: τ[s] = Γτ/(Γ/2π). to_seconds and to_normalized are
the only place this happens. omit.dynamics works in plain angular time
t = Γτ/Γ; convert with to_normalized(tau, Γ)/Γ before calling it.
"""

import functools
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import bisect, minimize_scalar
from scipy.special import expm1

from omit.dynamics import phonon_number
from omit.errors import DomainError, NoCrossingError, OmitError
from omit.params import MARGIN, TWO_PI
from omit.sweep import SweepResult, ordered_map

logger = logging.getLogger(__name__)

TAU0_GAMMA = 1e-3
TAU_MAX_GAMMA = 1e9
ROOT_RTOL = 1e-10
C_MIN = 1e-3
C_MAX = 1e6
GRID_POINTS = 64
C_XATOL = 1e-4
EXTEND_STEPS = 80
ETA_SW = 0.16

CHI_COLUMNS = ('chi_over_gamma', 'c_om_opt', 'tau_gamma', 'tau_seconds',
               'n_mech_tau', 'n_cav_tau', 'n_crit', 'warnings')


@dataclass(frozen=True)
class SnrComponents:
    """
    Signal and noise at integration time τ.

    signal and noise are reported per √κ (both carry one factor √κ, which
    cancels in snr).
    """

    signal: float
    noise: float
    f_term: float
    g_term: float
    xi: float
    snr: float


@dataclass(frozen=True)
class ReadoutResult:
    tau_meas: float
    c_om_opt: float
    snr_at_tau: float
    n_mech_at_tau: float
    n_crit: float
    n_cav_at_tau: float = math.nan
    warnings: tuple = ()


@dataclass(frozen=True)
class CriticalProbe:
    """Largest probe flux keeping the steady-state phonon number below n_crit."""

    a_sq_bound: float
    a_sq_min: float
    c_om_at_min: float

    @property
    def a_bound(self):
        return math.sqrt(self.a_sq_bound)

    @property
    def a_min(self):
        return math.sqrt(self.a_sq_min)


@dataclass(frozen=True)
class FeasibilityReport:
    tau_meas: float
    tau_purcell: float
    t1: float
    qnd_ratio: float
    detuning_criterion_ok: bool
    cooperativity_criterion_ok: bool
    c_om: float = math.nan
    n_mech_at_tau: float = math.nan
    n_crit: float = math.nan
    phonon_budget: float = math.nan
    critical_probe: CriticalProbe = None
    warnings: tuple = field(default_factory=tuple)

    @property
    def phonon_budget_ok(self):
        return self.n_mech_at_tau <= self.phonon_budget


# ── Time convention ───────────────────────────────────────────────────────────

def to_seconds(T, gamma_mech):
    """Normalized time Γτ → seconds on the Γ/2π clock."""
    return T * TWO_PI / gamma_mech


def to_normalized(tau, gamma_mech):
    """Seconds on the Γ/2π clock → normalized time Γτ; accepts numpy arrays."""
    return tau * gamma_mech / TWO_PI


# ── Closed-form SNR ───────────────────────────────────────────────────────────

def _phi2(w):
    """(eʷ − 1 − w)/w², with its Taylor series near w = 0."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-2
    safe = np.where(small, 1.0, w)
    series = 0.5 + w / 6.0 + w ** 2 / 24.0 + w ** 3 / 120.0 + w ** 4 / 720.0 + w ** 5 / 5040.0
    return np.where(small, series, (expm1(safe) - safe) / (safe * safe))


def _transient(T, x, c):
    """X·Γ² in normalized time T = Γτ, x = χ/Γ."""
    z = (1.0 + c) + 2j * x
    return T * T * (_phi2(-np.conj(z) * T / 2.0) - _phi2(-z * T / 2.0))


def _g_term(T, x, c, n_th):
    if n_th == 0 or c == 0:
        return np.zeros_like(np.asarray(T, dtype=float))
    z = (1.0 + c) + 2j * x
    return -(4.0 * c * n_th / (1.0 + c)) * T * np.real(_phi2(-z * T / 2.0))


def _snr_sq_norm(T, x, c, a_n, n_th):
    T = np.asarray(T, dtype=float)
    X = _transient(T, x, c)
    one_minus_g = 1.0 - _g_term(T, x, c, n_th)
    safe_T = np.where(T > 0, T, 1.0)
    val = 4.0 * c * c * a_n * a_n * np.abs(X) ** 2 / (2.0 * safe_T * one_minus_g)
    return np.where(T > 0, val, 0.0)


def snr_squared(tau, chi, c_om, a_pr_norm, n_th, gamma_mech):
    """SNR²(τ); accepts array tau."""
    T = to_normalized(np.asarray(tau, dtype=float), gamma_mech)
    out = _snr_sq_norm(T, abs(chi) / gamma_mech, c_om, a_pr_norm, n_th)
    return float(out) if np.ndim(out) == 0 else out


def snr_components(tau, chi, c_om, a_pr_norm, n_th, gamma_mech):
    """
    S, N, F, G and ξ at integration time tau for a resonant probe.

    Raises DomainError for tau < 0 or when 1 − G ≤ 0.
    """
    if tau < 0:
        raise DomainError(f'tau must be >= 0, got {tau!r}')
    gamma = gamma_mech
    x = abs(chi) / gamma
    T = to_normalized(tau, gamma)
    # angular time, the clock S and N are written in
    t = T / gamma
    g_norm = 1.0 + c_om
    xi = math.atan(2.0 * x / g_norm)
    if T == 0:
        return SnrComponents(0.0, 0.0, 1.0, 0.0, xi, 0.0)

    a = a_pr_norm * math.sqrt(gamma)
    X = complex(_transient(T, x, c_om)) / (gamma * gamma)
    signal = 2.0 * c_om * gamma * a * abs(X)
    g_term = float(_g_term(T, x, c_om, n_th))
    if 1.0 - g_term <= 0:
        raise DomainError(f'1 - G(tau) = {1.0 - g_term:.3g} <= 0; outside the validity of the noise formula')
    noise = math.sqrt(2.0 * t * (1.0 - g_term))

    sin2xi = math.sin(2.0 * xi)
    if x == 0:
        decay = math.exp(-g_norm * T / 2.0)
        f_term = 4.0 * (1.0 - decay) / (g_norm * T) - decay
    else:
        f_term = 1.0 - g_norm * gamma * abs(X) / (2.0 * t * sin2xi)
    snr = signal / noise if noise > 0 else 0.0
    return SnrComponents(signal=signal, noise=noise, f_term=f_term, g_term=g_term, xi=xi, snr=snr)


def optimal_homodyne_angle(tau, chi, c_om, a_pr_norm, gamma_mech):
    """
    LO angle maximising ⟨I⟩_{−χ} − ⟨I⟩_{+χ} for a resonant probe.

    The mean difference is 2√κ a C Γ |X| cos(φ − arg X); with arg a_pr_in = 0
    the optimum is arg X, which tends to π/2 once the mechanics has rung up.
    """
    if tau <= 0:
        raise DomainError(f'tau must be > 0, got {tau!r}')
    X = complex(_transient(to_normalized(tau, gamma_mech), chi / gamma_mech, c_om))
    return math.atan2(X.imag, X.real)


# ── Measurement time ──────────────────────────────────────────────────────────

def _crossing_norm(x, c, a_n, n_th, rtol=ROOT_RTOL, tau_max=TAU_MAX_GAMMA):
    """First T with SNR²(T) = 1: bracket doubling from T0, then bisection."""
    if x == 0 or c == 0 or a_n == 0:
        raise NoCrossingError('SNR is identically zero (chi, c_om or probe amplitude is 0)',
                              tau_max=tau_max, snr_sq_max=0.0)

    def f(T):
        return float(_snr_sq_norm(T, x, c, a_n, n_th)) - 1.0

    lo, hi = 0.0, TAU0_GAMMA
    while f(hi) < 0:
        lo, hi = hi, 2.0 * hi
        if hi > tau_max:
            raise NoCrossingError(
                f'SNR² stays below 1 up to tau*gamma = {tau_max:.3g} '
                f'(chi/gamma={x:.4g}, c_om={c:.4g})',
                tau_max=tau_max, snr_sq_max=f(lo) + 1.0)
    logger.debug('bracket [%.6g, %.6g] for chi/gamma=%.4g c_om=%.4g', lo, hi, x, c)
    return bisect(f, lo, hi, xtol=1e-300, rtol=rtol, maxiter=500)


def measurement_time(chi, a_pr_norm, n_th, gamma_mech, c_om, rtol=ROOT_RTOL):
    """
    Time to reach SNR² = 1 at fixed cooperativity, in seconds.

    First-crossing semantics: the SNR may be non-monotone through the
    transient, and τ_meas is the first time it reaches 1.
    Raises NoCrossingError if SNR² < 1 up to τ = 1e9/Γ.
    """
    T = _crossing_norm(abs(chi) / gamma_mech, c_om, a_pr_norm, n_th, rtol=rtol)
    return to_seconds(T, gamma_mech)


def _optimize_norm(x, a_n, n_th, c_max, c_min=C_MIN, rtol=ROOT_RTOL):
    if c_max <= c_min:
        c_min = c_max * 1e-3
    grid = np.logspace(math.log10(c_min), math.log10(c_max), GRID_POINTS)

    def tau_of(c):
        try:
            return _crossing_norm(x, c, a_n, n_th, rtol=rtol)
        except NoCrossingError:
            return math.inf

    taus = np.array([tau_of(c) for c in grid])
    if not np.isfinite(taus).any():
        raise NoCrossingError(
            f'no cooperativity in [{c_min:.3g}, {c_max:.3g}] reaches SNR 1 '
            f'(chi/gamma={x:.4g})', tau_max=TAU_MAX_GAMMA)
    k = int(np.argmin(taus))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]

    best_c, best_T = float(grid[k]), float(taus[k])
    res = minimize_scalar(lambda u: tau_of(math.exp(u)),
                          bounds=(math.log(lo), math.log(hi)),
                          method='bounded', options={'xatol': C_XATOL})
    if res.success and res.fun < best_T:
        best_c, best_T = float(math.exp(res.x)), float(res.fun)
    logger.info('chi/gamma=%.4g: c_om_opt=%.6g tau*gamma=%.6g', x, best_c, best_T)
    return best_c, best_T


def optimize_cooperativity(chi, a_pr_norm, n_th, gamma_mech, c_max=C_MAX, rtol=ROOT_RTOL):
    """
    Cooperativity minimising τ_meas over [1e-3, c_max].

    64-point logarithmic scan, then bounded Brent/golden refinement in
    ln C between the neighbours of the best grid point (1e-4 relative in C).
    Returns (c_om_opt, tau_meas in seconds).
    """
    if c_max <= 0:
        raise DomainError(f'c_max must be > 0, got {c_max!r}')
    c, T = _optimize_norm(abs(chi) / gamma_mech, a_pr_norm, n_th, c_max, rtol=rtol)
    return c, to_seconds(T, gamma_mech)


def asymptotic_tmeas(regime, chi, a_pr_norm, n_th, gamma_mech):
    """
    Closed-form limits of the optimized measurement time, in seconds.

      weak          Γ²/(8a²χ²)            (C = 1, χ ≪ Γ)
      weak_thermal  Γ²/(8a²χ²)(1 + 2n_th)
      strong        1/(8a²)               (C = 2χ/Γ, χ ≫ Γ)
    """
    a_sq = a_pr_norm ** 2
    if regime == 'strong':
        return to_seconds(1.0 / (8.0 * a_sq), gamma_mech)
    if regime not in ('weak', 'weak_thermal'):
        raise ValueError(f'unknown regime {regime!r}')
    if chi == 0:
        return math.inf
    x = chi / gamma_mech
    T = 1.0 / (8.0 * a_sq * x * x)
    if regime == 'weak_thermal':
        T *= 1.0 + 2.0 * n_th
    return to_seconds(T, gamma_mech)


def steady_state_optimal_cooperativity(chi, gamma_mech):
    """√(1 + 4χ²/Γ²): the optimum when transient dynamics can be ignored."""
    return math.sqrt(1.0 + 4.0 * (chi / gamma_mech) ** 2)


def transient_exponent(chi_grid, tau_grid):
    """Local log-log slope d ln τ / d ln χ along a sweep."""
    chi = np.log(np.asarray(chi_grid, dtype=float))
    tau = np.log(np.asarray(tau_grid, dtype=float))
    return np.gradient(tau, chi)


# ── Critical limits and QND budget ────────────────────────────────────────────

def critical_phonon_number(delta_sm, g_sm, n_spins=1):
    """(Δ/g)²/N: phonon number at which the dispersive expansion breaks down."""
    if g_sm <= 0 or delta_sm == 0:
        raise DomainError('critical_phonon_number needs g_sm > 0 and delta_sm != 0')
    return (delta_sm / g_sm) ** 2 / n_spins


def n_crit_curve(chi, delta_sm):
    """n_crit when g_sm is varied at fixed Δ_sm to produce chi (g² = χΔ)."""
    if chi == 0:
        return math.inf
    return abs(delta_sm / chi)


def safe_phonon_budget(delta_sm, g_sm, n_spins=1, eta_sw=ETA_SW):
    """η_SW²·n_crit; η_SW = 0.16 reproduces 137 phonons against n_crit = 5625."""
    return eta_sw ** 2 * critical_phonon_number(delta_sm, g_sm, n_spins)


def critical_probe_amplitude(chi, gamma_mech, delta_sm, g_sm, c_om):
    """
    Probe flux bounds from n_mech^ss(ε = χ) ≤ (Δ/g)², with transmission 1.

    a_sq_bound is the bound at the given c_om,
        (Δ/g)² [Γ²(1 + C)² + 4χ²] / (4ΓC),
    a_sq_min its minimum over C, reached at C = √(1 + 4χ²/Γ²),
        (Δ/g)² (Γ/2) [√(1 + 4χ²/Γ²) + 1].
    Units: rad/s (the amplitudes are the square roots).
    """
    ratio_sq = (delta_sm / g_sm) ** 2
    gamma = gamma_mech
    if c_om > 0:
        bound = ratio_sq * (gamma ** 2 * (1.0 + c_om) ** 2 + 4.0 * chi ** 2) / (4.0 * gamma * c_om)
    else:
        bound = math.inf
    root = math.sqrt(1.0 + 4.0 * (chi / gamma) ** 2)
    minimum = ratio_sq * (gamma / 2.0) * (root + 1.0)
    return CriticalProbe(a_sq_bound=bound, a_sq_min=minimum, c_om_at_min=root)


def purcell_time(delta_sm, g_sm, gamma_mech, n_spins=1, beta=1):
    """
    τ_Purcell = 2π Δ_sm / (Γ χ N^β).

    The 2π follows the T1 = 2π/γ_rel convention; the bare inverse rate is
    smaller by exactly 2π (4.5 ms instead of 28 ms for the SiV device).
    """
    chi = g_sm * g_sm / delta_sm
    return TWO_PI * abs(delta_sm) / (gamma_mech * abs(chi) * n_spins ** beta)


def intrinsic_t1(gamma_rel):
    return math.inf if gamma_rel == 0 else TWO_PI / gamma_rel


def detuning_criterion(delta_sm, gamma_mech, n_spins=1, beta=1):
    return (delta_sm / gamma_mech) ** 2 >= MARGIN * n_spins ** (beta - 1) / 8.0


def cooperativity_criterion(g_sm, gamma_mech, gamma_rel, n_spins=1):
    if gamma_rel == 0:
        return True
    return 4.0 * n_spins * g_sm ** 2 / (gamma_mech * gamma_rel) >= MARGIN * 0.5


def feasibility_report(spin, sys, drive, optimize=False, c_max=C_MAX, eta_sw=ETA_SW):
    """
    QND budget for a spin read out through the mechanics.

    With optimize=True the cooperativity is chosen by optimize_cooperativity,
    otherwise drive.c_om is used. "≫" is read as a factor of 10.
    """
    gamma = sys.gamma_mech
    chi = spin.chi
    a_n = drive.a_pr_in / math.sqrt(gamma)
    warnings = []

    if optimize:
        c_om, tau = optimize_cooperativity(chi, a_n, sys.n_th, gamma, c_max=c_max)
    else:
        c_om = drive.c_om
        tau = measurement_time(chi, a_n, sys.n_th, gamma, c_om)

    n_mech = phonon_number(to_normalized(tau, gamma) / gamma, sys, replace(drive, c_om=c_om), chi)
    n_crit = critical_phonon_number(spin.delta_sm, spin.g_sm, spin.n_spins)
    budget = safe_phonon_budget(spin.delta_sm, spin.g_sm, spin.n_spins, eta_sw)
    if n_mech > n_crit:
        warnings.append(f'n_mech(tau_meas) = {n_mech:.4g} exceeds n_crit = {n_crit:.4g}')
    elif n_mech > budget:
        warnings.append(f'n_mech(tau_meas) = {n_mech:.4g} above the eta_sw = {eta_sw} budget {budget:.4g}')

    tau_p = purcell_time(spin.delta_sm, spin.g_sm, gamma, spin.n_spins, spin.beta)
    t1 = intrinsic_t1(spin.gamma_rel)
    report = FeasibilityReport(
        tau_meas=tau,
        tau_purcell=tau_p,
        t1=t1,
        qnd_ratio=min(t1, tau_p) / tau,
        detuning_criterion_ok=detuning_criterion(spin.delta_sm, gamma, spin.n_spins, spin.beta),
        cooperativity_criterion_ok=cooperativity_criterion(spin.g_sm, gamma, spin.gamma_rel, spin.n_spins),
        c_om=c_om,
        n_mech_at_tau=n_mech,
        n_crit=n_crit,
        phonon_budget=budget,
        critical_probe=critical_probe_amplitude(chi, gamma, spin.delta_sm, spin.g_sm, c_om),
        warnings=tuple(warnings),
    )
    for w in warnings:
        logger.warning('feasibility: %s', w)
    return report


# ── Sweeps ────────────────────────────────────────────────────────────────────

def _n_mech_norm(T, x, c, a_n):
    g = 1.0 + c
    decay = math.exp(-g * T / 2.0)
    ring = 1.0 + decay * decay - 2.0 * math.cos(x * T) * decay
    return 4.0 * c * a_n ** 2 / (g * g + 4.0 * x * x) * ring


def _n_cav_norm(T, x, c, a_n, kappa_over_gamma):
    g = 1.0 + c
    decay = math.exp(-g * T / 2.0)
    bracket = (c * decay * (2.0 * math.cos(x * T) - 4.0 * x * math.sin(x * T))
               + 1.0 + 4.0 * x * x + c * c * decay * decay)
    return 4.0 * a_n ** 2 / (kappa_over_gamma * (g * g + 4.0 * x * x)) * bracket


def readout_point(x, a_pr_norm, n_th, c_max, kappa_over_gamma=1e4,
                  delta_sm_over_gamma=750.0, gamma_mech=1.0, rtol=ROOT_RTOL):
    """
    One χ point of the measurement-time sweep, in Γ units.

    n_crit follows the convention of varying g_sm at fixed Δ_sm, so
    n_crit = Δ_sm/χ.
    """
    c, T = _optimize_norm(x, a_pr_norm, n_th, c_max, rtol=rtol)
    n_mech = _n_mech_norm(T, x, c, a_pr_norm)
    n_crit = n_crit_curve(x, delta_sm_over_gamma)

    warnings = []
    if n_mech > n_crit:
        warnings.append('n_mech exceeds n_crit')
    if c >= c_max * (1.0 - 1e-6):
        warnings.append('c_om at cutoff')
    if MARGIN * math.sqrt(c / (4.0 * kappa_over_gamma)) > 1.0:
        warnings.append('G ≪ kappa violated')
    return ReadoutResult(
        tau_meas=to_seconds(T, gamma_mech),
        c_om_opt=c,
        snr_at_tau=math.sqrt(float(_snr_sq_norm(T, x, c, a_pr_norm, n_th))),
        n_mech_at_tau=n_mech,
        n_crit=n_crit,
        n_cav_at_tau=_n_cav_norm(T, x, c, a_pr_norm, kappa_over_gamma),
        warnings=tuple(warnings),
    )


def _chi_row(x, a_pr_norm, n_th, c_max, kappa_over_gamma, delta_sm_over_gamma, gamma_mech,
             rtol=ROOT_RTOL):
    try:
        r = readout_point(x, a_pr_norm, n_th, c_max, kappa_over_gamma,
                          delta_sm_over_gamma, gamma_mech, rtol=rtol)
    except OmitError as exc:
        nan = math.nan
        return (x, nan, nan, nan, nan, nan, n_crit_curve(x, delta_sm_over_gamma),
                f'error: {exc}'), False
    return (x, r.c_om_opt, to_normalized(r.tau_meas, gamma_mech), r.tau_meas, r.n_mech_at_tau,
            r.n_cav_at_tau, r.n_crit, '; '.join(r.warnings)), True


def _check_grid(grid, name):
    grid = [float(v) for v in grid]
    if not grid:
        raise DomainError(f'{name} is empty')
    if any(v <= 0 for v in grid):
        raise DomainError(f'{name} must be positive')
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError(f'{name} must be strictly increasing')
    return grid


def sweep_chi(chi_grid, a_pr_norm, n_th, c_max=C_MAX, gamma_mech=1.0,
              kappa_over_gamma=1e4, delta_sm_over_gamma=750.0, jobs=1, on_done=None,
              rtol=ROOT_RTOL):
    """
    Optimized measurement time across a grid of χ/Γ values.

    chi_grid is dimensionless (χ/Γ); gamma_mech only converts τ to seconds.
    Per-point failures are recorded in the warnings column and counted in
    result.failures; the sweep always completes.
    """
    grid = _check_grid(chi_grid, 'chi_grid')
    work = functools.partial(_chi_row, a_pr_norm=a_pr_norm, n_th=n_th, c_max=c_max,
                             kappa_over_gamma=kappa_over_gamma,
                             delta_sm_over_gamma=delta_sm_over_gamma, gamma_mech=gamma_mech,
                             rtol=rtol)
    out = ordered_map(work, grid, jobs=jobs, on_done=on_done)
    result = SweepResult(columns=CHI_COLUMNS)
    for row, ok in out:
        result.rows.append(row)
        if not ok:
            result.failures += 1
            logger.warning('sweep_chi: chi/gamma=%.4g failed: %s', row[0], row[-1])
    return result


THERMAL_COLUMNS = ('chi_over_gamma', 'n_th', 'c_om_opt', 'tau_gamma',
                   'ratio_to_zero_temperature', 'warnings')
CUTOFF_COLUMNS = ('c_max',) + CHI_COLUMNS
MINIMUM_COLUMNS = ('c_max', 'chi_over_gamma_at_min', 'tau_gamma_min')
TRACE_COLUMNS = ('tau_gamma', 'snr', 'snr_sq', 'signal_norm', 'f_term', 'g_term', 'phi_opt')


def _thermal_row(x, a_pr_norm, n_th_values, c_max, rtol=ROOT_RTOL):
    rows = []
    reference = None
    for n_th in n_th_values:
        try:
            c, T = _optimize_norm(x, a_pr_norm, n_th, c_max, rtol=rtol)
        except OmitError as exc:
            rows.append(((x, n_th, math.nan, math.nan, math.nan, f'error: {exc}'), False))
            continue
        if n_th == 0:
            reference = T
        rows.append(((x, n_th, c, T, math.nan, ''), True))
    if reference is None:
        try:
            reference = _optimize_norm(x, a_pr_norm, 0.0, c_max, rtol=rtol)[1]
        except OmitError:
            reference = math.nan
    return [((x, n, c, T, T / reference if ok else math.nan, w), ok)
            for (x, n, c, T, _, w), ok in rows]


def thermal_sweep(chi_grid, a_pr_norm, n_th_values, c_max=C_MAX, jobs=1, on_done=None,
                  rtol=ROOT_RTOL):
    """
    τ_meas·Γ for several bath occupations, and its ratio to the n_th = 0 value.

    For χ ≪ Γ the ratio tends to 1 + 2n_th; for χ ≫ max(1, n_th)Γ it returns
    to 1 because the signal is collected before the bath can act.
    """
    grid = _check_grid(chi_grid, 'chi_grid')
    n_th_values = [float(n) for n in n_th_values]
    if any(n < 0 for n in n_th_values):
        raise DomainError('n_th values must be >= 0')
    work = functools.partial(_thermal_row, a_pr_norm=a_pr_norm,
                             n_th_values=n_th_values, c_max=c_max, rtol=rtol)
    result = SweepResult(columns=THERMAL_COLUMNS)
    for block in ordered_map(work, grid, jobs=jobs, on_done=on_done):
        for row, ok in block:
            result.rows.append(row)
            if not ok:
                result.failures += 1
                logger.warning('thermal_sweep: chi/gamma=%.4g n_th=%g failed: %s',
                               row[0], row[1], row[-1])
    return result


def cutoff_sweep(chi_grid, a_pr_norm, n_th, c_max_values, gamma_mech=1.0,
                 kappa_over_gamma=1e4, delta_sm_over_gamma=750.0, jobs=1, on_done=None,
                 rtol=ROOT_RTOL):
    """sweep_chi repeated for each cooperativity cutoff, rows tagged with c_max."""
    result = SweepResult(columns=CUTOFF_COLUMNS)
    for c_max in c_max_values:
        part = sweep_chi(chi_grid, a_pr_norm, n_th, c_max=c_max, gamma_mech=gamma_mech,
                         kappa_over_gamma=kappa_over_gamma,
                         delta_sm_over_gamma=delta_sm_over_gamma, jobs=jobs, on_done=on_done,
                         rtol=rtol)
        result.rows.extend((float(c_max),) + tuple(row) for row in part.rows)
        result.failures += part.failures
    return result


def cutoff_minimum(chi_grid, a_pr_norm, n_th, gamma_mech, c_max, extend=True,
                   max_extend=EXTEND_STEPS):
    """
    Global minimum over χ of the constrained measurement time.

    Scans chi_grid (χ/Γ) and refines with a bounded search in ln χ between
    the neighbours of the best point. Returns (chi_over_gamma, tau_gamma).

    A best point on either end of the grid is not a minimum. With extend the
    grid grows past that end at its own log spacing, at most max_extend
    points; a minimum still on the edge raises DomainError.
    """
    grid = _check_grid(chi_grid, 'chi_grid')

    def tau_of(x):
        try:
            return _optimize_norm(x, a_pr_norm, n_th, c_max)[1]
        except NoCrossingError:
            return math.inf

    taus = [tau_of(x) for x in grid]
    if not np.isfinite(taus).any():
        raise NoCrossingError(f'no chi in the grid reaches SNR 1 with c_max={c_max:.3g}')
    k = int(np.argmin(taus))

    added = 0
    if extend and len(grid) > 1:
        while k in (0, len(grid) - 1) and added < max_extend:
            if k == 0:
                grid.insert(0, grid[0] * grid[0] / grid[1])
                taus.insert(0, tau_of(grid[0]))
            else:
                grid.append(grid[-1] * grid[-1] / grid[-2])
                taus.append(tau_of(grid[-1]))
            k = int(np.argmin(taus))
            added += 1
        if added:
            logger.info('c_max=%.4g: chi grid extended by %d points to [%.4g, %.4g]',
                        c_max, added, grid[0], grid[-1])
    if k in (0, len(grid) - 1):
        raise DomainError(f'c_max={c_max:.4g}: smallest tau on the grid edge '
                          f'chi/gamma={grid[k]:.4g}, minimum lies outside '
                          f'[{grid[0]:.4g}, {grid[-1]:.4g}]')

    best_x, best_T = grid[k], float(taus[k])
    res = minimize_scalar(lambda u: tau_of(math.exp(u)),
                          bounds=(math.log(grid[k - 1]), math.log(grid[k + 1])),
                          method='bounded', options={'xatol': C_XATOL})
    if res.success and res.fun < best_T:
        best_x, best_T = math.exp(res.x), float(res.fun)
    logger.info('c_max=%.4g: minimum tau*gamma=%.6g at chi/gamma=%.6g', c_max, best_T, best_x)
    return best_x, best_T


def snr_trace(tau_grid, chi, c_om, a_pr_norm, n_th, gamma_mech=1.0):
    """SNR(τ) and its ingredients on tau_grid (in units of 1/Γ)."""
    result = SweepResult(columns=TRACE_COLUMNS)
    for T in tau_grid:
        T = float(T)
        if T <= 0:
            raise DomainError('tau_grid must be positive')
        tau = to_seconds(T, gamma_mech)
        try:
            comp = snr_components(tau, chi, c_om, a_pr_norm, n_th, gamma_mech)
            phi = optimal_homodyne_angle(tau, chi, c_om, a_pr_norm, gamma_mech)
        except DomainError as exc:
            logger.warning('snr_trace: tau*gamma=%.4g: %s', T, exc)
            result.rows.append((T,) + (math.nan,) * 6)
            result.failures += 1
            continue
        result.rows.append((T, comp.snr, comp.snr ** 2, comp.signal * math.sqrt(gamma_mech),
                            comp.f_term, comp.g_term, phi))
    return result
