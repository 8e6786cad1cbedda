"""
omit/sensing.py

Frequency-shift estimation error of OMIT readout against position detection
and backaction-evading (BAE) measurement.

Every scheme is brought to the normal form

    (Δε)²(τ) = Γ/(4 n_ss τ) · (1 + 2n_th + 2n_add)

with n_ss the steady-state phonon number of the OMIT drive at ε = 0, so the
schemes are compared at equal intracavity mechanical energy. n_add is the
excess imprecision in phonon quanta: 0 for ideal OMIT at C = 1, 1/2 for
position detection, 1/(16C) for BAE.
"""

import logging
import math
from dataclasses import dataclass, field

from omit.errors import DomainError
from omit.readout import snr_squared, to_normalized
from omit.sweep import SweepResult

logger = logging.getLogger(__name__)

SCHEMES = ('omit', 'omit_imperfect', 'position', 'bae')
SENSING_COLUMNS = ('eta', 'n_add_omit', 'n_add_sql', 'n_add_bae_inf')


@dataclass(frozen=True)
class SensingResult:
    scheme: str
    error_sq: float
    n_add_equiv: float
    params_echo: dict = field(default_factory=dict)


def detection_noise_quanta(eta):
    """Imperfect homodyne efficiency as equivalent added quanta (1 − η)/(2η)."""
    if not 0 < eta <= 1:
        raise DomainError(f'eta must lie in (0, 1], got {eta!r}')
    return (1.0 - eta) / (2.0 * eta)


def steady_state_reference(c_om, a_pr_norm, gamma_mech):
    """n_ss = 4ΓC a²/Γ_tot² at ε = 0."""
    return 4.0 * c_om * a_pr_norm ** 2 / (1.0 + c_om) ** 2


def _omit_error_sq(t, c_om, delta, n_th, eta, gamma_mech, a_pr_norm):
    gamma = gamma_mech
    a_sq = a_pr_norm ** 2 * gamma
    g = gamma * (1.0 + c_om)
    lorentz = g * g + 4.0 * delta * delta
    denom = 64.0 * gamma ** 2 * c_om ** 2 * t * a_sq
    err = lorentz * (lorentz + 8.0 * n_th * gamma ** 2 * c_om) / denom
    if eta < 1:
        err += (1.0 - eta) / eta * lorentz ** 2 / denom
    return err


def estimation_error(scheme, tau, c_om, delta, n_th, eta, gamma_mech, a_pr_norm):
    """
    (Δε)² after integrating for tau, with the homodyne angle optimized.

    delta is the probe detuning (OMIT schemes only); eta enters the
    omit_imperfect scheme. tau is in seconds on the Γ/2π clock, as in
    omit.readout. The formulas hold for τ ≫ 1/Γ.
    """
    if scheme not in SCHEMES:
        raise ValueError(f'unknown scheme {scheme!r}; expected one of {", ".join(SCHEMES)}')
    if not 0 < eta <= 1:
        raise DomainError(f'eta must lie in (0, 1], got {eta!r}')
    if tau <= 0:
        raise DomainError(f'tau must be > 0, got {tau!r}')
    if c_om <= 0 or a_pr_norm <= 0:
        raise DomainError('estimation_error needs c_om > 0 and a_pr_norm > 0')
    T = to_normalized(tau, gamma_mech)
    if T < 10:
        logger.debug('estimation_error: tau*gamma=%.3g is not in the steady-state regime', T)
    t = T / gamma_mech

    n_ss = steady_state_reference(c_om, a_pr_norm, gamma_mech)
    unit = gamma_mech / (4.0 * n_ss * t)
    if scheme == 'omit':
        err = _omit_error_sq(t, c_om, delta, n_th, 1.0, gamma_mech, a_pr_norm)
    elif scheme == 'omit_imperfect':
        err = _omit_error_sq(t, c_om, delta, n_th, eta, gamma_mech, a_pr_norm)
    elif scheme == 'position':
        err = unit * (2.0 + 2.0 * n_th)
    else:
        err = unit * (1.0 + 8.0 * c_om * (1.0 + 2.0 * n_th)) / (8.0 * c_om)

    n_add = (err / unit - 1.0 - 2.0 * n_th) / 2.0
    echo = dict(tau=tau, c_om=c_om, delta=delta, n_th=n_th, eta=eta,
                gamma_mech=gamma_mech, a_pr_norm=a_pr_norm, n_ss=n_ss)
    return SensingResult(scheme=scheme, error_sq=err, n_add_equiv=n_add, params_echo=echo)


def snr_error_consistency(chi_small, tau, c_om, a_pr_norm, n_th, gamma_mech):
    """
    Relative deviation between (Δε)² and 2χ²/SNR²(τ) for a small test shift.

    Only meaningful for χ ≪ Γ and τΓ ≫ 1; outside that regime the deviation
    is reported, not asserted.
    """
    T = to_normalized(tau, gamma_mech)
    if chi_small / gamma_mech >= 1e-4 or T <= 100:
        logger.info('snr_error_consistency outside the linear-response regime '
                    '(chi/gamma=%.3g, tau*gamma=%.3g)', chi_small / gamma_mech, T)
    err = estimation_error('omit', tau, c_om, 0.0, n_th, 1.0, gamma_mech, a_pr_norm).error_sq
    linear = 2.0 * chi_small ** 2 / snr_squared(tau, chi_small, c_om, a_pr_norm, n_th, gamma_mech)
    return abs(err - linear) / linear


def sensing_sweep(eta_grid, n_th, c_om_bae=math.inf):
    """
    Excess imprecision of OMIT readout against detection efficiency.

    n_add_sql is the position-detection floor (1/2) and n_add_bae_inf the
    BAE value at c_om_bae (0 in the C → ∞ limit).
    """
    etas = [float(e) for e in eta_grid]
    if any(not 0 < e <= 1 for e in etas):
        raise DomainError('eta_grid must lie in (0, 1]')
    # reference operating point; n_add does not depend on it at C = 1, δ = 0
    tau, gamma, a_n = 1e4, 1.0, 1.0
    sql = estimation_error('position', tau, 1.0, 0.0, n_th, 1.0, gamma, a_n).n_add_equiv
    if math.isinf(c_om_bae):
        bae = 0.0
    else:
        bae = estimation_error('bae', tau, c_om_bae, 0.0, n_th, 1.0, gamma, a_n).n_add_equiv
    result = SweepResult(columns=SENSING_COLUMNS)
    for eta in etas:
        omit = estimation_error('omit_imperfect', tau, 1.0, 0.0, n_th, eta, gamma, a_n).n_add_equiv
        result.rows.append((eta, omit, sql, bae))
    return result
