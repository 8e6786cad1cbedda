"""
omit/params.py

Parameter containers shared by every other module.

Units: all frequencies and rates are angular (rad/s) internally. Config files
state linear frequencies in Hz; hz_to_rad / rad_to_hz are the only
conversion pair. The probe amplitude a_pr_in carries (rad/s)^(1/2) so that
a_pr_in² is a photon flux, and is real and non-negative (its phase is
absorbed into the homodyne angle).

The readout and sensing formulas depend only on ratios to gamma_mech;
normalize() produces those ratios from physical inputs.
"""

import logging
import math
from dataclasses import dataclass

from omit.errors import ParameterError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# "≪" / "≫" everywhere means a factor of 10
MARGIN = 10.0
DISPERSIVE_LIMIT = 0.1


def hz_to_rad(f_hz):
    return TWO_PI * f_hz


def rad_to_hz(omega):
    return omega / TWO_PI


def _finite(name, value):
    if not math.isfinite(value):
        raise ParameterError(f'{name} must be finite, got {value!r}')


def _positive(name, value):
    _finite(name, value)
    if value <= 0:
        raise ParameterError(f'{name} must be > 0, got {value!r}')


def _non_negative(name, value):
    _finite(name, value)
    if value < 0:
        raise ParameterError(f'{name} must be >= 0, got {value!r}')


# ── Value types ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SystemParams:
    """Optomechanical device: cavity decay, mechanical damping and frequency."""

    kappa: float
    gamma_mech: float
    omega_m: float
    g0: float
    n_th: float = 0.0

    def __post_init__(self):
        _positive('kappa', self.kappa)
        _positive('gamma_mech', self.gamma_mech)
        _positive('omega_m', self.omega_m)
        _non_negative('g0', self.g0)
        _non_negative('n_th', self.n_th)

    @property
    def sideband_resolved(self):
        return self.kappa < self.omega_m


@dataclass(frozen=True)
class DriveConfig:
    """Pump (as cooperativity), probe amplitude, detuning, LO angle, efficiency."""

    c_om: float
    a_pr_in: float
    delta: float = 0.0
    phi: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        _non_negative('c_om', self.c_om)
        _non_negative('a_pr_in', self.a_pr_in)
        _finite('delta', self.delta)
        _finite('phi', self.phi)
        _finite('eta', self.eta)
        if not 0.0 <= self.eta <= 1.0:
            raise ParameterError(f'eta must lie in [0, 1], got {self.eta!r}')


@dataclass(frozen=True)
class SpinParams:
    """Spin-mechanical coupling; chi is always recomputed from g_sm and delta_sm."""

    g_sm: float
    delta_sm: float
    n_spins: int = 1
    beta: int = 1
    gamma_rel: float = 0.0

    def __post_init__(self):
        _non_negative('g_sm', self.g_sm)
        _finite('delta_sm', self.delta_sm)
        if self.delta_sm == 0:
            raise ParameterError('delta_sm must be non-zero')
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise ParameterError(f'n_spins must be a positive integer, got {self.n_spins!r}')
        if self.beta not in (1, 2):
            raise ParameterError(f'beta must be 1 or 2, got {self.beta!r}')
        _non_negative('gamma_rel', self.gamma_rel)

    @property
    def chi(self):
        return dispersive_shift(self.g_sm, self.delta_sm)


@dataclass(frozen=True)
class DerivedSet:
    G: float
    gamma_total: float


@dataclass(frozen=True)
class Normalized:
    """Dimensionless inputs of the closed-form readout and sensing formulas."""

    chi_over_gamma: float
    delta_over_gamma: float
    c_om: float
    a_pr_norm: float
    n_th: float
    gamma_mech: float


# ── Operations ────────────────────────────────────────────────────────────────

def dispersive_shift(g_sm, delta_sm):
    return g_sm * g_sm / delta_sm


def derived_quantities(sys, drive):
    """Optically enhanced coupling G and total mechanical damping."""
    G = math.sqrt(drive.c_om * sys.kappa * sys.gamma_mech / 4.0)
    return DerivedSet(G=G, gamma_total=sys.gamma_mech * (1.0 + drive.c_om))


def cooperativity_from_coupling(G, kappa, gamma_mech):
    return 4.0 * G * G / (kappa * gamma_mech)


def probe_amplitude(a_pr_norm, gamma_mech):
    """a_pr_in from its normalized value a_pr_in/√Γ_mech."""
    return a_pr_norm * math.sqrt(gamma_mech)


def normalize(sys, drive, spin):
    gamma = sys.gamma_mech
    return Normalized(
        chi_over_gamma=spin.chi / gamma,
        delta_over_gamma=drive.delta / gamma,
        c_om=drive.c_om,
        a_pr_norm=drive.a_pr_in / math.sqrt(gamma),
        n_th=sys.n_th,
        gamma_mech=gamma,
    )


def validate(sys, drive, spin=None):
    """
    Check the regime assumptions of the closed-form theory.

    Returns a list of human-readable warnings, one per violated assumption.
    Raises ParameterError only for non-finite or negative rates. Never
    mutates its inputs.
    """
    for name, value in (('kappa', sys.kappa), ('gamma_mech', sys.gamma_mech),
                        ('omega_m', sys.omega_m), ('g0', sys.g0),
                        ('n_th', sys.n_th), ('c_om', drive.c_om),
                        ('a_pr_in', drive.a_pr_in)):
        _non_negative(name, value)
    if spin is not None:
        _non_negative('g_sm', spin.g_sm)
        _non_negative('gamma_rel', spin.gamma_rel)
        _finite('delta_sm', spin.delta_sm)

    warnings = []
    if not sys.sideband_resolved:
        warnings.append('sideband resolution kappa < omega_m violated')
    if sys.kappa < MARGIN * sys.gamma_mech:
        warnings.append('kappa ≫ gamma_mech violated')
    G = derived_quantities(sys, drive).G
    if MARGIN * G > sys.kappa:
        warnings.append('G ≪ kappa violated')
    if spin is not None:
        if MARGIN * abs(spin.chi) > sys.kappa:
            warnings.append('chi ≪ kappa violated')
        if abs(spin.g_sm / spin.delta_sm) > DISPERSIVE_LIMIT:
            warnings.append(
                f'dispersive regime |g_sm/delta_sm| = {abs(spin.g_sm / spin.delta_sm):.3g} '
                f'exceeds {DISPERSIVE_LIMIT}')
    for w in warnings:
        logger.warning('validate: %s', w)
    return warnings
