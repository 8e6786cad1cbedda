"""
omit — dispersive spin readout through optomechanically induced transparency.

A spin dispersively coupled to a mechanical mode shifts its frequency by ±χ;
a red-detuned pump opens an OMIT window in the optical cavity and a weak
resonant probe maps that shift onto the phase of the reflected light.

  omit.params     parameter containers, units, regime validation
  omit.dynamics   linear mean-field/Green's-function solution and oracles
  omit.readout    closed-form SNR, measurement time, QND budget, χ sweeps
  omit.siv        SiV ground-state Hamiltonian and strain coupling
  omit.sensing    frequency-shift estimation error vs. other schemes
  omit.sweep      tabular results and the ordered worker pool
"""

from omit.errors import (
    ConfigError,
    DomainError,
    IntegrationError,
    LabelingError,
    NoCrossingError,
    OmitError,
    ParameterError,
)
from omit.params import DriveConfig, Normalized, SpinParams, SystemParams
from omit.sweep import SweepResult

__all__ = [
    'ConfigError', 'DomainError', 'IntegrationError', 'LabelingError',
    'NoCrossingError', 'OmitError', 'ParameterError',
    'DriveConfig', 'Normalized', 'SpinParams', 'SystemParams',
    'SweepResult',
]
