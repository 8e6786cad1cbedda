"""
omit/errors.py

Exception hierarchy for the readout library.

Every error raised on purpose by the library derives from OmitError, so
sweeps can record a failing point and carry on while genuine bugs
(TypeError, ZeroDivisionError, ...) still surface.
"""


class OmitError(RuntimeError):
    """Base class for all library errors."""


class ParameterError(OmitError, ValueError):
    """A rate or frequency is non-finite, negative, or otherwise unusable."""


class DomainError(OmitError, ValueError):
    """An operation was called outside the range where its formula holds."""


class NoCrossingError(OmitError):
    """SNR² never reached 1 before the search horizon."""

    def __init__(self, message, tau_max=None, snr_sq_max=None):
        super().__init__(message)
        self.tau_max = tau_max
        self.snr_sq_max = snr_sq_max


class IntegrationError(OmitError):
    """Adaptive quadrature or ODE integration missed its tolerance."""


class LabelingError(OmitError):
    """Dressed eigenstates could not be assigned unambiguous labels."""


class ConfigError(OmitError):
    """Malformed configuration, reported as path:lineno: reason."""

    def __init__(self, reason, path=None, lineno=None):
        self.reason = reason
        self.path = path
        self.lineno = lineno
        where = str(path) if path is not None else '<overrides>'
        if lineno is not None:
            where = f'{where}:{lineno}'
        super().__init__(f'{where}: {reason}')
