from django.core.exceptions import ImproperlyConfigured


###############################################################
###   Base exceptions


class PlateError(Exception):
    '''
    Superclass of all thermoplate exceptions
    '''


class BasisMismatch(PlateError):
    '''
    Raised when fields built on different bases are combined.
    '''


class NonFiniteError(PlateError):
    '''
    Raised when a NaN or Inf shows up in a field.  Inside nonlinear evaluations
    this usually means the grid is too coarse for the amplitude of the data.
    '''
    def __init__(self, what, *args):
        self.what = what
        super().__init__('non-finite values in {}'.format(what), *args)


class ModelError(PlateError):
    '''
    Raised for invalid model coefficients or an unusable nonlinearity.
    '''


class OracleError(PlateError):
    '''
    Raised when a dense eigensolve or matrix exponential cannot be trusted.
    '''


class DiagnosticsError(PlateError):
    '''
    Raised when a diagnostic is asked for data it cannot use
    (incomplete jets, sigma > 0 for the energy identity, nonpositive samples, ...).
    '''


class ConfigError(ImproperlyConfigured):
    '''
    Raised when a run configuration file cannot be loaded or validated.
    '''



###############################################
###  Exceptions that end a simulation


class HaltException(PlateError):
    '''
    Superclass of the conditions that stop time integration.  Each subclass
    maps to one HaltReason, and carries the time and the offending value.
    '''
    reason = None

    def __init__(self, t, value, message=None):
        self.t = t
        self.value = value
        super().__init__(message or '{} at t={:.6g} (value {:.6g})'.format(self.__class__.__name__, t, value))


class DegeneracyError(HaltException):
    '''
    The ellipticity min N'(z) fell to the degeneracy threshold.
    '''
    reason = 'Degeneracy'


class BlowUpError(HaltException):
    '''
    The H^3 norm of z exceeded the blow-up threshold.
    '''
    reason = 'BlowUp'


class PicardDivergence(HaltException):
    '''
    The per-step fixed-point iteration did not reach its tolerance.
    The usual cure is a smaller time step.
    '''
    reason = 'PicardDivergence'
