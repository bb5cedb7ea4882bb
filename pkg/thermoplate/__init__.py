#
#   Thermoelastic plate simulator (Kirchhoff-Love plate, Cattaneo heat flux)
#   License: Apache Open Source License
#


# the version
from .version import __version__


# the exceptions
from .exceptions import PlateError
from .exceptions import BasisMismatch
from .exceptions import NonFiniteError
from .exceptions import ModelError
from .exceptions import OracleError
from .exceptions import DiagnosticsError
from .exceptions import ConfigError
from .exceptions import HaltException
from .exceptions import DegeneracyError
from .exceptions import BlowUpError
from .exceptions import PicardDivergence


# the discretization
from .spectral import Basis, make_basis, SpectralField, NodalField, to_modal, to_nodal


# the model and its nonlinearity
from .model import ModelParams, PhysicalParams, normalize_physical
from .model import Nonlinearity, nonlinearity_from_K, polynomial_nonlinearity, nonlinearity_preset, preset


# time integration
from .dynamics import PlateState, Jet, SimOptions, HaltReason, initial_jet, runtime_jet, simulate


# energies and fits
from .diagnostics import EnergyReport, energy_levels, dissipation_residual, decay_fit, barrier_report


# the linear oracle
from .oracle import mode_matrix, spectral_abscissa, propagate_exact, stability_sweep


# the utilities
from .util import merge_dicts
