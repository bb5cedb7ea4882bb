from .state import PlateState, Jet, SimOptions, HaltReason, SCHEMES, STATE_FIELDS, JET_FIELDS
from .jets import initial_jet, runtime_jet, plate_acceleration, heat_rate, flux_rate
from .stepper import StepResult, MidpointPropagator, midpoint_propagator, step_linear_midpoint, step_nonlinear, step_split_explicit
from .simulate import Record, SimulationResult, simulate
from .reconstruct import Rates, Residuals, gradient_flux, reconstruct_w_q, finite_difference_rates, residual_original
