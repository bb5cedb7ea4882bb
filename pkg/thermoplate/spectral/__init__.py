from .basis import Basis, make_basis
from .fields import SpectralField, NodalField, to_modal, to_nodal
from .operators import (
    apply_A_power,
    apply_Igamma,
    apply_B,
    igamma_multiplier,
    b_multiplier,
    gradient,
    grad_dot,
    divergence,
    project_to_sine,
    sobolev_norm,
)
