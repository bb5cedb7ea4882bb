from .params import ModelParams, PhysicalParams, NormalizationReport, normalize_physical
from .nonlinearity import (
    Nonlinearity,
    nonlinearity_from_K,
    polynomial_nonlinearity,
    nonlinearity_preset,
    preset,
    PRESETS,
    remainder_F,
    remainder_G,
    remainder_H,
    ellipticity_min,
    check_assumptions,
    AssumptionReport,
    growth_bounds,
)
from .calculus import apply_AF, apply_AG, apply_AH, apply_AF_direct
