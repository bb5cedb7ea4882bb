from .energy import (
    EnergyReport,
    E1_TERMS,
    energy_terms,
    level1_energy,
    energy_levels,
    scale_to_energy,
    BalanceStep,
    energy_balance_per_step,
    dissipation_residual,
)
from .decay import DecayFit, decay_fit, BarrierReport, barrier_report
