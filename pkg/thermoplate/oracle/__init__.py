from .modes import ModeMatrix, ModeSpectrum, mode_matrix, mode_matrices, spectral_abscissa, propagate_exact
from .sweep import SpectrumResult, mode_spectra, sweep_lambdas, stability_sweep, UNIFORMLY_DAMPED, DAMPING_VANISHES
