# this dict of options is merged with the current project's settings.THERMOPLATE dict
DEFAULT_OPTIONS = {
    # nodal grid refinement: ceil(PADDING * N) + 1 interior points per axis
    # 2 removes aliasing for cubic-type responses; raise it for higher degrees
    'PADDING': 2,

    # Picard iteration of the quasilinear step
    'PICARD_TOL': 1e-12,
    'PICARD_MAX_ITER': 50,

    # halting thresholds: min N'(z) on the nodal grid, and the H^3 norm of z
    'DEGENERACY_EPS': 1e-8,
    'BLOWUP_THRESHOLD': 1e8,

    # significant digits written to series.csv and the spectrum/sweep tables
    'CSV_PRECISION': 17,

    # number of samples on [-rho, rho] used by the assumption report
    'ASSUMPTION_SAMPLES': 2001,

    # stability sweep classification: uniformly damped when the inf over all
    # modes of -abscissa is at least this fraction of the inf over the lower half
    'SWEEP_DRIFT_RATIO': 0.9,

    # fraction of the run skipped before fitting the decay rate
    'DECAY_WINDOW_START': 0.5,

    # whether to send plate_signal_record / plate_signal_halt during simulations
    'SIGNALS': False,
}
