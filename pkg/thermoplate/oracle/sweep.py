from ..exceptions import OracleError
from ..util import log, get_option
from .modes import mode_matrix, spectral_abscissa

from concurrent.futures import ThreadPoolExecutor
import math
import numpy as np


UNIFORMLY_DAMPED = 'uniformly-damped'
DAMPING_VANISHES = 'damping-vanishes'
MIN_SWEEP_MODES = 32


#########################################################
###   Spectra over many modes


def mode_spectra(params, lambdas, threads=1):
    '''ModeSpectrum for each eigenvalue, in the order given (thread count does not change the order)'''
    def one(lam):
        return spectral_abscissa(mode_matrix(lam, params))
    if threads <= 1:
        return [ one(lam) for lam in lambdas ]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, lambdas))


def sweep_lambdas(k_max, length=1.0):
    '''lambda_k = (k pi / L)^2 for k = 1..k_max (one axis)'''
    return [ (k * math.pi / length) ** 2 for k in range(1, k_max + 1) ]



class SpectrumResult(object):
    '''
    The per-mode spectra of one (gamma, tau) cell plus its classification.

        inf_neg_abscissa        min over k <= k_max of -abscissa(k)
        inf_neg_abscissa_half   the same over k <= k_max / 2
        trend_ratio             abscissa(k_max) / abscissa(k_max / 8)
        classification          uniformly-damped when the infimum does not drift
                                below drift_ratio x the half-range infimum
    '''
    def __init__(self, gamma, tau, params, spectra, drift_ratio):
        self.gamma = gamma
        self.tau = tau
        self.params = params
        self.spectra = tuple(spectra)
        self.drift_ratio = drift_ratio
        k_max = len(self.spectra)
        neg = -self.abscissas
        self.inf_neg_abscissa = float(np.min(neg))
        self.inf_neg_abscissa_half = float(np.min(neg[:max(k_max // 2, 1)]))
        self.trend_ratio = _ratio(self.abscissa(k_max), self.abscissa(max(k_max // 8, 1)))
        if self.inf_neg_abscissa_half > 0 and self.inf_neg_abscissa >= drift_ratio * self.inf_neg_abscissa_half:
            self.classification = UNIFORMLY_DAMPED
        else:
            self.classification = DAMPING_VANISHES

    def __repr__(self):
        return '<SpectrumResult gamma={} tau={} {} inf(-abscissa)={:.6g}>'.format(self.gamma, self.tau, self.classification, self.inf_neg_abscissa)

    @property
    def k_max(self):
        return len(self.spectra)

    @property
    def abscissas(self):
        return np.array([ s.abscissa for s in self.spectra ])

    def abscissa(self, k):
        '''abscissa of mode k (1-based)'''
        return self.spectra[k - 1].abscissa


def _ratio(num, den):
    if den == 0:
        return 1.0 if num == 0 else math.inf
    return num / den



def stability_sweep(base, gamma_list, tau_list, k_max, length=1.0, threads=1, drift_ratio=None):
    '''
    Classifies every (gamma, tau) cell from the abscissas of modes k = 1..k_max
    on an interval of the given length.  Cells come back ordered by (gamma, tau).
    '''
    if k_max < MIN_SWEEP_MODES:
        raise OracleError('stability_sweep needs k_max >= {} (got {})'.format(MIN_SWEEP_MODES, k_max))
    drift_ratio = get_option('SWEEP_DRIFT_RATIO') if drift_ratio is None else drift_ratio
    lambdas = sweep_lambdas(k_max, length)
    cells = []
    for gamma in sorted(gamma_list):
        for tau in sorted(tau_list):
            params = base.with_values(gamma=gamma, tau=tau)
            cell = SpectrumResult(gamma, tau, params, mode_spectra(params, lambdas, threads), drift_ratio)
            log.info('sweep cell gamma=%s tau=%s: %s (inf -abscissa %.6g, trend %.6g)', gamma, tau, cell.classification, cell.inf_neg_abscissa, cell.trend_ratio)
            cells.append(cell)
    return cells
