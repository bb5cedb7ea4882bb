from ..exceptions import DiagnosticsError
from ..util import get_option

from dataclasses import dataclass
import math
import numpy as np


MIN_FIT_SAMPLES = 10


@dataclass(frozen=True)
class DecayFit(object):
    '''X(t) ~ C_hat exp(-kappa_hat t) fitted on [window[0], window[1]]'''
    kappa_hat: float
    C_hat: float
    r_squared: float
    window: tuple
    samples: int


def decay_fit(series, window=None):
    '''
    Least-squares line through (t, log X) on the window; kappa_hat is minus the slope.
    The default window is the second half of the series' time span.
    '''
    data = np.array([ ( float(t), float(x) ) for t, x in series ])
    if data.ndim != 2 or len(data) < MIN_FIT_SAMPLES:
        raise DiagnosticsError('decay_fit needs at least {} samples'.format(MIN_FIT_SAMPLES))
    t, x = data[:, 0], data[:, 1]
    if window is None:
        start = get_option('DECAY_WINDOW_START')
        window = ( t[0] + start * (t[-1] - t[0]), t[-1] )
    t_a, t_b = float(window[0]), float(window[1])
    if not t_a < t_b:
        raise DiagnosticsError('decay window must have t_a < t_b (got {})'.format(window))
    mask = (t >= t_a) & (t <= t_b)
    if np.count_nonzero(mask) < MIN_FIT_SAMPLES:
        raise DiagnosticsError('decay window {} holds fewer than {} samples'.format(window, MIN_FIT_SAMPLES))
    t, x = t[mask], x[mask]
    if not np.all(x > 0):
        raise DiagnosticsError('decay_fit needs positive X on the window (min {})'.format(np.min(x)))
    y = np.log(x)
    center = np.mean(t)
    design = np.stack([ t - center, np.ones_like(t) ], axis=1)
    ( slope, intercept ), *_ = np.linalg.lstsq(design, y, rcond=None)
    ss_res = float(np.sum((y - design @ ( slope, intercept )) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(
        kappa_hat=float(-slope),
        C_hat=float(math.exp(intercept - slope * center)),
        r_squared=r_squared,
        window=( t_a, t_b ),
        samples=int(t.size),
    )



@dataclass(frozen=True)
class BarrierReport(object):
    '''
    Descriptive boundedness of a run: the largest ratios X(t)/X(0) and E1(t)/E1(0),
    and the time after which the moving-max envelope of X never increases.
    '''
    sup_X_ratio: float
    sup_E1_ratio: float
    monotone_from: float
    eventually_monotone: bool


def barrier_report(series, X0=None, E1_0=None, envelope=None):
    '''
    series holds EnergyReport-like records (t, X, E1).  X0 and E1_0 default to the
    first sample; zero references give ratios of 0.
    '''
    series = list(series)
    if not series:
        raise DiagnosticsError('barrier_report needs at least one sample')
    t = np.array([ r.t for r in series ])
    X = np.array([ r.X for r in series ])
    E1 = np.array([ r.E1 for r in series ])
    X0 = X[0] if X0 is None else X0
    E1_0 = E1[0] if E1_0 is None else E1_0
    sup_X = float(np.max(X) / X0) if X0 > 0 else 0.0
    sup_E1 = float(np.max(E1) / E1_0) if E1_0 > 0 else 0.0
    width = envelope or max(1, len(X) // 20)
    env = np.array([ np.max(X[i:i + width]) for i in range(len(X)) ])
    rising = np.nonzero(np.diff(env) > 0)[0]
    first = int(rising[-1]) + 1 if rising.size else 0
    monotone_from = float(t[first])
    return BarrierReport(
        sup_X_ratio=sup_X,
        sup_E1_ratio=sup_E1,
        monotone_from=monotone_from,
        eventually_monotone=bool(monotone_from <= t[0] + 0.5 * (t[-1] - t[0])),
    )
