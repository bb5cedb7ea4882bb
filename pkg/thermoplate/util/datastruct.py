from ..exceptions import NonFiniteError

import json
import numpy as np


def merge_dicts(*dicts):
    '''
    Shallow merges an arbitrary number of dicts, starting
    with the first argument and updating through the
    last argument (last dict wins on conflicting keys).
    '''
    merged = {}
    for d in dicts:
        if d:
            merged.update(d)
    return merged


def canonical_json(data):
    '''
    Serializes plain data with sorted keys and fixed separators.
    Feeding the output back through json.loads and this function returns the same string.
    '''
    return json.dumps(data, sort_keys=True, indent=2, separators=(',', ': '), ensure_ascii=False) + '\n'


def ensure_finite(values, what):
    '''Raises NonFiniteError if the array holds a NaN or Inf; returns the array otherwise'''
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(what)
    return values


def format_number(value, precision=17):
    '''
    Locale-independent text for a float.  `precision` is the number of significant digits;
    17 reproduces the double exactly.
    '''
    return format(float(value), '.{}g'.format(precision))
