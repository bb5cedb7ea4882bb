# set up the logger
import logging
log = logging.getLogger('thermoplate')


# public functions
from .datastruct import merge_dicts, canonical_json, ensure_finite, format_number
from .options import get_option
