from django.apps import AppConfig
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from .defaults import DEFAULT_OPTIONS
from .util import merge_dicts


class Config(AppConfig):
    name = 'thermoplate'
    label = 'thermoplate'
    verbose_name = 'Thermoelastic Plate Simulator'

    def ready(self):
        '''Called by Django when the app is ready for use.'''
        # set up the options
        overrides = getattr(settings, 'THERMOPLATE', {}) or {}
        unknown = set(overrides) - set(DEFAULT_OPTIONS)
        if unknown:
            raise ImproperlyConfigured('Unknown THERMOPLATE option(s) in settings: {}'.format(', '.join(sorted(unknown))))
        self.options = merge_dicts(DEFAULT_OPTIONS, overrides)
