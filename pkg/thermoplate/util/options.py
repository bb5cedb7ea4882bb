from django.apps import apps

from ..defaults import DEFAULT_OPTIONS


def get_option(name):
    '''
    The value of an option: the app's merged options when Django has loaded
    thermoplate, DEFAULT_OPTIONS otherwise (plain library use).
    '''
    if apps.ready and apps.is_installed('thermoplate'):
        return apps.get_app_config('thermoplate').options[name]
    return DEFAULT_OPTIONS[name]
