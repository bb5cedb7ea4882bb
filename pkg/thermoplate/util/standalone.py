from django.conf import settings
import django


def standalone_settings(verbosity='INFO', **overrides):
    '''Settings for running thermoplate without a Django project'''
    options = {
        'INSTALLED_APPS': [ 'thermoplate' ],
        'USE_TZ': True,
        'LOGGING': {
            'version': 1,
            'disable_existing_loggers': False,
            'formatters': {
                'plain': { 'format': '%(levelname)s %(name)s: %(message)s' },
            },
            'handlers': {
                'console': { 'class': 'logging.StreamHandler', 'formatter': 'plain' },
            },
            'loggers': {
                'thermoplate': { 'handlers': [ 'console' ], 'level': verbosity, 'propagate': False },
            },
        },
        'THERMOPLATE': {},
    }
    options.update(overrides)
    return options


def configure_standalone(**overrides):
    '''Configures Django with standalone_settings() unless a project already did'''
    if not settings.configured:
        settings.configure(**standalone_settings(**overrides))
    django.setup()
