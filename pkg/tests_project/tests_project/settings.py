# Django settings for thermoplate
# this is only used during testing

import os


# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = 'test-key'

DEBUG = True

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'thermoplate',
    'plates',
]

USE_TZ = True

# the plate commands never touch a database
DATABASES = {}

# thermoplate options (merged with thermoplate.defaults.DEFAULT_OPTIONS)
THERMOPLATE = {
    'SIGNALS': False,
}


# A logger for thermoplate
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plate_simple': {
            'format': '%(levelname)s::thermoplate %(message)s'
        },
    },
    'handlers': {
        'plate_console':{
            'level':'DEBUG',
            'class':'logging.StreamHandler',
            'formatter': 'plate_simple'
        },
    },
    'loggers': {
        'thermoplate': {
            'handlers': ['plate_console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
