#!/usr/bin/env python3
from django.core import management
import sys

from thermoplate.util.standalone import configure_standalone

__doc__ = '''
Runs the plate commands without a Django project.

Example:

    thermoplate simulate --config run.yaml --out results/
    thermoplate check --level full

if the above doesn't work, try:

    python -m thermoplate simulate --config run.yaml

Inside a project that lists thermoplate in INSTALLED_APPS, the same commands
are available through manage.py as plate_simulate, plate_spectrum, plate_sweep,
plate_jets and plate_check.  The short names are aliases: `check` would clash
with Django's own system check command.
'''

# short name -> management command
ALIASES = {
    'simulate': 'plate_simulate',
    'spectrum': 'plate_spectrum',
    'sweep': 'plate_sweep',
    'jets': 'plate_jets',
    'check': 'plate_check',
}


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1:
        argv[1] = ALIASES.get(argv[1], argv[1])
    configure_standalone()
    # mimic the code in django-admin.py
    management.execute_from_command_line(argv)


## runner!
if __name__ == '__main__':
    main()
